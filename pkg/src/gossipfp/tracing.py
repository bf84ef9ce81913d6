"""Pirate coalitions under optional erasures, and the tracers that catch them.

At a position where coalition members disagree (a detected mark) the pirates
may copy any symbol one of them holds or write ERASURE.  Positions where all
members agree keep the common symbol.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Sequence

import numpy as np

from .designs import count_disjoint, lambda_s
from .errors import ConsistencyError, IntegrityError, ModelError, ParameterError, ParseError, ProvenanceError, ResourceError

ERASURE = -1
DEFAULT_BUDGET = 1_000_000


class Kind(enum.Enum):
    NO_ERASURES = "no-erasures"
    SELECTIVE_ERASURES = "selective-erasures"
    ONLY_ERASURES = "only-erasures"


class Rule(enum.Enum):
    NONZERO = "nonzero"
    ZERO_PATTERN = "zero-pattern"
    BRUTE_FORCE = "brute-force"
    INNER_CANDIDATES = "inner-candidates"


# callback(position, feasible) -> chosen value; positions are 1-based
Chooser = Callable[[int, tuple[int, ...]], int]


@dataclass(frozen=True)
class Strategy:
    kind: Kind = Kind.ONLY_ERASURES
    policy: str | Chooser = "random"  # "random" | "first" | callable

    @classmethod
    def parse(cls, name: str, policy: str | Chooser = "random") -> "Strategy":
        try:
            return cls(Kind(name), policy)
        except ValueError:
            raise ParameterError(f"unknown strategy {name!r}") from None


@dataclass(frozen=True)
class TraceReport:
    accused: frozenset
    rule: Rule
    untraceable: bool = False
    attributions: tuple[tuple[int, int], ...] = ()  # (position, accused row)


PirateWord = tuple[int, ...]


def _matrix(code) -> np.ndarray:
    return np.asarray(code.matrix)


def coalition(members: Iterable[int], code, allow_out_of_model: bool = False) -> tuple[int, ...]:
    W = tuple(sorted(set(int(x) for x in members)))
    M = _matrix(code).shape[0]
    if not W:
        raise ParameterError("coalition is empty")
    if W[0] < 1 or W[-1] > M:
        raise ParameterError(f"coalition {list(W)} has members outside 1..{M}")
    if len(W) > code.c and not allow_out_of_model:
        raise ModelError(f"coalition of size {len(W)} exceeds c={code.c}")
    return W


def _check_length(code, word: Sequence[int]) -> None:
    l = _matrix(code).shape[1]
    if len(word) != l:
        raise ParameterError(f"word has length {len(word)}, code length is {l}")


def detected_positions(code, W) -> frozenset[int]:
    rows = _matrix(code)[[w - 1 for w in W]]
    differs = (rows != rows[0]).any(axis=0)
    return frozenset(int(j) + 1 for j in np.flatnonzero(differs))


def make_pirate_word(code, W, strategy: Strategy = Strategy(), seed: int | None = None,
                     allow_out_of_model: bool = False) -> PirateWord:
    W = coalition(W, code, allow_out_of_model)
    rng = random.Random(seed)
    rows = _matrix(code)[[w - 1 for w in W]]
    word = []
    for j in range(rows.shape[1]):
        held = tuple(sorted(set(int(x) for x in rows[:, j])))
        if len(held) == 1:
            word.append(held[0])
            continue
        pos = j + 1
        if strategy.kind is Kind.ONLY_ERASURES:
            word.append(ERASURE)
            continue
        if callable(strategy.policy):
            offered = held + ((ERASURE,) if strategy.kind is Kind.SELECTIVE_ERASURES else ())
            pick = strategy.policy(pos, offered)
            if pick not in offered:
                raise ModelError(f"chooser returned {pick} at position {pos}, allowed {offered}")
            word.append(pick)
            continue
        if strategy.kind is Kind.SELECTIVE_ERASURES and rng.random() < 0.5:
            word.append(ERASURE)
        elif strategy.policy == "first":
            word.append(int(rows[0, j]))
        elif strategy.policy == "random":
            word.append(rng.choice(held))
        else:
            raise ParameterError(f"unknown choice policy {strategy.policy!r}")
    return tuple(word)


def is_descendant(code, W, word: Sequence[int]) -> bool:
    _check_length(code, word)
    rows = _matrix(code)[[w - 1 for w in W]]
    for j, x in enumerate(word):
        col = rows[:, j]
        if x == ERASURE:
            if (col == col[0]).all():
                return False
        elif not (col == x).any():
            return False
    return True


def trace_nonzero(code, word: Sequence[int]) -> TraceReport:
    """Accuse the unique owner of every non-zero symbol (and of 0 on square codes)."""
    _check_length(code, word)
    attributions = []
    for j, x in enumerate(word, 1):
        if x == ERASURE or (x == 0 and not code.zero_is_tracing):
            continue
        if not 0 <= x < code.q:
            raise IntegrityError(f"symbol {x} at position {j} is outside the alphabet")
        row = code.owner(j, x)
        if row is None:
            raise IntegrityError(f"no row holds symbol {x} at position {j}")
        attributions.append((j, row))
    accused = frozenset(r for _, r in attributions)
    return TraceReport(accused, Rule.NONZERO, untraceable=not attributions,
                       attributions=tuple(attributions))


def trace_only_erasures(code, word: Sequence[int]) -> TraceReport:
    """Accuse everyone whose codeword is 0 wherever the pirate word is 0."""
    _check_length(code, word)
    w = np.asarray(word)
    zeros = np.flatnonzero(w == 0)
    if len(zeros) == 0 and not (w > 0).any():
        return TraceReport(frozenset(), Rule.ZERO_PATTERN, untraceable=True)
    m = _matrix(code)
    hit = (m[:, zeros] == 0).all(axis=1)
    return TraceReport(frozenset(int(i) + 1 for i in np.flatnonzero(hit)), Rule.ZERO_PATTERN)


def brute_force_trace(code, word: Sequence[int], c: int | None = None,
                      budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """Every coalition of size <= c that could have produced ``word``.

    Sorted by size, then lexicographically.
    """
    _check_length(code, word)
    c = code.c if c is None else c
    M = _matrix(code).shape[0]
    work = sum(comb(M, d) for d in range(1, c + 1))
    if work > budget:
        raise ResourceError(f"{work} coalitions exceed the budget {budget}; "
                            "use the zero-pattern tracer (O(M*l)) instead")
    return [W for d in range(1, c + 1)
            for W in itertools.combinations(range(1, M + 1), d)
            if is_descendant(code, W, word)]


def brute_force_report(code, word, c: int | None = None, budget: int = DEFAULT_BUDGET) -> TraceReport:
    found = brute_force_trace(code, word, c, budget)
    return TraceReport(frozenset(found), Rule.BRUTE_FORCE, untraceable=not found)


def undetectable_count(code, W, checked: bool = False) -> int:
    """Zeros in the only-erasures word of W, by inclusion-exclusion over lambda_i."""
    design = getattr(code, "design", None)
    if design is None:
        raise ProvenanceError("code was not built from a design")
    d = len(set(W))
    if d > design.t:
        raise ParameterError(f"coalition size {d} exceeds t={design.t}")
    touched = sum((-1) ** (i - 1) * comb(d, i) * lambda_s(design, i) for i in range(1, d + 1))
    n = code.l - touched
    if checked:
        direct = count_disjoint(design, W)
        if direct != n:
            raise ConsistencyError(f"formula gives {n} undetectable positions, blocks give {direct}")
    return n


# --- text format -------------------------------------------------------------

def format_word(word: Sequence[int]) -> str:
    return " ".join("e" if x == ERASURE else str(x) for x in word)


def parse_word(text: str) -> PirateWord:
    toks = text.split()
    out = []
    for i, tok in enumerate(toks, 1):
        if tok == "e":
            out.append(ERASURE)
        elif tok.isdigit():
            out.append(int(tok))
        else:
            raise ParseError(f"token {i} ({tok!r}) is neither a digit string nor 'e'")
    if not out:
        raise ParseError("empty pirate word")
    return tuple(out)
