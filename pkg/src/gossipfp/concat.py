"""Concatenated codes: outer Gossip symbols replaced by inner codewords.

Inner codewords are labelled 0..M_in-1 by row order, and outer symbol s is
written as inner row s.  Tracing first decodes each segment back to an outer
symbol; if that fails to accuse anyone it falls back to inner candidate sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .designs import _data_lines, _ints
from .errors import ParameterError, ParseError, StructureError
from .gossip import GossipCode, load_code, save_code, square_gossip
from .tracing import ERASURE, Rule, TraceReport, is_descendant, trace_nonzero

GOSSIP = "gossip"
FRAMEPROOF = "frameproof"


@dataclass(frozen=True)
class InnerCode:
    rows: tuple[tuple[int, ...], ...]
    kind: str = GOSSIP

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or len({len(r) for r in rows}) != 1:
            raise StructureError("inner code rows must be non-empty and of equal length")
        if len(set(rows)) != len(rows):
            raise StructureError("inner codewords must be pairwise distinct")
        if min(min(r) for r in rows) < 0:
            raise StructureError("inner symbols must be non-negative")

    @property
    def M(self) -> int:
        return len(self.rows)

    @property
    def l(self) -> int:
        return len(self.rows[0])

    @property
    def q(self) -> int:
        return max(max(r) for r in self.rows) + 1

    @cached_property
    def matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def label(self, segment) -> int | None:
        try:
            return self.rows.index(tuple(segment))
        except ValueError:
            return None


def builtin_fp_342() -> InnerCode:
    """The binary 2-frameproof code with 4 codewords of length 3."""
    return InnerCode(rows=((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)), kind=FRAMEPROOF)


def builtin_square_444() -> InnerCode:
    """3-Gossip(4, 4, 4) laid out with column zeros on rows 4, 3, 2, 1."""
    return inner_from_gossip(square_gossip(4, zero_rows=(4, 3, 2, 1)))


def inner_from_gossip(code: GossipCode) -> InnerCode:
    return InnerCode(rows=tuple(code.row(i) for i in range(1, code.M + 1)), kind=GOSSIP)


BUILTIN_INNER = {"fp342": builtin_fp_342, "square4": builtin_square_444}


class _InnerView:
    """Adapter so the tracing helpers can treat an inner code as a plain code."""

    def __init__(self, inner: InnerCode, c: int):
        self.matrix = inner.matrix
        self.c = c


@dataclass(frozen=True)
class ConcatenatedCode:
    inner: InnerCode
    outer: GossipCode

    def __post_init__(self):
        if self.inner.M != self.outer.q:
            raise ParameterError(f"inner code has {self.inner.M} codewords but the outer "
                                 f"alphabet has {self.outer.q} symbols")

    @property
    def M(self) -> int:
        return self.outer.M

    @property
    def c(self) -> int:
        return self.outer.c

    @property
    def l(self) -> int:
        return self.outer.l * self.inner.l

    @cached_property
    def matrix(self) -> np.ndarray:
        m = self.inner.matrix[self.outer.matrix].reshape(self.M, self.l)
        m.setflags(write=False)
        return m

    def segments(self, word):
        n = self.inner.l
        return [tuple(word[j:j + n]) for j in range(0, len(word), n)]


def concatenate(inner: InnerCode, outer: GossipCode) -> ConcatenatedCode:
    return ConcatenatedCode(inner, outer)


@dataclass(frozen=True)
class Decoded:
    outer_word: tuple[int, ...]
    candidates: tuple[frozenset[int], ...]  # inner labels that may have contributed
    required: tuple[frozenset[int], ...]  # inner labels every feasible coalition contains


@lru_cache(maxsize=4096)
def _inner_coalitions(inner: InnerCode, segment: tuple[int, ...], max_size: int):
    view = _InnerView(inner, max_size)
    return tuple(frozenset(group)
                 for d in range(1, min(max_size, inner.M) + 1)
                 for group in itertools.combinations(range(inner.M), d)
                 if is_descendant(view, [g + 1 for g in group], segment))


def segment_and_decode(ccode: ConcatenatedCode, word) -> Decoded:
    if len(word) != ccode.l:
        raise ParameterError(f"word has length {len(word)}, concatenated length is {ccode.l}")
    outer_word, candidates, required = [], [], []
    for seg in ccode.segments(word):
        label = ccode.inner.label(seg)
        outer_word.append(ERASURE if label is None else label)
        feasible = _inner_coalitions(ccode.inner, seg, ccode.c)
        candidates.append(frozenset().union(*feasible))
        required.append(frozenset.intersection(*feasible) if feasible else frozenset())
    return Decoded(tuple(outer_word), tuple(candidates), tuple(required))


def candidate_users(ccode: ConcatenatedCode, decoded: Decoded) -> frozenset[int]:
    """Outer users whose inner codeword fits every segment's candidate set."""
    m = ccode.outer.matrix
    ok = np.ones(ccode.M, dtype=bool)
    for j, cand in enumerate(decoded.candidates):
        ok &= np.isin(m[:, j], sorted(cand))
    return frozenset(int(i) + 1 for i in np.flatnonzero(ok))


def concat_trace(ccode: ConcatenatedCode, word) -> TraceReport:
    decoded = segment_and_decode(ccode, word)
    first = trace_nonzero(ccode.outer, decoded.outer_word)
    if first.accused:
        return first
    users = candidate_users(ccode, decoded)
    return TraceReport(users, Rule.INNER_CANDIDATES, untraceable=not users)


# --- text format -------------------------------------------------------------

def save_concat(ccode: ConcatenatedCode) -> str:
    inner = ccode.inner
    lines = [f"inner {inner.M} {inner.l} {inner.kind}"]
    lines += [" ".join(map(str, r)) for r in inner.rows]
    lines.append("outer")
    return "\n".join(lines) + "\n" + save_code(ccode.outer)


def load_concat(text: str) -> ConcatenatedCode:
    rows = list(_data_lines(text))
    if not rows or not rows[0][1].startswith("inner"):
        raise ParseError("concatenated code must start with 'inner M l kind'", rows[0][0] if rows else None)
    n, header = rows[0]
    toks = header.split()
    if len(toks) != 4:
        raise ParseError("expected 'inner M l kind'", n)
    M_in, l_in = _ints(" ".join(toks[1:3]), n)
    body = rows[1:1 + M_in]
    inner_rows = []
    for n, line in body:
        r = _ints(line, n)
        if len(r) != l_in:
            raise ParseError(f"inner row has {len(r)} symbols, expected {l_in}", n)
        inner_rows.append(tuple(r))
    rest = rows[1 + M_in:]
    if len(inner_rows) != M_in or not rest or rest[0][1] != "outer":
        raise ParseError("expected 'outer' after the inner rows")
    outer = load_code("\n".join(line for _, line in rest[1:]))
    return ConcatenatedCode(InnerCode(tuple(inner_rows), kind=toks[3]), outer)
