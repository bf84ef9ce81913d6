"""Gossip codes: every column carries each non-zero symbol exactly once.

A code is stored by its column keys.  Key ``j`` lists the rows that receive a
non-zero symbol in column ``j``; the s-th listed row gets symbol ``s``.  Rows
and columns are 1-based in every public function.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb

import numpy as np

from .designs import Design, _data_lines, _ints, require_design, verify_design
from .errors import NoShortestCode, ParameterError, ParseError, StructureError

Key = tuple[int, ...]


@dataclass(frozen=True)
class CodeParams:
    length: int
    weight: int
    distance: int


@dataclass(frozen=True)
class GossipCode:
    M: int
    q: int
    c: int
    column_keys: tuple[Key, ...]
    zero_is_tracing: bool = False
    design: Design | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        keys = tuple(tuple(int(r) for r in key) for key in self.column_keys)
        object.__setattr__(self, "column_keys", keys)
        if self.q < 2 or self.M < self.q:
            raise ParameterError(f"need 2 <= q <= M, got q={self.q}, M={self.M}")
        if not 1 <= self.c < self.q:
            raise ParameterError(f"need 1 <= c < q, got c={self.c}, q={self.q}")
        if self.zero_is_tracing and self.M != self.q:
            raise ParameterError("symbol 0 can only trace when M = q")
        if not keys:
            raise StructureError("code has no columns")
        for j, key in enumerate(keys, 1):
            if len(key) != self.q - 1:
                raise StructureError(f"column {j} key has {len(key)} rows, expected {self.q - 1}")
            if len(set(key)) != len(key) or any(not 1 <= r <= self.M for r in key):
                raise StructureError(f"column {j} key {list(key)} is not distinct rows in 1..{self.M}")

    @property
    def l(self) -> int:
        return len(self.column_keys)

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self.M, self.l), dtype=np.int64)
        for j, key in enumerate(self.column_keys):
            for s, row in enumerate(key, 1):
                m[row - 1, j] = s
        m.setflags(write=False)
        return m

    @cached_property
    def zero_rows(self) -> tuple[int, ...]:
        """Row holding symbol 0 in each column (square codes only)."""
        if not self.zero_is_tracing:
            return ()
        every = set(range(1, self.M + 1))
        return tuple((every - set(key)).pop() for key in self.column_keys)

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.matrix[i - 1])

    def owner(self, column: int, symbol: int) -> int | None:
        """The row holding ``symbol`` in ``column``, if exactly one row does."""
        if symbol == 0:
            return self.zero_rows[column - 1] if self.zero_is_tracing else None
        key = self.column_keys[column - 1]
        return key[symbol - 1] if 1 <= symbol <= len(key) else None


def from_matrix(matrix, c: int, zero_is_tracing: bool = False, q: int | None = None) -> GossipCode:
    m = np.asarray(matrix, dtype=np.int64)
    if m.ndim != 2:
        raise StructureError("code matrix must be two-dimensional")
    M, l = m.shape
    if q is None:
        q = int(m.max()) + 1
    keys = []
    for j in range(l):
        col = m[:, j]
        if col.min() < 0 or col.max() >= q:
            raise StructureError(f"column {j + 1} has a symbol outside 0..{q - 1}")
        key = []
        for s in range(1, q):
            rows = np.flatnonzero(col == s)
            if len(rows) != 1:
                raise StructureError(f"column {j + 1} holds symbol {s} {len(rows)} times")
            key.append(int(rows[0]) + 1)
        keys.append(tuple(key))
    return GossipCode(M=M, q=q, c=c, column_keys=tuple(keys), zero_is_tracing=zero_is_tracing)


def from_design(design: Design, assignment: str = "canonical") -> GossipCode:
    """c-Gossip code from a c-(M, q-1, 1) design, one column per block.

    ``canonical`` hands out symbols in ascending row order; ``development``
    follows the order the construction listed each block's points.
    """
    if design.lam != 1:
        raise ParameterError(f"a Gossip code needs lambda = 1, got {design.lam}")
    if assignment == "canonical":
        keys = design.blocks
    elif assignment == "development":
        keys = design.raw_blocks
    else:
        raise ParameterError(f"unknown assignment mode {assignment!r}")
    return GossipCode(M=design.v, q=design.k + 1, c=design.t, column_keys=keys, design=design)


def _exact(num: int, den: int, what: str) -> int:
    if den == 0 or num % den:
        raise NoShortestCode(f"no shortest code: {what} = {num}/{den} is not an integer")
    return num // den


def code_params(M: int, q: int, c: int) -> CodeParams:
    """Length, weight and distance of a shortest c-Gossip code on M rows and q symbols."""
    if not 2 <= c < q <= M:
        raise ParameterError(f"need 2 <= c < q <= M, got M={M}, q={q}, c={c}")
    k = q - 1
    l = _exact(comb(M, c), comb(k, c), "length")
    w = _exact(comb(M - 1, c - 1), comb(k - 1, c - 1), "weight")
    both_zero = _exact(comb(M - 2, k), comb(M - c, k - c), "blocks missing a pair")
    return CodeParams(length=l, weight=w, distance=l - both_zero)


def full_gossip(M: int, q: int) -> GossipCode:
    """(q-1)-Gossip code whose keys are all (q-1)-subsets of rows, in lex order."""
    if not 3 <= q <= M:
        raise ParameterError(f"need 3 <= q <= M, got q={q}, M={M}")
    keys = tuple(itertools.combinations(range(1, M + 1), q - 1))
    design = Design(t=q - 1, v=M, k=q - 1, lam=1, blocks=keys)
    return GossipCode(M=M, q=q, c=q - 1, column_keys=keys, design=design)


def square_gossip(q: int, zero_rows=None) -> GossipCode:
    """(q-1)-Gossip(q, q, q): column j puts 0 on ``zero_rows[j]`` and 1..q-1 elsewhere.

    By default column j's zero sits on row j.
    """
    if q < 3:
        raise ParameterError(f"need q >= 3, got {q}")
    zero_rows = tuple(range(1, q + 1)) if zero_rows is None else tuple(zero_rows)
    if sorted(zero_rows) != list(range(1, q + 1)):
        raise ParameterError(f"zero_rows must permute 1..{q}, got {list(zero_rows)}")
    keys = tuple(tuple(r for r in range(1, q + 1) if r != z) for z in zero_rows)
    return GossipCode(M=q, q=q, c=q - 1, column_keys=keys, zero_is_tracing=True)


def accusation_groups(code: GossipCode, column: int) -> set[frozenset[int]]:
    if not 1 <= column <= code.l:
        raise ParameterError(f"column {column} outside 1..{code.l}")
    rows = set(code.column_keys[column - 1])
    if code.zero_is_tracing:
        rows.add(code.zero_rows[column - 1])
    return {frozenset(g) for g in itertools.combinations(sorted(rows), code.c)}


def is_shortest(code: GossipCode) -> bool:
    if code.l * comb(code.q - 1, code.c) != comb(code.M, code.c):
        return False
    seen: set[Key] = set()
    for key in code.column_keys:
        for group in itertools.combinations(sorted(key), code.c):
            if group in seen:
                return False
            seen.add(group)
    return True


def row_weights(code: GossipCode) -> np.ndarray:
    return np.count_nonzero(code.matrix, axis=1)


def hamming_distances(code: GossipCode) -> dict[tuple[int, int], int]:
    m = code.matrix
    return {(i + 1, j + 1): int(np.count_nonzero(m[i] != m[j]))
            for i, j in itertools.combinations(range(code.M), 2)}


# --- embedding ----------------------------------------------------------------

def is_prefix_embedded(inner, outer) -> bool:
    """Every row of ``inner`` is the leading part of some row of ``outer``."""
    a, b = np.asarray(inner), np.asarray(outer)
    if a.shape[0] > b.shape[0] or a.shape[1] > b.shape[1]:
        return False
    prefixes = {tuple(r) for r in b[:, :a.shape[1]].tolist()}
    return all(tuple(r) in prefixes for r in a.tolist())


def set_system_embedded(points, blocks, outer_points, outer_blocks) -> bool:
    """(X, B) embeds into (X', B') when X is inside X' and B inside B'."""
    outer = {frozenset(b) for b in outer_blocks}
    return set(points) <= set(outer_points) and all(frozenset(b) in outer for b in blocks)


def is_embedded(inner: GossipCode, outer: GossipCode, mode: str = "prefix") -> bool:
    if inner.q != outer.q:
        raise ParameterError(f"alphabet sizes differ: {inner.q} vs {outer.q}")
    if mode == "prefix":
        return is_prefix_embedded(inner.matrix, outer.matrix)
    if mode == "set-system":
        return set_system_embedded(range(1, inner.M + 1), inner.column_keys,
                                   range(1, outer.M + 1), outer.column_keys)
    raise ParameterError(f"unknown embedding mode {mode!r}")


def _round_robin(vertices: list[int]) -> list[list[tuple[int, int]]]:
    """One-factorization of the complete graph on an even vertex list."""
    *ring, inf = vertices
    n = len(ring)
    factors = []
    for r in range(n):
        edges = [(inf, ring[r])]
        for j in range(1, (n + 1) // 2):
            edges.append((ring[(r - j) % n], ring[(r + j) % n]))
        factors.append(edges)
    return factors


def embed_sts(design: Design) -> Design:
    """Double an STS(v) into an STS(2v+1) that starts with the input's blocks.

    New points v+1..2v+1 are paired by a round-robin one-factorization; old
    point i joins every pair of the i-th one-factor.
    """
    if (design.t, design.k, design.lam) != (2, 3, 1):
        raise ParameterError("embed_sts needs a 2-(v,3,1) design")
    require_design(design)
    v = design.v
    factors = _round_robin(list(range(v + 1, 2 * v + 2)))
    blocks = list(design.blocks)
    for x, factor in zip(range(1, v + 1), factors):
        blocks += [(x, a, b) for a, b in factor]
    out = Design(t=2, v=2 * v + 1, k=3, lam=1, blocks=tuple(blocks))
    assert verify_design(out).valid
    return out


# --- file format -------------------------------------------------------------

def save_code(code: GossipCode) -> str:
    head = f"{code.M} {code.q} {code.c} {code.l}" + (" zero_tracing" if code.zero_is_tracing else "")
    rows = [" ".join(str(int(x)) for x in r) for r in code.matrix]
    return "\n".join([head, *rows]) + "\n"


def load_code(text: str) -> GossipCode:
    rows = list(_data_lines(text))
    if not rows:
        raise ParseError("empty code file")
    n, header = rows[0]
    toks = header.split()
    zero = False
    if len(toks) == 5 and toks[4] == "zero_tracing":
        zero = True
        toks = toks[:4]
    if len(toks) != 4:
        raise ParseError("header must be 'M q c l [zero_tracing]'", n)
    M, q, c, l = _ints(" ".join(toks), n)
    if len(rows) - 1 != M:
        raise ParseError(f"header declares {M} rows, found {len(rows) - 1}")
    matrix = []
    for n, line in rows[1:]:
        vals = _ints(line, n)
        if len(vals) != l:
            raise ParseError(f"row has {len(vals)} symbols, expected l={l}", n)
        bad = [x for x in vals if not 0 <= x < q]
        if bad:
            raise ParseError(f"symbol {bad[0]} outside 0..{q - 1}", n)
        matrix.append(vals)
    try:
        return from_matrix(matrix, c=c, zero_is_tracing=zero, q=q)
    except (StructureError, ParameterError) as exc:
        raise ParseError(str(exc)) from exc
