"""t-(v, k, lambda) set systems: constructions, verification and block counts.

Points are the integers ``1..v``.  A :class:`Design` is a structural container;
whether its blocks really form a design is decided by :func:`verify_design`.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import comb

from .errors import ConsistencyError, ParameterError, ParseError, ResourceError, StructureError

MAX_POINTS = 512

Block = tuple[int, ...]


@dataclass(frozen=True)
class Design:
    t: int
    v: int
    k: int
    lam: int
    blocks: tuple[Block, ...]
    # blocks as produced by the construction, before sorting (cyclic development order)
    raw_blocks: tuple[Block, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        raw = tuple(tuple(b) for b in self.raw_blocks) or tuple(tuple(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "raw_blocks", raw)
        _check_structure(self.v, self.k, raw)
        if self.t < 1 or self.lam < 1:
            raise ParameterError(f"t and lambda must be positive (t={self.t}, lambda={self.lam})")

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def points(self) -> range:
        return range(1, self.v + 1)

    def forced_b(self) -> int | None:
        """Block count implied by the parameters, or None when it is not an integer."""
        num = self.lam * comb(self.v, self.t)
        den = comb(self.k, self.t)
        if den == 0 or num % den:
            return None
        return num // den


def _check_structure(v: int, k: int, blocks) -> None:
    if v < 1 or k < 1:
        raise StructureError(f"v and k must be positive (v={v}, k={k})")
    if not blocks:
        raise StructureError("design has no blocks")
    for i, block in enumerate(blocks, 1):
        if len(block) != k:
            raise StructureError(f"block {i} has {len(block)} points, expected {k}")
        if len(set(block)) != k:
            raise StructureError(f"block {i} repeats a point: {list(block)}")
        for p in block:
            if not isinstance(p, int) or not 1 <= p <= v:
                raise StructureError(f"block {i} has point {p!r} outside 1..{v}")


@dataclass(frozen=True)
class DesignReport:
    valid: bool
    b: int
    forced_b: int | None
    witness: Block | None = None
    witness_count: int | None = None

    def __bool__(self) -> bool:
        return self.valid


def verify_design(design: Design, t: int | None = None, lam: int | None = None,
                  max_points: int = MAX_POINTS) -> DesignReport:
    """Check that every t-subset of points lies in exactly lambda blocks.

    The witness is the lexicographically first t-subset whose count is wrong.
    """
    t = design.t if t is None else t
    lam = design.lam if lam is None else lam
    if design.v > max_points:
        raise ResourceError(f"v={design.v} exceeds the point ceiling {max_points}")
    if t > design.k:
        raise ParameterError(f"t={t} exceeds block size k={design.k}")
    counts: Counter[Block] = Counter()
    for block in design.blocks:
        counts.update(itertools.combinations(block, t))
    num, den = lam * comb(design.v, t), comb(design.k, t)
    forced = num // den if num % den == 0 else None
    for subset in itertools.combinations(design.points, t):
        n = counts.get(subset, 0)
        if n != lam:
            return DesignReport(False, design.b, forced, subset, n)
    return DesignReport(True, design.b, forced)


def require_design(design: Design) -> Design:
    report = verify_design(design)
    if not report.valid:
        raise ConsistencyError(
            f"not a {design.t}-({design.v},{design.k},{design.lam}) design: "
            f"{set(report.witness)} lies in {report.witness_count} blocks")
    return design


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ParameterError(f"{p!r} is not prime (prime powers are loaded from file)")


# --- projective planes -------------------------------------------------------

def _normalized_triples(p: int) -> list[tuple[int, int, int]]:
    """Nonzero vectors of GF(p)^3 whose first nonzero coordinate is 1, in lex order."""
    out = []
    for x in itertools.product(range(p), repeat=3):
        nz = [c for c in x if c]
        if nz and nz[0] == 1:
            out.append(x)
    return out


def projective_plane(p: int, max_points: int = MAX_POINTS) -> Design:
    """PG(2, p) as a 2-(p^2+p+1, p+1, 1) design.

    Points and lines are both numbered by the lex order of their normalized
    homogeneous coordinates; line u holds the points x with u.x = 0.
    """
    _require_prime(p)
    v = p * p + p + 1
    if v > max_points:
        raise ResourceError(f"PG(2,{p}) has {v} points, above the ceiling {max_points}")
    pts = _normalized_triples(p)
    blocks = []
    for u in pts:
        blocks.append(tuple(i for i, x in enumerate(pts, 1)
                            if (u[0] * x[0] + u[1] * x[1] + u[2] * x[2]) % p == 0))
    return Design(t=2, v=v, k=p + 1, lam=1, blocks=tuple(blocks))


# --- Steiner triple systems --------------------------------------------------

def steiner_triple(v: int) -> Design:
    """STS(v) via Bose (v = 6n+3) or Skolem (v = 6n+1).

    Point (x, i) of Z_m x Z_3 is labelled ``1 + x + m*i``; Skolem's extra point
    is ``v``.
    """
    if not isinstance(v, int) or v < 7 or v % 6 not in (1, 3):
        raise ParameterError(f"an STS({v}) needs v >= 7 and v = 1 or 3 (mod 6)")
    n = v // 6
    if v % 6 == 3:
        m = 2 * n + 1
        label = lambda x, i: 1 + x + m * (i % 3)
        half = (m + 1) // 2
        op = lambda x, y: (half * (x + y)) % m  # idempotent commutative quasigroup
        blocks = [(label(x, 0), label(x, 1), label(x, 2)) for x in range(m)]
    else:
        m = 2 * n
        label = lambda x, i: 1 + x + m * (i % 3)

        def op(x, y):  # half-idempotent commutative quasigroup
            s = (x + y) % m
            return s // 2 if s % 2 == 0 else (s - 1) // 2 + n

        blocks = [(label(x, 0), label(x, 1), label(x, 2)) for x in range(n)]
        for x in range(n):
            for i in range(3):
                blocks.append((v, label(x + n, i), label(x, i + 1)))
    for x, y in itertools.combinations(range(m), 2):
        for i in range(3):
            blocks.append((label(x, i), label(y, i), label(op(x, y), i + 1)))
    return Design(t=2, v=v, k=3, lam=1, blocks=tuple(blocks))


# --- cyclic development ------------------------------------------------------

def develop(base_block, v: int) -> list[Block]:
    """Shifts base + i (mod v) for i = 0..v-1, residues written as 1..v."""
    base = tuple(base_block)
    if len(set(base)) != len(base):
        raise StructureError(f"base block repeats a point: {list(base)}")
    for x in base:
        if not 1 <= x <= v:
            raise StructureError(f"base point {x} outside 1..{v}")
    return [tuple((x - 1 + i) % v + 1 for x in base) for i in range(v)]


def cyclic_design(base_block, v: int, t: int = 2, lam: int = 1) -> Design:
    """Develop ``base_block`` cyclically mod v.  The result is not verified."""
    raw = develop(base_block, v)
    return Design(t=t, v=v, k=len(raw[0]), lam=lam, blocks=tuple(raw), raw_blocks=tuple(raw))


# --- inversive planes ---------------------------------------------------------

class _GF2:
    """GF(p^2) as pairs (a, b) = a + b*w, indexed a*p + b."""

    def __init__(self, p: int):
        self.p = p
        # lexicographically first monic irreducible x^2 + c1 x + c0
        for c1, c0 in itertools.product(range(p), repeat=2):
            if all((x * x + c1 * x + c0) % p for x in range(p)):
                self.c1, self.c0 = c1, c0
                break
        q = p * p
        self.q = q
        self.add = [[0] * q for _ in range(q)]
        self.mul = [[0] * q for _ in range(q)]
        for i in range(q):
            a1, b1 = divmod(i, p)
            for j in range(q):
                a2, b2 = divmod(j, p)
                self.add[i][j] = ((a1 + a2) % p) * p + (b1 + b2) % p
                # w^2 = -c1 w - c0
                bb = b1 * b2
                a = (a1 * a2 - bb * self.c0) % p
                b = (a1 * b2 + a2 * b1 - bb * self.c1) % p
                self.mul[i][j] = a * p + b
        self.inv = [0] * q
        for i in range(1, q):
            self.inv[i] = next(j for j in range(1, q) if self.mul[i][j] == 1)

    def neg(self, i: int) -> int:
        a, b = divmod(i, self.p)
        return ((-a) % self.p) * self.p + (-b) % self.p


def inversive_plane(p: int, max_points: int = MAX_POINTS) -> Design:
    """Miquelian inversive plane of order p as a 3-(p^2+1, p+1, 1) design.

    Points are GF(p^2) elements a + b*w numbered by (a, b) in lex order, then
    infinity last.  Blocks are the images of GF(p) + {infinity} under the maps
    z -> (az + b)/(cz + d), listed in sorted order.
    """
    _require_prime(p)
    q = p * p
    v = q + 1
    if v > max_points:
        raise ResourceError(f"inversive plane of order {p} has {v} points, above {max_points}")
    F = _GF2(p)
    INF = q
    subline = [a * p for a in range(p)] + [INF]

    def mobius(a, b, c, d, z):
        if z == INF:
            return INF if c == 0 else F.mul[a][F.inv[c]]
        den = F.add[F.mul[c][z]][d]
        if den == 0:
            return INF
        return F.mul[F.add[F.mul[a][z]][b]][F.inv[den]]

    found: set[frozenset[int]] = set()
    for c in (0, 1):
        for a, b, d in itertools.product(range(q), repeat=3):
            if c == 0 and d != 1:
                continue
            if F.add[F.mul[a][d]][F.neg(F.mul[b][c])] == 0:
                continue
            found.add(frozenset(mobius(a, b, c, d, z) for z in subline))
    blocks = sorted(tuple(sorted(x + 1 for x in blk)) for blk in found)
    return Design(t=3, v=v, k=p + 1, lam=1, blocks=tuple(blocks))


# --- block counting -----------------------------------------------------------

def _ratio(num: int, den: int, what: str) -> int:
    if den == 0 or num % den:
        raise ConsistencyError(f"{what} = {num}/{den} is not an integer; input is not a design")
    return num // den


def lambda_s(design: Design, s: int) -> int:
    """Number of blocks containing a fixed s-subset of points."""
    t = design.t
    if not 0 <= s <= t:
        raise ParameterError(f"s must lie in 0..{t}, got {s}")
    return _ratio(design.lam * comb(design.v - s, t - s), comb(design.k - s, t - s), f"lambda_{s}")


def lambda_bar_s(design: Design, s: int) -> int:
    """Number of blocks disjoint from a fixed s-subset of points."""
    t = design.t
    if not 0 <= s <= t:
        raise ParameterError(f"s must lie in 0..{t}, got {s}")
    return _ratio(design.lam * comb(design.v - s, design.k), comb(design.v - t, design.k - t),
                  f"lambda_bar_{s}")


def count_containing(design: Design, subset) -> int:
    s = set(subset)
    return sum(1 for blk in design.blocks if s.issubset(blk))


def count_disjoint(design: Design, subset) -> int:
    s = set(subset)
    return sum(1 for blk in design.blocks if s.isdisjoint(blk))


def lambda_s_checked(design: Design, subset) -> int:
    expected = lambda_s(design, len(set(subset)))
    got = count_containing(design, subset)
    if got != expected:
        raise ConsistencyError(f"{sorted(subset)} lies in {got} blocks, formula gives {expected}")
    return got


def lambda_bar_s_checked(design: Design, subset) -> int:
    expected = lambda_bar_s(design, len(set(subset)))
    got = count_disjoint(design, subset)
    if got != expected:
        raise ConsistencyError(f"{got} blocks miss {sorted(subset)}, formula gives {expected}")
    return got


# --- file format -------------------------------------------------------------

def save_design(design: Design) -> str:
    lines = [f"{design.t} {design.v} {design.k} {design.lam} {design.b}"]
    lines += [" ".join(map(str, blk)) for blk in design.blocks]
    return "\n".join(lines) + "\n"


def _data_lines(text: str):
    for n, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if s and not s.startswith("#"):
            yield n, s


def _ints(line: str, n: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}", n) from None


def load_design(text: str, verify: bool = True) -> Design:
    rows = list(_data_lines(text))
    if not rows:
        raise ParseError("empty design file")
    n, header = rows[0]
    head = _ints(header, n)
    if len(head) != 5:
        raise ParseError("header must be 't v k lambda b'", n)
    t, v, k, lam, b = head
    blocks = []
    for n, line in rows[1:]:
        blk = _ints(line, n)
        if len(blk) != k:
            raise ParseError(f"block has {len(blk)} points, expected k={k}", n)
        if len(set(blk)) != k or any(not 1 <= x <= v for x in blk):
            raise ParseError(f"block must hold {k} distinct points in 1..{v}", n)
        blocks.append(tuple(blk))
    if len(blocks) != b:
        raise ParseError(f"header declares {b} blocks, found {len(blocks)}")
    design = Design(t=t, v=v, k=k, lam=lam, blocks=tuple(blocks))
    if verify:
        require_design(design)
    return design


FANO = Design(t=2, v=7, k=3, lam=1, blocks=(
    (1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 5, 6), (3, 4, 7)))
