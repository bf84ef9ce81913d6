"""c-TS(k, b, v) traceability schemes as set systems, and their Gossip-code twins.

User ``i`` holds the private key ``P(i)``, a k-subset of the base keys 1..v.
A pirate decoder ``F`` exposes every user maximizing ``|F & P(U)|``.  The
broadcast-encryption layer is not modelled.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb, isqrt

from .designs import Design, _data_lines, _ints, develop
from .errors import ParameterError, ParseError, StructureError
from .gossip import GossipCode, is_shortest


@dataclass(frozen=True)
class TraceabilityScheme:
    k: int
    b: int
    v: int
    private_keys: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        keys = tuple(tuple(int(x) for x in key) for key in self.private_keys)
        object.__setattr__(self, "private_keys", keys)
        if len(keys) != self.b:
            raise StructureError(f"scheme declares b={self.b} users but lists {len(keys)} keys")
        for i, key in enumerate(keys, 1):
            if len(key) != self.k:
                raise StructureError(f"P({i}) has {len(key)} keys, expected k={self.k}")
            if len(set(key)) != self.k or any(not 1 <= x <= self.v for x in key):
                raise StructureError(f"P({i}) = {list(key)} is not {self.k} distinct keys in 1..{self.v}")

    def key(self, user: int) -> frozenset[int]:
        return frozenset(self.private_keys[user - 1])


def ts_trace(ts: TraceabilityScheme, decoder) -> frozenset[int]:
    """All users whose private key shares the most base keys with ``decoder``."""
    F = set(decoder)
    if not F:
        raise ParameterError("pirate decoder is empty")
    overlap = [len(F.intersection(key)) for key in ts.private_keys]
    best = max(overlap)
    return frozenset(u for u, n in enumerate(overlap, 1) if n == best)


def check_distinctness(ts: TraceabilityScheme, c: int) -> bool:
    """True when no two private keys share c or more base keys."""
    keys = [set(k) for k in ts.private_keys]
    return all(len(a & b) < c for a, b in itertools.combinations(keys, 2))


def ts_to_gossip(ts: TraceabilityScheme, c: int, assignment: str = "canonical") -> GossipCode:
    """Column j of the code has key P(j): rows are base keys, columns are users."""
    num, den = comb(ts.v, c), comb(ts.k, c)
    if den == 0 or num % den or num // den != ts.b:
        raise ParameterError(f"not a shortest-code-compatible scheme: b={ts.b}, "
                             f"C({ts.v},{c})/C({ts.k},{c}) = {num}/{den}")
    if not check_distinctness(ts, c):
        raise ParameterError(f"two private keys share {c} or more base keys, "
                             "so their accusation groups coincide")
    if assignment == "canonical":
        keys = tuple(tuple(sorted(k)) for k in ts.private_keys)
    elif assignment == "development":
        keys = ts.private_keys
    else:
        raise ParameterError(f"unknown assignment mode {assignment!r}")
    design = Design(t=c, v=ts.v, k=ts.k, lam=1, blocks=ts.private_keys, raw_blocks=ts.private_keys)
    return GossipCode(M=ts.v, q=ts.k + 1, c=c, column_keys=keys, design=design)


def traceability_strength(q: int, c: int) -> int:
    """floor(sqrt((q-2)/(c-1)))"""
    if c < 2:
        raise ParameterError(f"need c >= 2, got {c}")
    return isqrt((q - 2) // (c - 1))


def gossip_to_ts(code: GossipCode) -> tuple[int, TraceabilityScheme]:
    if code.c < 2:
        raise ParameterError(f"need c >= 2, got {code.c}")
    if not is_shortest(code):
        raise ParameterError("code is not shortest, so its keys do not form a design")
    ts = TraceabilityScheme(k=code.q - 1, b=code.l, v=code.M, private_keys=code.column_keys)
    return traceability_strength(code.q, code.c), ts


def ts_from_cyclic(base, v: int) -> TraceabilityScheme:
    keys = develop(base, v)
    return TraceabilityScheme(k=len(keys[0]), b=v, v=v, private_keys=tuple(keys))


def random_decoder(ts: TraceabilityScheme, W, seed: int | None = None,
                   adversarial: bool = False) -> frozenset[int]:
    """k keys drawn from the coalition's pooled keys.

    The adversarial mode greedily adds the key that keeps the largest
    single-member overlap smallest, breaking ties at random.
    """
    rng = random.Random(seed)
    pool = sorted(set().union(*(ts.key(u) for u in W)))
    if len(pool) < ts.k:
        raise ParameterError("coalition holds fewer than k distinct keys")
    if not adversarial:
        return frozenset(rng.sample(pool, ts.k))
    chosen: set[int] = set()
    for _ in range(ts.k):
        def worst(x):
            return max(len((chosen | {x}) & ts.key(u)) for u in W)
        left = [x for x in pool if x not in chosen]
        best = min(worst(x) for x in left)
        chosen.add(rng.choice([x for x in left if worst(x) == best]))
    return frozenset(chosen)


def save_scheme(ts: TraceabilityScheme) -> str:
    lines = [f"{ts.k} {ts.b} {ts.v}"] + [" ".join(map(str, key)) for key in ts.private_keys]
    return "\n".join(lines) + "\n"


def load_scheme(text: str) -> TraceabilityScheme:
    rows = list(_data_lines(text))
    if not rows:
        raise ParseError("empty scheme file")
    n, header = rows[0]
    head = _ints(header, n)
    if len(head) != 3:
        raise ParseError("header must be 'k b v'", n)
    k, b, v = head
    keys = []
    for n, line in rows[1:]:
        key = _ints(line, n)
        if len(key) != k:
            raise ParseError(f"private key has {len(key)} base keys, expected k={k}", n)
        keys.append(tuple(key))
    try:
        return TraceabilityScheme(k=k, b=b, v=v, private_keys=tuple(keys))
    except StructureError as exc:
        raise ParseError(str(exc)) from exc
