"""Regenerate each worked table from the constructions and diff it against the fixture."""

from __future__ import annotations

import difflib
import itertools
from dataclasses import dataclass
from typing import Callable

from . import fixtures
from .concat import builtin_square_444, concat_trace, concatenate
from .designs import FANO
from .errors import ParameterError
from .gossip import GossipCode, from_design, from_matrix, full_gossip, square_gossip
from .traceability import ts_from_cyclic, ts_to_gossip
from .tracing import Kind, Strategy, make_pirate_word, parse_word

APPENDIX_BASE = (3, 6, 7, 12, 14)


@dataclass(frozen=True)
class ReproResult:
    target: str
    ok: bool
    produced: str
    expected: str
    note: str = ""

    def diff(self) -> str:
        return "".join(difflib.unified_diff(
            self.expected.splitlines(keepends=True), self.produced.splitlines(keepends=True),
            fromfile=f"{self.target} (expected)", tofile=f"{self.target} (produced)"))


def _rows(m) -> str:
    return "".join(" ".join(str(int(x)) for x in r) + "\n" for r in m)


def _norm(text: str) -> str:
    return "".join(" ".join(line.split()) + "\n" for line in text.strip().splitlines())


def _result(target, produced, expected, note=""):
    produced, expected = _norm(produced), _norm(expected)
    return ReproResult(target, produced == expected, produced, expected, note)


def _word_text(word) -> str:
    return "(" + ", ".join("e" if x < 0 else str(x) for x in word) + ")"


def _collusion_table(code) -> str:
    lines = []
    pairs = itertools.combinations(range(1, code.M + 1), code.c)
    for n, W in enumerate(pairs, 1):
        word = make_pirate_word(code, W, Strategy(Kind.ONLY_ERASURES))
        lines.append(f"{n} {{{', '.join(map(str, W))}}} {_word_text(word)}")
    return "\n".join(lines)


def reorder_to(code: GossipCode, reference: GossipCode) -> GossipCode:
    """``code`` with columns permuted to match ``reference`` key by key (as sets)."""
    want = [frozenset(k) for k in reference.column_keys]
    have = {frozenset(k): k for k in code.column_keys}
    if set(want) != set(have) or len(want) != len(have):
        raise ParameterError("codes differ by more than a column permutation")
    return GossipCode(M=code.M, q=code.q, c=code.c, column_keys=tuple(have[k] for k in want),
                      zero_is_tracing=code.zero_is_tracing, design=code.design)


def example431_code() -> GossipCode:
    ref = from_matrix(fixtures.matrix(fixtures.EXAMPLE_431), c=2)
    return reorder_to(full_gossip(4, 3), ref)


def appendix_code(assignment: str = "development") -> GossipCode:
    return ts_to_gossip(ts_from_cyclic(APPENDIX_BASE, 21), 2, assignment)


def example211():
    return _result("example211", _rows(from_design(FANO).matrix), fixtures.EXAMPLE_211)


def example411():
    code = square_gossip(5, zero_rows=(1, 4, 5, 3, 2))
    return _result("example411", _rows(code.matrix), fixtures.EXAMPLE_411)


def example431():
    return _result("example431", _rows(example431_code().matrix), fixtures.EXAMPLE_431,
                   "full_gossip(4, 3) with columns permuted to the printed order")


def example511():
    return _result("example511", _rows(builtin_square_444().rows), fixtures.EXAMPLE_511)


def table1():
    return _result("table1", _collusion_table(example431_code()), fixtures.TABLE_1)


def table2():
    return _result("table2", _collusion_table(from_design(FANO)), fixtures.TABLE_2)


def table3():
    ts = ts_from_cyclic(APPENDIX_BASE, 21)
    lines = [f"{i}. {{{', '.join(map(str, k))}}}" for i, k in enumerate(ts.private_keys, 1)]
    return _result("table3", "\n".join(lines), fixtures.TABLE_3)


def appendix_matrix():
    printed = fixtures.matrix(fixtures.APPENDIX_MATRIX)
    m = appendix_code("development").matrix[:len(printed), :10]
    canonical = appendix_code("canonical")
    keys_ok = [set(k) for k in canonical.column_keys] == [set(k) for k in fixtures.table3_keys()]
    res = _result("appendix-matrix", _rows(m), fixtures.APPENDIX_MATRIX,
                  f"rows 1..{len(printed)} as printed; canonical keys match the key table: {keys_ok}")
    return ReproResult(res.target, res.ok and keys_ok, res.produced, res.expected, res.note)


def sec511():
    ccode = concatenate(builtin_square_444(), from_design(FANO))
    lines = []
    for word in (fixtures.SEC511_WORD1_CORRECTED, fixtures.SEC511_WORD2):
        rep = concat_trace(ccode, parse_word(word))
        accused = ", ".join(f"w{u}" for u in sorted(rep.accused))
        lines.append(f"{{{accused}}}")
    return _result("sec511", "\n".join(lines), fixtures.SEC511_TRACED,
                   "first word with its missing symbol restored")


TARGETS: dict[str, Callable[[], ReproResult]] = {
    "example211": example211,
    "table1": table1,
    "table2": table2,
    "table3": table3,
    "appendix-matrix": appendix_matrix,
    "sec511": sec511,
    "example431": example431,
    "example411": example411,
    "example511": example511,
}


def repro(target: str) -> ReproResult:
    try:
        return TARGETS[target]()
    except KeyError:
        raise ParameterError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}") from None
