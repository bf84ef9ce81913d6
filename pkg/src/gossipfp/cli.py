"""Command-line entry point: ``gossipfp <verb> ...``.

Results go to stdout in the module text formats (or JSON with ``--format
json``); diagnostics go to stderr.  Exit status is 0 on success, 1 on a
domain failure (invalid design, untraceable word, repro mismatch) and 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import designs as ds
from . import gossip as gs
from .concat import BUILTIN_INNER, concat_trace, concatenate, load_concat, save_concat, segment_and_decode
from .errors import GossipError, ParseError
from .repro import TARGETS, repro
from .traceability import gossip_to_ts, load_scheme, save_scheme, ts_from_cyclic, ts_to_gossip, ts_trace
from .tracing import (DEFAULT_BUDGET, Kind, Strategy, brute_force_report, format_word,
                      make_pirate_word, parse_word, trace_nonzero, trace_only_erasures)
from . import watermark as wm

OK, FAIL, USAGE = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _word_arg(text: str):
    """A pirate word given inline or as a path to a word file."""
    p = Path(text)
    return parse_word(p.read_text() if p.is_file() else text)


class Out:
    def __init__(self, fmt: str):
        self.fmt = fmt

    def emit(self, text: str, data) -> None:
        if self.fmt == "json":
            print(json.dumps(data, sort_keys=True))
        else:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")


# --- verbs ---------------------------------------------------------------------

def _design_build(a, out):
    if a.kind == "pg":
        d = ds.projective_plane(a.p)
    elif a.kind == "sts":
        d = ds.steiner_triple(a.v)
    elif a.kind == "inversive":
        d = ds.inversive_plane(a.p)
    else:
        d = ds.cyclic_design(a.base, a.v, t=a.t, lam=a.lam)
    out.emit(ds.save_design(d), {"t": d.t, "v": d.v, "k": d.k, "lam": d.lam, "blocks": [list(b) for b in d.blocks]})
    return OK


def _design_verify(a, out):
    d = ds.load_design(_read(a.file), verify=False)
    r = ds.verify_design(d, t=a.t, lam=a.lam)
    text = "valid" if r.valid else f"invalid: {list(r.witness)} lies in {r.witness_count} blocks"
    out.emit(f"{text}\nb={r.b}", {"valid": r.valid, "b": r.b, "forced_b": r.forced_b,
                                  "witness": list(r.witness) if r.witness else None,
                                  "witness_count": r.witness_count})
    return OK if r.valid else FAIL


def _design_lambda(a, out):
    d = ds.load_design(_read(a.file))
    val = ds.lambda_bar_s(d, a.s) if a.bar else ds.lambda_s(d, a.s)
    name = "lambda_bar" if a.bar else "lambda"
    out.emit(f"{name}_{a.s}={val}", {name: val, "s": a.s})
    return OK


def _code_out(code, out):
    out.emit(gs.save_code(code), {"M": code.M, "q": code.q, "c": code.c, "l": code.l,
                                  "zero_tracing": code.zero_is_tracing,
                                  "matrix": code.matrix.tolist()})
    return OK


def _gossip(a, out):
    if a.op == "from-design":
        return _code_out(gs.from_design(ds.load_design(_read(a.file)), a.assignment), out)
    if a.op == "square":
        return _code_out(gs.square_gossip(a.q, a.zero_rows), out)
    if a.op == "full":
        return _code_out(gs.full_gossip(a.M, a.q), out)
    p = gs.code_params(a.M, a.q, a.c)
    out.emit(f"l={p.length} w={p.weight} d={p.distance}",
             {"l": p.length, "w": p.weight, "d": p.distance})
    return OK


def _ts(a, out):
    if a.op == "from-cyclic":
        ts = ts_from_cyclic(a.base, a.v)
        out.emit(save_scheme(ts), {"k": ts.k, "b": ts.b, "v": ts.v, "keys": [list(k) for k in ts.private_keys]})
        return OK
    if a.op == "to-gossip":
        return _code_out(ts_to_gossip(load_scheme(_read(a.file)), a.c, a.assignment), out)
    if a.op == "from-gossip":
        w, ts = gossip_to_ts(gs.load_code(_read(a.file)))
        out.emit(f"# traceability {w}\n" + save_scheme(ts),
                 {"w": w, "k": ts.k, "b": ts.b, "v": ts.v, "keys": [list(k) for k in ts.private_keys]})
        return OK
    exposed = sorted(ts_trace(load_scheme(_read(a.file)), a.decoder))
    out.emit(" ".join(map(str, exposed)), {"exposed": exposed})
    return OK


def _simulate(a, out):
    code = gs.load_code(_read(a.code))
    word = make_pirate_word(code, a.coalition, Strategy.parse(a.strategy, a.policy), seed=a.seed,
                            allow_out_of_model=a.allow_out_of_model)
    out.emit(format_word(word), {"word": format_word(word)})
    return OK


def _report(rep, out):
    accused = sorted(rep.accused) if rep.rule.value != "brute-force" else [list(w) for w in sorted(rep.accused, key=lambda w: (len(w), w))]
    if rep.untraceable:
        text = "untraceable"
    elif rep.rule.value == "brute-force":
        text = "\n".join(" ".join(map(str, w)) for w in accused)
    else:
        text = " ".join(map(str, accused))
    out.emit(f"{text}\n# rule {rep.rule.value}", {"accused": accused, "rule": rep.rule.value,
                                                  "untraceable": rep.untraceable})
    return FAIL if rep.untraceable else OK


def _trace(a, out):
    code = gs.load_code(_read(a.code))
    word = _word_arg(a.word)
    if a.method == "nonzero":
        rep = trace_nonzero(code, word)
    elif a.method == "zero-pattern":
        rep = trace_only_erasures(code, word)
    elif a.method == "brute-force":
        rep = brute_force_report(code, word, budget=a.budget)
    else:
        rep = trace_nonzero(code, word)
        if rep.untraceable and 0 in word and not code.zero_is_tracing:
            rep = trace_only_erasures(code, word)
    return _report(rep, out)


def _concat(a, out):
    if a.op == "build":
        if a.inner not in BUILTIN_INNER:
            raise ParseError(f"unknown inner code {a.inner!r}; choose from {', '.join(BUILTIN_INNER)}")
        cc = concatenate(BUILTIN_INNER[a.inner](), gs.load_code(_read(a.outer)))
        out.emit(save_concat(cc), {"M": cc.M, "l": cc.l, "matrix": cc.matrix.tolist()})
        return OK
    cc = load_concat(_read(a.file))
    word = _word_arg(a.word)
    decoded = segment_and_decode(cc, word)
    rep = concat_trace(cc, word)
    print(f"# outer {format_word(decoded.outer_word)}", file=sys.stderr)
    return _report(rep, out)


def _wm(a, out):
    code = gs.load_code(_read(a.code))
    if not 1 <= a.row <= code.M:
        raise ParseError(f"row {a.row} outside 1..{code.M}")
    codeword = code.row(a.row)
    try:
        image = wm.read_pgm(Path(a.input).read_bytes())
    except OSError as exc:
        raise ParseError(f"cannot read {a.input}: {exc.strerror}") from None
    if a.op == "embed":
        marked = wm.embed(image, codeword, a.alpha, a.seed)
        Path(a.output).write_bytes(wm.write_pgm(marked, binary=not a.ascii))
        out.emit(f"wrote {a.output}", {"output": a.output})
        return OK
    det = wm.detect(image, codeword, a.seed, a.threshold)
    out.emit(f"correlation={det.correlation:.6f} detected={str(det.detected).lower()}",
             {"correlation": det.correlation, "detected": det.detected})
    return OK


def _repro(a, out):
    targets = list(TARGETS) if a.target == "all" else [a.target]
    status = OK
    for t in targets:
        r = repro(t)
        if r.ok:
            print(f"{t}: ok" + (f" ({r.note})" if r.note else ""), file=sys.stderr)
        else:
            status = FAIL
            print(f"{t}: MISMATCH", file=sys.stderr)
            sys.stderr.write(r.diff())
        out.emit(r.produced, {"target": t, "ok": r.ok, "produced": r.produced, "note": r.note})
    return status


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gossipfp", description="Gossip fingerprinting codes: build, trace, watermark.")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="brute-force coalition ceiling")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    d = sub.add_parser("design", help="build, verify and count designs")
    dsub = d.add_subparsers(dest="op", required=True, parser_class=_Parser)
    b = dsub.add_parser("build")
    b.add_argument("kind", choices=("pg", "sts", "inversive", "cyclic"))
    b.add_argument("--p", type=int)
    b.add_argument("--v", type=int)
    b.add_argument("--base", type=_ints)
    b.add_argument("--t", type=int, default=2)
    b.add_argument("--lam", type=int, default=1)
    b.set_defaults(func=_design_build)
    v = dsub.add_parser("verify")
    v.add_argument("file")
    v.add_argument("--t", type=int)
    v.add_argument("--lam", type=int)
    v.set_defaults(func=_design_verify)
    lam = dsub.add_parser("lambda")
    lam.add_argument("file")
    lam.add_argument("--s", type=int, required=True)
    lam.add_argument("--bar", action="store_true", help="count blocks disjoint from an s-set")
    lam.set_defaults(func=_design_lambda)

    g = sub.add_parser("gossip", help="construct Gossip codes")
    gsub = g.add_subparsers(dest="op", required=True, parser_class=_Parser)
    fd = gsub.add_parser("from-design")
    fd.add_argument("file")
    fd.add_argument("--assignment", choices=("canonical", "development"), default="canonical")
    sq = gsub.add_parser("square")
    sq.add_argument("q", type=int)
    sq.add_argument("--zero-rows", type=_ints)
    fu = gsub.add_parser("full")
    fu.add_argument("M", type=int)
    fu.add_argument("q", type=int)
    pa = gsub.add_parser("params")
    for name in ("M", "q", "c"):
        pa.add_argument(name, type=int)
    g.set_defaults(func=_gossip)

    t = sub.add_parser("ts", help="traceability schemes")
    tsub = t.add_subparsers(dest="op", required=True, parser_class=_Parser)
    tr = tsub.add_parser("trace")
    tr.add_argument("file")
    tr.add_argument("decoder", type=_ints)
    tg = tsub.add_parser("to-gossip")
    tg.add_argument("file")
    tg.add_argument("--c", type=int, required=True)
    tg.add_argument("--assignment", choices=("canonical", "development"), default="development")
    fg = tsub.add_parser("from-gossip")
    fg.add_argument("file")
    fc = tsub.add_parser("from-cyclic")
    fc.add_argument("--base", type=_ints, required=True)
    fc.add_argument("--v", type=int, required=True)
    t.set_defaults(func=_ts)

    s = sub.add_parser("simulate", help="produce a pirate word")
    s.add_argument("code")
    s.add_argument("--coalition", type=_ints, required=True)
    s.add_argument("--strategy", choices=[k.value for k in Kind], default=Kind.ONLY_ERASURES.value)
    s.add_argument("--policy", choices=("random", "first"), default="random")
    s.add_argument("--allow-out-of-model", action="store_true")
    s.set_defaults(func=_simulate)

    tc = sub.add_parser("trace", help="trace a pirate word")
    tc.add_argument("code")
    tc.add_argument("word", help="word text (digits and e) or a path to a word file")
    tc.add_argument("--method", choices=("auto", "nonzero", "zero-pattern", "brute-force"), default="auto")
    tc.set_defaults(func=_trace)

    c = sub.add_parser("concat", help="concatenated codes")
    csub = c.add_subparsers(dest="op", required=True, parser_class=_Parser)
    cb = csub.add_parser("build")
    cb.add_argument("--inner", required=True, help=f"one of {', '.join(BUILTIN_INNER)}")
    cb.add_argument("--outer", required=True)
    ct = csub.add_parser("trace")
    ct.add_argument("file")
    ct.add_argument("word")
    c.set_defaults(func=_concat)

    w = sub.add_parser("wm", help="image watermarking")
    wsub = w.add_subparsers(dest="op", required=True, parser_class=_Parser)
    we = wsub.add_parser("embed")
    we.add_argument("input")
    we.add_argument("output")
    we.add_argument("--alpha", type=float, default=wm.DEFAULT_ALPHA)
    we.add_argument("--ascii", action="store_true", help="write P2 instead of P5")
    wdt = wsub.add_parser("detect")
    wdt.add_argument("input")
    wdt.add_argument("--threshold", type=float, default=wm.DEFAULT_THRESHOLD)
    for sp in (we, wdt):
        sp.add_argument("--code", required=True)
        sp.add_argument("--row", type=int, required=True)
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    w.set_defaults(func=_wm)

    r = sub.add_parser("repro", help="regenerate a worked table and diff it")
    r.add_argument("target", choices=[*TARGETS, "all"])
    r.set_defaults(func=_repro)
    return p


def _check(a) -> None:
    if getattr(a, "verb", None) == "design" and a.op == "build":
        need = {"pg": ["p"], "inversive": ["p"], "sts": ["v"], "cyclic": ["base", "v"]}[a.kind]
        missing = [f"--{n}" for n in need if getattr(a, n) is None]
        if missing:
            raise _Usage(f"design build {a.kind} needs {' '.join(missing)}")


def main(argv=None) -> int:
    try:
        a = build_parser().parse_args(argv)
        _check(a)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return USAGE
    out = Out(a.format)
    try:
        return a.func(a, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except GossipError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
