"""Acceptance criteria, one check each, printed as PASS/FAIL lines.

Run ``pytest tests/test_acceptance.py`` (the lines appear in the terminal
summary) or ``python tests/test_acceptance.py`` for the lines alone.
"""

import itertools
import random
import time
from math import comb

import numpy as np
import pytest

from gossipfp import fixtures
from gossipfp.concat import builtin_fp_342, builtin_square_444, concat_trace, concatenate, segment_and_decode
from gossipfp.designs import (FANO, cyclic_design, inversive_plane, lambda_bar_s, projective_plane,
                              steiner_triple, verify_design)
from gossipfp.errors import ParameterError
from gossipfp.gossip import (code_params, embed_sts, from_design, full_gossip, hamming_distances,
                             is_embedded, row_weights, square_gossip)
from gossipfp.repro import appendix_code, reorder_to
from gossipfp.traceability import gossip_to_ts, ts_from_cyclic, ts_to_gossip
from gossipfp.tracing import (ERASURE, Kind, Strategy, brute_force_trace, format_word,
                              make_pirate_word, parse_word, trace_nonzero, trace_only_erasures,
                              undetectable_count)
from gossipfp.watermark import detect, embed, haar_dwt2, inverse_haar_dwt2, noise_image

BASE = (3, 6, 7, 12, 14)
RESULTS: list[str] = []


def _timed(limit):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            ok, detail = fn()
            dt = time.perf_counter() - t0
            if limit is not None:
                ok = ok and dt < limit
                detail += f"; {dt:.2f}s (limit {limit}s)"
            else:
                detail += f"; {dt:.2f}s"
            return ok, detail
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


@_timed(1.0)
def ac01():
    """Fano Gossip matrix byte-exact from the Fano blocks"""
    m = from_design(FANO).matrix.tolist()
    return m == fixtures.matrix(fixtures.EXAMPLE_211), "7x7 matrix equal"


@_timed(1.0)
def ac02():
    """21-user code: key table and the printed columns"""
    ts = ts_from_cyclic(BASE, 21)
    keys_ok = list(ts.private_keys) == fixtures.table3_keys()
    printed = fixtures.matrix(fixtures.APPENDIX_MATRIX)
    dev = ts_to_gossip(ts, 2, "development")
    cols_ok = dev.matrix[:len(printed), :10].tolist() == printed
    col_keys_ok = [tuple(k) for k in dev.column_keys] == fixtures.table3_keys()
    return keys_ok and cols_ok and col_keys_ok, (
        f"21 keys in order: {keys_ok}; 10 printed columns ({len(printed)} printed rows) byte-exact: {cols_ok}; "
        f"column keys = key table: {col_keys_ok}")


def _table_protocol(code, table):
    rows = fixtures.table_rows(table)
    words = exact = zero = 0
    for W, printed in rows:
        word = make_pirate_word(code, W, Strategy(Kind.ONLY_ERASURES))
        words += format_word(word).split() == list(printed)
        exact += brute_force_trace(code, word) == [W]
        zero += trace_only_erasures(code, word).accused == set(W)
    n = len(rows)
    return words == exact == zero == n, f"words {words}/{n}, brute force exact {exact}/{n}, zero pattern exact {zero}/{n}"


@_timed(1.0)
def ac03():
    """Fano collusion table reproduced with exact coalition recovery"""
    return _table_protocol(from_design(FANO), fixtures.TABLE_2)


@_timed(None)
def ac04():
    """full_gossip(4, 3) collusion table reproduced"""
    from gossipfp.gossip import from_matrix
    full = full_gossip(4, 3)
    ref = from_matrix(fixtures.matrix(fixtures.EXAMPLE_431), c=2)
    perm_ok = sorted(map(tuple, full.matrix.T)) == sorted(map(tuple, ref.matrix.T))
    ok, detail = _table_protocol(reorder_to(full, ref), fixtures.TABLE_1)
    return ok and perm_ok, f"equal up to column permutation: {perm_ok}; {detail}"


@_timed(None)
def ac05():
    """Weight and distance formulas on projective-plane codes; l = 738"""
    parts, ok = [], True
    for p in (2, 3, 5):
        d = projective_plane(p)
        code = from_design(d)
        M, q, c = code.M, code.q, code.c
        w = comb(M - 1, c - 1) // comb(q - 2, c - 1)
        dist = code.l - lambda_bar_s(d, 2)
        wt_ok = set(row_weights(code).tolist()) == {w}
        d_ok = set(hamming_distances(code).values()) == {dist}
        ok &= wt_ok and d_ok
        parts.append(f"p={p}: w={w} {wt_ok}, d={dist} {d_ok}")
    l738 = code_params(82, 11, 3).length
    ok &= l738 == 738
    return ok, "; ".join(parts) + f"; l(82,11,3)={l738}"


@_timed(30.0)
def ac06():
    """trace_nonzero soundness sweep, 1000 trials per code and strategy"""
    codes = {"example211": from_design(FANO), "gossip21": appendix_code(),
             "square5": square_gossip(5), "full53": full_gossip(5, 3)}
    violations = trials = traced = 0
    for name, code in codes.items():
        for kind in Kind:
            rng = random.Random(f"{name}/{kind.value}")
            for _ in range(1000):
                size = rng.randint(1, code.c)
                W = set(rng.sample(range(1, code.M + 1), size))
                word = make_pirate_word(code, W, Strategy(kind), seed=rng.getrandbits(32))
                trials += 1
                has_symbol = any(x > 0 or (x == 0 and code.zero_is_tracing) for x in word)
                if has_symbol:
                    traced += 1
                    if not trace_nonzero(code, word).accused <= W:
                        violations += 1
    return violations == 0, f"{trials} trials, {traced} with a tracing symbol, {violations} violations"


@_timed(None)
def ac07():
    """undetectable_count formula equals direct zero count"""
    fano, app = from_design(FANO), appendix_code()
    checked = mismatches = 0
    for code in (fano, app):
        for d in range(1, code.c + 1):
            for W in itertools.combinations(range(1, code.M + 1), d):
                checked += 1
                zeros = make_pirate_word(code, W, Strategy(Kind.ONLY_ERASURES)).count(0)
                mismatches += undetectable_count(code, W) != zeros
    pair = undetectable_count(fano, (1, 2))
    pairs = comb(7, 2) + comb(21, 2)
    return mismatches == 0 and pair == 2, (
        f"{checked} coalitions of size <= c ({pairs} pairs), {mismatches} mismatches; W={{1,2}} on the Fano code -> {pair}")


@_timed(None)
def ac08():
    """ts_to_gossip / gossip_to_ts round trip and strengths"""
    ts = ts_from_cyclic(BASE, 21)
    w21, back = gossip_to_ts(ts_to_gossip(ts, 2, "development"))
    w7, _ = gossip_to_ts(from_design(FANO))
    ok = back.private_keys == ts.private_keys and w21 == 2 and w7 == 1
    return ok, f"round trip {back.private_keys == ts.private_keys}; w(21,21,6)={w21}; w(7,7,4)={w7}"


@_timed(None)
def ac09():
    """Concatenated codes: structure, both walkthrough outcomes, size check"""
    fano = from_design(FANO)
    fp, sq = concatenate(builtin_fp_342(), fano), concatenate(builtin_square_444(), fano)
    shape_ok = fp.matrix.shape == (7, 21) and sq.matrix.shape == (7, 28)
    seg_ok = all([fp.inner.label(s) for s in fp.segments(fp.matrix[i])] == list(fano.row(i + 1))
                 and [sq.inner.label(s) for s in sq.segments(sq.matrix[i])] == list(fano.row(i + 1))
                 for i in range(7))
    r1 = concat_trace(sq, parse_word(fixtures.SEC511_WORD1_CORRECTED))
    r2 = concat_trace(sq, parse_word(fixtures.SEC511_WORD2))
    r0 = concat_trace(fp, parse_word(fixtures.SEC5_WORD_CORRECTED))
    cand = segment_and_decode(sq, parse_word(fixtures.SEC511_WORD2)).candidates[0]
    try:
        concatenate(builtin_square_444(), appendix_code())
        rejected = False
    except ParameterError:
        rejected = True
    ok = (shape_ok and seg_ok and r1.accused == {1} and r2.accused == {1, 2} and r0.accused == {2}
          and cand == {1, 2} and rejected)
    return ok, (f"shapes {shape_ok}, segments {seg_ok}; word 1 -> {sorted(r1.accused)} ({r1.rule.value}); "
                f"word 2 -> {sorted(r2.accused)} ({r2.rule.value}), segment-1 candidates {sorted(cand)}; "
                f"binary word -> {sorted(r0.accused)}; 4 != 6 rejected: {rejected}")


@_timed(None)
def ac10():
    """embed_sts(Fano) and the 7 -> 35 code embedding"""
    big = embed_sts(FANO)
    valid = verify_design(big).valid and (big.t, big.v, big.k, big.lam) == (2, 15, 3, 1)
    prefix = big.blocks[:7] == FANO.blocks
    emb = is_embedded(from_design(FANO), from_design(big), "set-system")
    outer = from_design(big)
    return valid and prefix and emb, (
        f"2-(15,3,1) valid {valid}, Fano prefix {prefix}; 2-Gossip(7,7,4) in "
        f"2-Gossip({outer.l},{outer.M},{outer.q}) by set system: {emb}")


@_timed(5.0)
def ac11():
    """Watermark round trip and rejections at threshold 0.3"""
    img = noise_image(64, 64, seed=2024)
    A, B = from_design(FANO).row(1), from_design(FANO).row(2)
    marked = embed(img, A, 0.1, 7)
    hit, clean, other = detect(marked, A, 7), detect(img, A, 7), detect(marked, B, 7)
    identity = np.array_equal(embed(img, A, 0.0, 7), img)
    x = np.random.default_rng(16).integers(0, 256, (64, 64)).astype(float)
    err = float(np.max(np.abs(inverse_haar_dwt2(haar_dwt2(x)) - x)))
    ok = hit.detected and not clean.detected and not other.detected and identity and err <= 1e-9
    return ok, (f"marked {hit.correlation:.4f} detected={hit.detected}; clean {clean.correlation:.4f} "
                f"detected={clean.detected}; other codeword {other.correlation:.4f} detected={other.detected}; "
                f"alpha=0 identity {identity}; transform error {err:.1e}")


@_timed(10.0)
def ac12():
    """Design constructions verify exhaustively"""
    ds = ([projective_plane(p) for p in (2, 3, 5)] + [steiner_triple(v) for v in (7, 9, 13)]
          + [inversive_plane(p) for p in (2, 3)] + [cyclic_design(BASE, 21)])
    valid = [verify_design(d).valid for d in ds]
    return all(valid), f"{sum(valid)}/{len(valid)} valid"


CRITERIA = [ac01, ac02, ac03, ac04, ac05, ac06, ac07, ac08, ac09, ac10, ac11, ac12]


def _line(i, fn, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] AC{i:02d} {fn.__doc__}: {detail}"


@pytest.mark.parametrize("i,fn", list(enumerate(CRITERIA, 1)), ids=[f"AC{i:02d}" for i in range(1, 13)])
def test_criterion(i, fn):
    ok, detail = fn()
    line = _line(i, fn, ok, detail)
    RESULTS.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    for i, fn in enumerate(CRITERIA, 1):
        print(_line(i, fn, *fn()))
