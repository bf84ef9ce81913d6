import json

import numpy as np
import pytest

from gossipfp import fixtures
from gossipfp.cli import main
from gossipfp.designs import FANO, save_design
from gossipfp.gossip import save_code, square_gossip
from gossipfp.repro import TARGETS, repro
from gossipfp.watermark import noise_image, read_pgm, write_pgm


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path, fano_code):
    (tmp_path / "fano.design").write_text(save_design(FANO))
    (tmp_path / "fano.code").write_text(save_code(fano_code))
    (tmp_path / "sq5.code").write_text(save_code(square_gossip(5)))
    return tmp_path


def test_params(capsys):
    code, out, _ = run(capsys, "gossip", "params", 82, 11, 3)
    assert code == 0 and out.startswith("l=738 ")


def test_params_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "gossip", "params", 7, 4, 2)
    assert json.loads(out) == {"l": 7, "w": 3, "d": 5}


def test_from_design_byte_exact(capsys, files):
    code, out, _ = run(capsys, "gossip", "from-design", files / "fano.design")
    assert code == 0
    header, *rows = out.strip().splitlines()
    assert header == "7 4 2 7"
    assert "\n".join(rows) + "\n" == fixtures.EXAMPLE_211


def test_all_erasures_untraceable(capsys, files):
    code, out, _ = run(capsys, "trace", files / "sq5.code", "e e e e e")
    assert code == 1 and out.startswith("untraceable")


def test_trace_methods(capsys, files):
    assert run(capsys, "trace", files / "fano.code", "2 0 0 0 0 0 0")[1].startswith("2\n")
    code, out, _ = run(capsys, "trace", files / "fano.code", "e e e e e 0 0")
    assert code == 0 and out.startswith("1 2\n") and "zero-pattern" in out
    code, out, _ = run(capsys, "trace", files / "fano.code", "2 0 0 0 0 0 0", "--method", "brute-force")
    assert out.splitlines()[:2] == ["1 2", "2 3"]


def test_trace_budget(capsys, files):
    code, _, err = run(capsys, "--budget", "3", "trace", files / "fano.code", "e e e e e 0 0",
                       "--method", "brute-force")
    assert code == 1 and "budget" in err


def test_simulate_pipes_into_trace(capsys, files):
    code, out, _ = run(capsys, "simulate", files / "fano.code", "--coalition", "1,2")
    assert out.strip() == "e e e e e 0 0"
    (files / "w.txt").write_text(out)
    assert run(capsys, "trace", files / "fano.code", files / "w.txt")[1].startswith("1 2")


def test_simulate_deterministic(capsys, files):
    args = ("--seed", 5, "simulate", files / "fano.code", "--coalition", "3,6", "--strategy", "selective-erasures")
    assert run(capsys, *args) == run(capsys, *args)


def test_simulate_out_of_model(capsys, files):
    code, _, err = run(capsys, "simulate", files / "fano.code", "--coalition", "1,2,3")
    assert code == 1 and "exceeds" in err


def test_design_commands(capsys, files):
    code, out, _ = run(capsys, "design", "build", "pg", "--p", 3)
    assert code == 0 and out.startswith("2 13 4 1 13")
    (files / "pg3.design").write_text(out)
    assert run(capsys, "design", "verify", files / "pg3.design")[0] == 0
    broken = "\n".join(save_design(FANO).splitlines()[:-1]).replace("2 7 3 1 7", "2 7 3 1 6")
    (files / "bad.design").write_text(broken)
    code, out, _ = run(capsys, "design", "verify", files / "bad.design")
    assert code == 1 and "[3, 4]" in out
    assert run(capsys, "design", "lambda", files / "fano.design", "--s", 2, "--bar")[1].strip() == "lambda_bar_2=2"


def test_design_build_needs_flag(capsys):
    assert run(capsys, "design", "build", "sts")[0] == 2


def test_parse_error_exit_code(capsys, files):
    (files / "junk.design").write_text("2 7 3 1 7\n1 2\n")
    code, _, err = run(capsys, "design", "verify", files / "junk.design")
    assert code == 2 and "line 2" in err


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "gossip", "params", 7, 4)[0] == 2
    assert run(capsys, "--format", "yaml", "gossip", "params", 7, 4, 2)[0] == 2


def test_ts_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "ts", "from-cyclic", "--base", "3,6,7,12,14", "--v", 21)
    keys = [tuple(map(int, line.split())) for line in out.strip().splitlines()[1:]]
    assert keys == fixtures.table3_keys()
    (tmp_path / "ts.txt").write_text(out)
    code, out, _ = run(capsys, "ts", "to-gossip", tmp_path / "ts.txt", "--c", 2)
    rows = [list(map(int, r.split()))[:10] for r in out.strip().splitlines()[1:21]]
    assert rows == fixtures.matrix(fixtures.APPENDIX_MATRIX)
    (tmp_path / "g.code").write_text(out)
    assert run(capsys, "ts", "from-gossip", tmp_path / "g.code")[1].startswith("# traceability 2")
    assert run(capsys, "ts", "trace", tmp_path / "ts.txt", "3,6,7,8,13")[1].strip() == "1 2"


def test_concat_commands(capsys, files):
    code, out, _ = run(capsys, "concat", "build", "--inner", "square4", "--outer", files / "fano.code")
    assert code == 0
    (files / "cc.txt").write_text(out)
    code, out, err = run(capsys, "concat", "trace", files / "cc.txt", fixtures.SEC511_WORD2)
    assert code == 0 and out.startswith("1 2\n") and "inner-candidates" in out
    assert "e e 0 e e 0 0" in err
    assert run(capsys, "concat", "build", "--inner", "nope", "--outer", files / "fano.code")[0] == 2
    code, _, err = run(capsys, "concat", "build", "--inner", "fp342", "--outer", files / "sq5.code")
    assert code == 1 and "codewords" in err


def test_wm_round_trip(capsys, files):
    (files / "in.pgm").write_bytes(write_pgm(noise_image(seed=2024)))
    code, _, _ = run(capsys, "--seed", 7, "wm", "embed", files / "in.pgm", files / "out.pgm",
                     "--code", files / "fano.code", "--row", 1)
    assert code == 0 and read_pgm((files / "out.pgm").read_bytes()).shape == (64, 64)
    code, out, _ = run(capsys, "wm", "detect", files / "out.pgm", "--code", files / "fano.code",
                       "--row", 1, "--seed", 7)
    assert out.strip().endswith("detected=true")
    code, out, _ = run(capsys, "wm", "detect", files / "in.pgm", "--code", files / "fano.code",
                       "--row", 1, "--seed", 7)
    assert out.strip().endswith("detected=false")
    assert run(capsys, "wm", "detect", files / "in.pgm", "--code", files / "fano.code", "--row", 9)[0] == 2


@pytest.mark.parametrize("target", list(TARGETS))
def test_repro_targets(capsys, target):
    code, out, err = run(capsys, "repro", target)
    assert code == 0 and f"{target}: ok" in err


def test_repro_table2_rows(capsys):
    code, out, _ = run(capsys, "repro", "table2")
    assert len(out.strip().splitlines()) == 21


def test_repro_mismatch_reports_diff(capsys, monkeypatch):
    monkeypatch.setattr(fixtures, "TABLE_3", fixtures.TABLE_3.replace("{3, 6, 7, 12, 14}", "{3, 6, 7, 12, 15}"))
    code, _, err = run(capsys, "repro", "table3")
    assert code == 1 and "MISMATCH" in err and "-1. {3, 6, 7, 12, 15}" in err


def test_repro_function_unknown():
    with pytest.raises(Exception):
        repro("table9")
