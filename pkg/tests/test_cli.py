import json
import subprocess
import sys

import pytest

from conftest import complete, cycle, petersen
from signlesslap.cli import BENCH_HEADER, main
from signlesslap.graph import dumps_gset


@pytest.fixture
def gfile(tmp_path):
    def write(g, name="g.txt"):
        p = tmp_path / name
        p.write_text(dumps_gset(g))
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dualcheeger(capsys, gfile):
    code, out, _ = run(capsys, "dualcheeger", gfile(complete(3)), "--restarts", "4", "--threads", "1")
    assert code == 0
    res = json.loads(out)
    assert res["mu1"] == pytest.approx(1 / 3, abs=1e-6)
    assert res["h_plus"] == pytest.approx(2 / 3, abs=1e-6)
    assert res["verified"] is True
    assert set(res["pair"]) == {"A", "B"}


def test_maxcut(capsys, gfile):
    code, out, _ = run(capsys, "maxcut", gfile(cycle(5)), "--restarts", "3")
    assert code == 0
    res = json.loads(out)
    assert res["cut_weight"] == 4 and res["provenance"] == "d1-rsc"
    code, out, _ = run(capsys, "maxcut", gfile(cycle(5)), "--solver", "d2", "--objfun", "1", "--greedy-seed", "3")
    assert json.loads(out)["provenance"] == "d2-rsc"


def test_maxcut_csv_row(capsys, gfile):
    code, out, _ = run(capsys, "maxcut", gfile(petersen(), "petersen.txt"), "--csv", "--restarts", "3")
    lines = out.strip().splitlines()
    assert lines[0].split(",") == BENCH_HEADER
    row = lines[1].split(",")
    assert row[:3] == ["petersen", "10", "15"]
    assert all(float(v) <= 12 for v in row[3:])


def test_eigen_verify(capsys, gfile, tmp_path):
    vec = tmp_path / "x.txt"
    vec.write_text("1 1 -1\n")
    code, out, _ = run(capsys, "eigen", "verify", gfile(complete(3)), str(vec))
    res = json.loads(out)
    assert code == 0 and res["verified"] is True and res["mu"] == pytest.approx(1 / 3)
    vec.write_text("2 -1 0\n")
    _, out, _ = run(capsys, "eigen", "verify", gfile(complete(3)), str(vec))
    assert json.loads(out) == {"verified": False}
    vec.write_text("1 1\n")
    code, _, err = run(capsys, "eigen", "verify", gfile(complete(3)), str(vec))
    assert code == 1 and "entries" in err


def test_eigen_enumerate(capsys, gfile):
    _, out, _ = run(capsys, "eigen", "enumerate", gfile(complete(3)))
    res = json.loads(out)
    assert res[0]["mu"] == pytest.approx(1 / 3)
    assert set(res[0]) == {"mu", "A", "B"}


def test_enumerate_capacity_exit_code(capsys, gfile):
    code, _, err = run(capsys, "eigen", "enumerate", gfile(cycle(13)))
    assert code == 1 and "n <= 12" in err


def test_oracles(capsys, gfile):
    _, out, _ = run(capsys, "oracle", "dualcheeger", gfile(complete(3)))
    res = json.loads(out)
    assert res["value"] == pytest.approx(2 / 3) and res["witness"] == {"A": [0, 1], "B": [2]}
    _, out, _ = run(capsys, "oracle", "maxcut", gfile(cycle(5)))
    res = json.loads(out)
    assert res["value"] == 4 and res["fraction"] == pytest.approx(0.8)


def test_bench(capsys, gfile, tmp_path):
    good = gfile(cycle(6), "c6.txt")
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n1 2 -1\n")
    code, out, err = run(capsys, "bench", good, str(bad), str(tmp_path / "missing.txt"), "--restarts", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == ",".join(BENCH_HEADER)
    assert lines[1].startswith("c6,6,6,")
    assert "nonpositive weight unsupported" in err and "missing.txt" in err


def test_bench_empty(capsys):
    code, out, _ = run(capsys, "bench")
    assert code == 0 and out.strip() == ",".join(BENCH_HEADER)


def test_report_wrapper(capsys, gfile):
    _, out, _ = run(capsys, "oracle", "maxcut", gfile(cycle(4)), "--report", "--seed", "3")
    rep = json.loads(out)
    assert set(rep) == {"command", "graph", "result", "wall_time", "seed", "version"}
    assert rep["graph"] == {"n": 4, "m": 4, "total_weight": 4.0}
    assert rep["seed"] == 3


def test_deterministic_output(capsys, gfile):
    path = gfile(petersen())
    outs = [run(capsys, "dualcheeger", path, "--restarts", "3", "--seed", "9")[1] for _ in range(2)]
    assert outs[0] == outs[1]


@pytest.mark.parametrize("argv", [[], ["maxcut"], ["maxcut", "x", "--solver", "d9"], ["nope"]])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_parse_error_exit_code(capsys, tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("2 1\n1 1 1\n")
    code, _, err = run(capsys, "dualcheeger", str(p))
    assert code == 1 and "line 2" in err


def test_module_entry_point(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text(dumps_gset(cycle(4)))
    out = subprocess.run([sys.executable, "-m", "signlesslap", "oracle", "dualcheeger", str(p)], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["value"] == 1.0
