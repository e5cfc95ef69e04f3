import json
from pathlib import Path

import pytest

from qcube.cli import main

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "golden"
CIRCUITS = ROOT / "circuits"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_run_golden(capsys):
    code, out, _ = run(capsys, "run", CIRCUITS / "noncommute.cq", "--json")
    assert code == 0
    assert out == (GOLDEN / "run_noncommute.json").read_text()


def test_run_golden_is_hand_checkable():
    data = json.loads((GOLDEN / "run_noncommute.json").read_text())
    expected = []
    for fx, fz, z in (("F", "U", "1"), ("F", "D", "-1"), ("B", "U", "1"), ("B", "D", "-1")):
        expected.append({
            "outcomes": [{"axis": "x", "tag": None, "face": fx}, {"axis": "z", "tag": None, "face": fz}],
            "probability": "1/4",
            "final_bloch": ["0", "0", z],
        })
    assert data == {"mode": "full", "branches": expected}


def test_run_table(capsys):
    code, out, _ = run(capsys, "run", CIRCUITS / "noncommute.cq")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5
    assert all(" 1/4 " in ln for ln in lines[1:])


def test_sample_golden(capsys):
    code, out, _ = run(capsys, "sample", CIRCUITS / "mixed.cq", "--shots", 20000, "--seed", 42, "--json")
    assert code == 0
    assert out == (GOLDEN / "sample_mixed_20000_42.json").read_text()
    code, out2, _ = run(capsys, "sample", CIRCUITS / "mixed.cq", "--shots", 20000, "--seed", 42, "--json",
                        "--workers", 4)
    assert out2 == out


def test_sample_seed_from_environment(capsys, monkeypatch):
    args = ("sample", CIRCUITS / "mixed.cq", "--shots", 20000, "--json")
    monkeypatch.setenv("QCUBE_SEED", "42")
    _, out, _ = run(capsys, *args)
    assert out == (GOLDEN / "sample_mixed_20000_42.json").read_text()
    monkeypatch.delenv("QCUBE_SEED")
    _, out0, _ = run(capsys, *args)
    assert json.loads(out0)["seed"] == 0


def test_verify(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    checks, failures = out.split(" checks, ")
    assert int(checks) >= 576 and failures.strip() == "0 failures"
    code, out, _ = run(capsys, "verify", "--json")
    assert code == 0 and out == (GOLDEN / "verify.json").read_text()


def test_verify_failure_exit_code(capsys, monkeypatch):
    from qcube import cli, equivalence

    def broken(n_random=200, seed=0):
        return equivalence.run_full_suite(n_random, seed, matrix_of=lambda t: [[-x for x in row] for row in t.matrix])

    monkeypatch.setattr(cli, "run_full_suite", broken)
    code, out, _ = run(capsys, "verify", "--random", 5)
    assert code == 3
    assert "first counterexample" in out


def test_group_outputs(capsys):
    code, out, _ = run(capsys, "group", "--classes")
    assert code == 0
    assert [int(ln.split()[0]) for ln in out.splitlines()] == [1, 6, 3, 8, 6]
    code, out, _ = run(capsys, "group", "--table")
    assert code == 0 and len(out.splitlines()) == 25
    code, out, _ = run(capsys, "group")
    assert code == 0 and len(out.splitlines()) == 24
    code, out, _ = run(capsys, "group", "--json")
    assert out == (GOLDEN / "group.json").read_text()
    assert len(json.loads(out)["elements"]) == 24


def test_parse_pretty_prints(capsys):
    code, out, _ = run(capsys, "parse", CIRCUITS / "mixed.cq")
    assert code == 0
    assert out == "mix U:1/2, F:1/2\nmeasure x\nrot z -90\nmeasure y as after\n"


def test_syntax_errors_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.cq"
    bad.write_text("prepare U\nrot x 45\n")
    code, out, err = run(capsys, "run", bad)
    assert code == 1 and out == ""
    assert err.startswith(f"{bad}:2:7:")
    bad.write_text("prepare U\nmeasure z @\n")
    code, _, err = run(capsys, "parse", bad)
    assert code == 1 and f"{bad}:2:11:" in err


def test_io_error_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "run", tmp_path / "missing.cq")
    assert code == 2 and err.startswith("error:")


def test_bad_subcommand():
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
