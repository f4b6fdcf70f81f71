import json
import subprocess
import sys

import numpy as np
import pytest

from eurkit.bounds import evaluate_all
from eurkit.cli import build_parser, main
from eurkit.measurements import pauli_bases, qutrit_mub
from eurkit.serialize import bases_to_json, dumps, state_to_json
from eurkit.states import RngStream, random_density, singlet
from randgen import random_measurements


@pytest.fixture
def files(tmp_path):
    state = tmp_path / "singlet.json"
    state.write_text(dumps(state_to_json(singlet())))
    bases = tmp_path / "paulis.json"
    bases.write_text(dumps(bases_to_json(pauli_bases())))
    return tmp_path, state, bases


def test_werner_row_count(tmp_path):
    out = tmp_path / "w.csv"
    assert main(["werner", "--grid", "201", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("#")
    assert lines[1] == "p,U,LMF,SCB,OSCB"
    assert len(lines) == 1 + 1 + 201


def test_bell_stdout(capsys):
    assert main(["bell", "--grid", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 5


def test_bounds_singlet(files, capsys):
    _, state, bases = files
    assert main(["bounds", "--state", str(state), "--bases", str(bases)]) == 0
    doc = json.loads(capsys.readouterr().out)
    np.testing.assert_allclose([doc["U"], doc["lmf"], doc["scb"], doc["oscb"]], [0, -1, 0, 0], atol=1e-12)
    assert doc["mub"] is True


def test_bounds_default_bases(files, capsys):
    _, state, _ = files
    assert main(["bounds", "--state", str(state)]) == 0
    assert json.loads(capsys.readouterr().out)["mub"] is True


def test_bounds_roundtrip_matches_library(tmp_path, capsys):
    rho = random_density(3, 3, RngStream(99, 4))
    path = tmp_path / "q.json"
    path.write_text(dumps(state_to_json(rho)))
    bases = tmp_path / "b.json"
    bases.write_text(dumps(bases_to_json(qutrit_mub())))
    assert main(["bounds", "--state", str(path), "--bases", str(bases)]) == 0
    doc = json.loads(capsys.readouterr().out)
    direct = evaluate_all(rho, qutrit_mub()).to_dict()
    for key, value in direct.items():
        if isinstance(value, bool):
            assert doc[key] is value
        else:
            np.testing.assert_allclose(doc[key], value, atol=1e-12, rtol=0)


def test_bounds_non_mub(tmp_path, capsys, rng):
    rho_path = tmp_path / "s.json"
    rho_path.write_text(dumps(state_to_json(random_density(2, 2, RngStream(1, 1)))))
    bases = tmp_path / "b.json"
    bases.write_text(dumps(bases_to_json(random_measurements(2, 3, rng))))
    assert main(["bounds", "--state", str(rho_path), "--bases", str(bases), "--order", "optimal"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["mub"] is False
    assert sorted(doc["order_used"]) == [0, 1, 2]


def test_bounds_malformed_state(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dims": [2, 2], "re": [[1, 0], [0, 1]]')
    assert main(["bounds", "--state", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "bad.json" in err and "json-syntax" in err and "line 1" in err


def test_bounds_invalid_state(tmp_path, capsys):
    bad = tmp_path / "trace.json"
    bad.write_text(json.dumps({"dims": [2, 2], "re": np.eye(4).tolist(), "im": np.zeros((4, 4)).tolist()}))
    assert main(["bounds", "--state", str(bad)]) == 2
    assert "unit-trace" in capsys.readouterr().err


def test_bounds_dimension_mismatch(files, tmp_path, capsys):
    _, state, _ = files
    bases = tmp_path / "q.json"
    bases.write_text(dumps(bases_to_json(qutrit_mub())))
    assert main(["bounds", "--state", str(state), "--bases", str(bases)]) == 2
    assert "dimension" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(["bounds", "--state", str(tmp_path / "nope.json")]) == 2
    assert "nope.json" in capsys.readouterr().err


def test_mub_output_is_bases_file(tmp_path):
    out = tmp_path / "m.json"
    assert main(["mub", "--dim", "3", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert [b["label"] for b in doc] == ["alpha", "beta", "gamma"]


def test_random_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["random", "--dim", "3", "--samples", "100", "--seed", "7"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_text().splitlines()) == 102


def test_env_overrides(tmp_path, monkeypatch):
    monkeypatch.setenv("EURKIT_SEED", "5")
    monkeypatch.setenv("EURKIT_OUT_DIR", str(tmp_path / "out"))
    assert main(["random", "--samples", "3"]) == 0
    produced = tmp_path / "out" / "random_d2_n3_s5.csv"
    assert "seed=5" in produced.read_text().splitlines()[0]
    # flags beat the environment
    explicit = tmp_path / "explicit.csv"
    assert main(["random", "--samples", "3", "--seed", "6", "--out", str(explicit)]) == 0
    assert "seed=6" in explicit.read_text().splitlines()[0]


def test_bad_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("EURKIT_SEED", "-3")
    assert main(["random", "--samples", "2"]) == 2
    assert "EURKIT_SEED" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["werner", "--bogus"],
        ["random", "--dim", "4"],
        ["random", "--seed", "-1"],
        ["werner", "--grid", "1"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_help_lists_every_flag():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    expected = {
        "werner": ["--grid", "--out"],
        "bell": ["--grid", "--out"],
        "random": ["--dim", "--samples", "--seed", "--workers", "--out"],
        "bounds": ["--state", "--bases", "--order", "--out"],
        "mub": ["--dim", "--out"],
    }
    for name, flags in expected.items():
        text = sub.choices[name].format_help()
        for flag in flags:
            assert flag in text


def test_module_entry_point(tmp_path):
    out = tmp_path / "w.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "eurkit", "werner", "--grid", "3", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert len(out.read_text().splitlines()) == 5
