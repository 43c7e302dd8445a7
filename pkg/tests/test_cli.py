import json
import subprocess
import sys

import pytest

from noethops.cli import main
from noethops.groebner import ideal_power, ideal_sum
from noethops.poly import parse_polynomial

from conftest import ideal

RING_X2 = "ring: Q[x,y] / (x^2)\nradical: (x)\nminimal-primes: [(x)]\n"
RING_X3 = "ring: Q[x,y] / (x^3)\nradical: (x)\nminimal-primes: [(x)]\n"

CONFIG = {
    "ring": "ring: Q[x,y] / (x^2)\nradical: (x)\nminimal-primes: [(x)]",
    "ideals": {"J1": "x - y", "J2": "x; y", "J3": "y"},
    "operators": "1; dx",
    "mode": "artin_rees",
    "parameters": {"n_max": 3, "c_max": 3, "degree": 12, "seed": 0},
}


@pytest.fixture
def ring_file(tmp_path):
    path = tmp_path / "ring.txt"
    path.write_text(RING_X2)
    return str(path)


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(CONFIG))
    return str(path)


def test_noeth_ops_positive_dimensional(ring_file, tmp_path, capsys):
    rc = main(["noeth-ops", ring_file, "--ideal", "x^2", "--prime", "x", "--independent", "y"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.splitlines()[0] == "1; dx"
    assert "status: exact" in out


def test_noeth_ops_point(ring_file, capsys):
    rc = main(["noeth-ops", ring_file, "--ideal", "x; y", "--point", "0,0"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.splitlines()[0] == "1"


def test_noeth_ops_json_to_file(ring_file, tmp_path):
    out = tmp_path / "cert.json"
    rc = main([
        "noeth-ops", ring_file, "--ideal", "x^2", "--prime", "x", "--independent", "y",
        "--format", "json", "--out", str(out),
    ])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["status"] == "exact"
    assert data["operators"] == ["1", "dx"]


def test_noeth_ops_computed_via_config_operators(tmp_path, capsys):
    cfg = dict(CONFIG)
    cfg["operators"] = {"compute": [{"ideal": "x^2", "prime": "x", "independent": "y"}]}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    rc = main(["find-c", str(path), "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "J1,1,1,y,12" in out


def test_malformed_polynomial_exit_1(ring_file, capsys):
    rc = main(["noeth-ops", ring_file, "--ideal", "x^^2", "--prime", "x", "--independent", "y"])
    err = capsys.readouterr().err
    assert rc == 1
    assert "position" in err


def test_verify_ops_refuted(ring_file, capsys):
    rc = main(["verify-ops", ring_file, "--ideal", "x^2", "--ops", "1", "--degree", "4"])
    out = capsys.readouterr().out
    assert rc == 2
    assert "refuted" in out and "witness: x" in out


def test_diff_colon_full_space_banner(ring_file, capsys):
    rc = main(["diff-colon", ring_file, "--ops", "1; dx", "--ideal", "y", "-m", "0", "--degree", "3"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.startswith("full space")


def test_find_c_csv(config_file, capsys):
    rc = main(["find-c", config_file, "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "J_id,n,c_min,witness,degree_bound"
    assert "J1,1,1,y,12" in lines
    assert "J2,1,0,,12" in lines
    assert "J3,3,0,,12" in lines


def test_find_c_empty_family(tmp_path, capsys):
    cfg = dict(CONFIG)
    cfg["ideals"] = {}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    rc = main(["find-c", str(path), "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out == "J_id,n,c_min,witness,degree_bound\n"


def test_find_c_parameter_overrides(config_file, capsys):
    rc = main(["find-c", config_file, "--format", "csv", "--n-max", "1", "--c-max", "2", "--degree", "10"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.splitlines()[1:] == ["J1,1,1,y,10", "J2,1,0,,10", "J3,1,0,,10"]


def test_find_c_exhaustion_exit_3(tmp_path, capsys):
    cfg = dict(CONFIG)
    cfg["ideals"] = {"J1": "x - y"}
    cfg["parameters"] = {"n_max": 1, "c_max": 0, "degree": 12, "seed": 0}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    rc = main(["find-c", str(path), "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == 3
    assert "J1,1,NOT_FOUND(<=0),y,12" in out


def test_csv_witness_roundtrip(config_file, capsys):
    rc = main(["find-c", config_file, "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == 0
    ring_N = ideal("x^2")
    for line in out.splitlines()[1:]:
        j_id, n, c_min, witness, _ = line.split(",")
        if not witness:
            continue
        f = parse_polynomial(witness, ["x", "y"])
        J = {"J1": ideal("x - y"), "J2": ideal("x", "y"), "J3": ideal("y")}[j_id]
        target = ideal_sum(ideal_power(J, int(n)), ring_N)
        assert target.normal_form(f)  # witness really avoids J^n in R


def test_check_ar_reverse(config_file, capsys):
    rc = main(["check-ar-reverse", config_file, "--n-max", "3"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.count("pass") == 9


def test_check_bs(tmp_path, capsys):
    cfg = dict(CONFIG)
    cfg["mode"] = "briancon_skoda"
    cfg["ideals"] = {"Jbs": "y^2; x*y"}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    rc = main(["check-bs", str(path), "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "Jbs,3,0,,12" in out


def test_check_symb(tmp_path, capsys):
    cfg = dict(CONFIG)
    cfg["mode"] = "symbolic"
    cfg["ideals"] = {"Js": "x - y"}
    cfg["dimension"] = 1
    cfg["witnesses"] = {"Js": "1"}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    rc = main(["check-symb", str(path), "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "Js,1,1,y,12" in out


def test_sep_op_fixture(tmp_path, capsys):
    path = tmp_path / "ring3.txt"
    path.write_text(RING_X3)
    rc = main(["sep-op", str(path), "--lower", "0", "--upper", "x^2", "--prime", "x", "--psi", "1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.splitlines() == ["dx^2", "order: 2", "d: 2"]


def test_sep_op_exhaustion_exit_3(tmp_path, capsys):
    path = tmp_path / "ring3.txt"
    path.write_text(RING_X3)
    rc = main(["sep-op", str(path), "--lower", "0", "--upper", "x^2", "--prime", "x", "--psi", "1", "--t-max", "1"])
    assert rc == 3


def test_verify_filtration_cmd(ring_file, capsys):
    rc = main(["verify-filtration", ring_file, "--chain", "(x^2) | (x) | (1)", "--primes", "(x) | (x)"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "result: pass" in out


def test_verify_filtration_failure_exit_2(ring_file, capsys):
    rc = main(["verify-filtration", ring_file, "--chain", "(x^2) | (x^2) | (1)", "--primes", "(x) | (x)"])
    assert rc == 2


def test_experiment_golden_double_run(config_file, tmp_path):
    out1, out2 = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    assert main(["experiment", config_file, "--format", "json", "--out", out1, "--jobs", "1"]) == 0
    assert main(["experiment", config_file, "--format", "json", "--out", out2, "--jobs", "4"]) == 0
    with open(out1, "rb") as f1, open(out2, "rb") as f2:
        assert f1.read() == f2.read()


def test_experiment_golden_across_processes(config_file, tmp_path):
    # different hash seeds must not change a single byte
    outputs = []
    for i, hashseed in enumerate(("0", "4242")):
        out = tmp_path / f"run{i}.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "noethops.cli", "experiment", config_file, "--format", "csv", "--out", str(out)],
            env={"PYTHONHASHSEED": hashseed, "PATH": "/usr/bin:/bin"},
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
