import json

import numpy as np
import pytest

import main
from agents.verifier_agent import SUITES
from core.export import decode_matrix


def run(capsys, *argv):
    code = main.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def results(out):
    doc = json.loads(out)
    assert doc["schema_version"] == "1.0"
    return doc["results"]


# -------------------------------------------------------------------------
# ATOMIC
# -------------------------------------------------------------------------
def test_atomic_preset(capsys):
    code, out, _ = run(capsys, "atomic", "--preset", "lambda", "--pair", "12")
    assert code == 0
    assert results(out)["min_sum"] == pytest.approx(0.75)


def test_atomic_populations(capsys):
    code, out, _ = run(capsys, "atomic", "--pop", "0.2,0.4,0.4", "--pair", "23")
    assert code == 0
    assert results(out)["min_sum"] == pytest.approx(0.96)


def test_atomic_ladder_interval(capsys):
    code, out, _ = run(capsys, "atomic", "--preset", "xi")
    assert code == 0
    assert results(out)["min_sums"]["12"] == pytest.approx([0.75, 8 / 9])


def test_atomic_rejects_bad_populations(capsys):
    code, _, err = run(capsys, "atomic", "--pop", "0.5,0.6,0.0")
    assert code == 2
    assert "InvalidPopulations" in err


def test_atomic_rejects_non_finite_populations(capsys):
    code, out, err = run(capsys, "atomic", "--pop", "nan,0.5,0.5", "--pair", "23")
    assert code == 2
    assert out == ""
    assert "InvalidPopulations" in err


def test_atomic_needs_a_source(capsys):
    assert run(capsys, "atomic")[0] == 2


# -------------------------------------------------------------------------
# MAP
# -------------------------------------------------------------------------
def test_map_concurrence(capsys):
    code, out, _ = run(capsys, "map", "--omega", "0", "--r", "0,0,1", "--emit", "concurrence")
    assert code == 0
    assert results(out)["concurrence"] == pytest.approx(1.0)


def test_map_uncertainty(capsys):
    code, out, _ = run(capsys, "map", "--omega", "0.5", "--r", "1,0,0", "--emit", "uncertainty")
    report = results(out)["report"]
    assert code == 0
    assert report["variances"] == pytest.approx([0.25, 0.5])
    assert report["sum_of_variances"] == pytest.approx(0.75)


def test_map_uncertainty_in_a_frame(capsys):
    code, out, _ = run(capsys, "map", "--omega", "0.5", "--r", "1,0,0", "--frame", "0,1,0:0,0,1")
    assert code == 0
    assert results(out)["report"]["variances"] == pytest.approx([0.5, 0.5])


def test_map_params_of_spin_up_up(capsys):
    code, out, _ = run(capsys, "map", "--omega", "1", "--r", "0,0,1", "--emit", "params")
    params = results(out)["params"]
    assert code == 0
    assert params["s"] == pytest.approx([0, 0, 1])
    assert np.allclose(params["t"], np.diag([0, 0, 1]))


def test_map_rho_ab(capsys):
    code, out, _ = run(capsys, "map", "--omega", "1", "--r", "0,0,1", "--emit", "rho_ab")
    assert code == 0
    assert np.allclose(decode_matrix(results(out)["rho_ab"]), np.diag([1, 0, 0, 0]))


def test_map_rejects_non_unit_r(capsys):
    code, out, err = run(capsys, "map", "--omega", "0.5", "--r", "1,1,0")
    assert code == 2
    assert out == ""
    assert "NotUnitVector" in err


@pytest.mark.parametrize("r", ["nan,0,0", "inf,0,0", "0,-inf,1"])
def test_map_rejects_non_finite_r(capsys, r):
    code, out, err = run(capsys, "map", "--omega", "0.5", "--r", r)
    assert code == 2
    assert out == ""
    assert "NotUnitVector" in err


def test_map_rejects_non_finite_frame(capsys):
    code, _, err = run(capsys, "map", "--omega", "0.5", "--r", "1,0,0", "--frame", "nan,1,0:0,0,1")
    assert code == 2
    assert "NotUnitVector" in err


def test_map_rejects_nan_omega(capsys):
    code, _, err = run(capsys, "map", "--omega", "nan", "--r", "0,0,1")
    assert code == 2
    assert "InvalidOmega" in err


def test_map_rejects_bad_omega(capsys):
    code, _, err = run(capsys, "map", "--omega", "1.5", "--r", "0,0,1")
    assert code == 2
    assert "InvalidOmega" in err


# -------------------------------------------------------------------------
# REGION
# -------------------------------------------------------------------------
def test_region_csv(capsys):
    code, out, _ = run(capsys, "region", "--system", "qubit", "--samples", "5", "--seed", "1")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "d1,d2,tag"
    assert len(lines) == 6


def test_region_qutrit_adds_the_origin(capsys):
    code, out, _ = run(capsys, "region", "--system", "qutrit", "--samples", "1", "--seed", "1")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 3
    assert lines[-1] == "0.0,0.0,boundary"


def test_bad_seed_in_environment(capsys, monkeypatch):
    monkeypatch.setenv("UNCERT_SEED", "seven")
    code, out, err = run(capsys, "region", "--system", "qubit", "--samples", "3")
    assert code == 2
    assert out == ""
    assert "InvalidConfig" in err
    assert run(capsys, "region", "--system", "qubit", "--samples", "3", "--seed", "4")[0] == 0


def test_region_needs_samples(capsys):
    assert run(capsys, "region", "--system", "qubit", "--samples", "0")[0] == 2


def test_region_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("UNCERT_SEED", "17")
    code, from_env, _ = run(capsys, "region", "--system", "qubit", "--samples", "3", "--format", "json")
    assert code == 0
    assert json.loads(from_env)["inputs"]["seed"] == 17
    _, explicit, _ = run(capsys, "region", "--system", "qubit", "--samples", "3", "--format", "json", "--seed", "17")
    assert results(from_env) == results(explicit)


# -------------------------------------------------------------------------
# CONTOUR
# -------------------------------------------------------------------------
def test_contour_csv(capsys):
    code, out, _ = run(capsys, "contour", "--quantity", "sum", "--grid", "3")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "omega,kappa,sum"
    assert len(lines) == 1 + 9
    assert lines[3] == "1.0,0.0,2.0"


def test_contour_invalid_cells(capsys):
    code, out, _ = run(capsys, "contour", "--quantity", "min-sum-surface", "--grid", "3", "--format", "json")
    assert code == 0
    assert results(out)["z"][2][2] is None
    _, csv, _ = run(capsys, "contour", "--quantity", "min-sum-surface", "--grid", "3")
    assert csv.splitlines()[-1] == "1.0,1.0,nan"


def test_contour_writes_file(capsys, tmp_path):
    target = tmp_path / "sum.csv"
    code, out, _ = run(capsys, "contour", "--quantity", "concurrence", "--grid", "2", "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().splitlines()[0] == "omega,kappa,concurrence"


def test_contour_grid_too_small(capsys):
    assert run(capsys, "contour", "--quantity", "sum", "--grid", "1")[0] == 2


def test_unwritable_output(capsys, tmp_path):
    target = tmp_path / "missing" / "sum.csv"
    assert run(capsys, "contour", "--quantity", "sum", "--grid", "2", "--out", str(target))[0] == 3


# -------------------------------------------------------------------------
# VERIFY
# -------------------------------------------------------------------------
def test_verify_suite(capsys):
    code, out, err = run(capsys, "verify", "--suite", "entanglement", "--seed", "3", "--draws", "50", "--grid", "21")
    assert code == 0
    assert "[verify] entanglement:" in err
    assert results(out)["ok"] is True


def test_verify_all_reports_every_suite_in_order(capsys):
    code, out, err = run(capsys, "verify", "--seed", "2", "--draws", "50", "--grid", "11")
    assert code == 0
    reports = results(out)["reports"]
    assert [r["suite"] for r in reports] == list(SUITES)
    assert err.count("[verify] ") == len(SUITES)
