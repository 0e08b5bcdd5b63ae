import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agents.qubit_agent import (
    bloch_to_density,
    pauli_observable,
    qubit_region_contains,
    qubit_variance_pair,
    robertson_check,
    rotation_matrix,
)
from core.errors import NotOrthogonal, OutOfRange
from core.models import X_HAT, Y_HAT, Z_HAT, BlochVector, PauliDirection
from core.quantum import I2, SIGMA_1, SIGMA_2, SIGMA_3, hermitian_eigenvalues, sum_uncertainty


def test_bloch_to_density_examples():
    assert np.allclose(bloch_to_density(BlochVector.from_array((0, 0, 0))).mat, 0.5 * I2)
    assert np.allclose(bloch_to_density(BlochVector.from_array((0, 0, 1))).mat, np.diag([1, 0]))
    values = hermitian_eigenvalues(bloch_to_density(BlochVector.from_array((0.6, 0, 0.8))))
    assert values == pytest.approx([0.0, 1.0], abs=1e-12)


def test_pauli_observable_examples():
    assert np.allclose(pauli_observable(X_HAT).mat, SIGMA_1)
    assert np.allclose(pauli_observable(Z_HAT).mat, SIGMA_3)
    diag = pauli_observable(PauliDirection.from_array((1 / math.sqrt(2), 1 / math.sqrt(2), 0)))
    assert np.allclose(diag.mat, (SIGMA_1 + SIGMA_2) / math.sqrt(2))
    assert np.allclose(diag.mat @ diag.mat, I2)


@pytest.mark.parametrize(
    "r, variances, total",
    [
        ((1, 0, 0), (0.0, 1.0), 1.0),
        ((0, 0, 0), (1.0, 1.0), 2.0),
        ((0.3, 0.4, 0.5), (0.91, 0.84), 1.75),
    ],
)
def test_qubit_variance_pair_examples(r, variances, total):
    report = qubit_variance_pair(BlochVector.from_array(r), X_HAT, Y_HAT)
    assert report.variances == pytest.approx(list(variances))
    assert report.sum_of_variances == pytest.approx(total)


def test_qubit_variance_pair_needs_orthogonal_frame():
    with pytest.raises(NotOrthogonal):
        qubit_variance_pair(BlochVector.from_array((0, 0, 0)), X_HAT, X_HAT)


@pytest.mark.parametrize("d1, d2, inside", [(1, 1, True), (0.5, 0.5, False), (0.6, 0.8, True)])
def test_qubit_region_contains(d1, d2, inside):
    assert qubit_region_contains(d1, d2) is inside


def test_qubit_region_rejects_out_of_range():
    with pytest.raises(OutOfRange):
        qubit_region_contains(1.2, 0.0)


def test_robertson_check_holds_for_mixed_state():
    lhs, rhs = robertson_check(BlochVector.from_array((0.0, 0.0, 0.5)), X_HAT, Y_HAT)
    assert lhs >= rhs
    assert rhs == pytest.approx(0.5)


def test_rotation_matrix_is_orthogonal():
    rot = rotation_matrix((1.0, 2.0, 2.0), 0.7)
    assert np.allclose(rot @ rot.T, np.eye(3))
    assert np.linalg.det(rot) == pytest.approx(1.0)
    assert np.allclose(rotation_matrix((0, 0, 1), math.pi / 2) @ (1, 0, 0), (0, 1, 0))


unit_interval = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
angle = st.floats(min_value=0.0, max_value=2 * math.pi, allow_nan=False)


@settings(max_examples=80)
@given(radius=unit_interval, theta=st.floats(0.0, math.pi), phi=angle, spin=angle, tilt=st.floats(0.0, math.pi))
def test_formula_matches_trace_and_respects_bound(radius, theta, phi, spin, tilt):
    r = BlochVector.from_array(
        radius * np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])
    )
    rot = rotation_matrix((math.sin(tilt), 0.0, math.cos(tilt)), spin)
    a, b = PauliDirection.from_array(rot[:, 0]), PauliDirection.from_array(rot[:, 1])

    report = qubit_variance_pair(r, a, b)
    traced = sum_uncertainty(bloch_to_density(r), [pauli_observable(a), pauli_observable(b)])
    assert report.variances == pytest.approx(traced.variances, abs=1e-12)
    assert report.sum_of_variances >= 1.0 - 1e-10
    assert qubit_region_contains(*[min(1.0, s) for s in report.std_devs])


@settings(max_examples=80)
@given(radius=unit_interval, phi=angle, spin=angle, tilt=st.floats(0.0, math.pi))
def test_rotation_covariance(radius, phi, spin, tilt):
    r = radius * np.array([math.cos(phi), math.sin(phi), 0.0])
    rot = rotation_matrix((math.sin(tilt), math.cos(tilt), 0.3), spin)
    before = qubit_variance_pair(BlochVector.from_array(r), X_HAT, Y_HAT)
    after = qubit_variance_pair(
        BlochVector.from_array(np.clip(rot @ r, -1.0, 1.0)),
        PauliDirection.from_array(rot @ X_HAT.as_array()),
        PauliDirection.from_array(rot @ Y_HAT.as_array()),
    )
    assert after.variances == pytest.approx(before.variances, abs=1e-12)


def test_agent_routes_actions(orc):
    response = orc.send("qubit_agent", "variance_pair", {"r": [0.3, 0.4, 0.5]})
    assert response["status"] == "success"
    assert response["report"]["sum_of_variances"] == pytest.approx(1.75)

    assert orc.send("qubit_agent", "region_contains", {"d1": 0.5, "d2": 0.5})["inside"] is False
    assert orc.send("qubit_agent", "teleport", {})["error"] == "UnknownAction"


def test_agent_reports_domain_errors(orc):
    response = orc.send("qubit_agent", "density", {"r": [1.0, 1.0, 0.0]})
    assert response == {
        "status": "error",
        "error": "BlochNormExceeded",
        "message": response["message"],
    }
