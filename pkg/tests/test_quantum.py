import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from core.errors import (
    DimMismatch,
    EmptyObservableList,
    NotHermitian,
    NotPSD,
    OutOfRange,
    TraceNotOne,
)
from core.quantum import (
    I2,
    I4,
    SIGMA_1,
    SIGMA_2,
    SIGMA_3,
    as_matrix,
    bloch_matrix,
    commutator,
    embed,
    expectation,
    fibonacci_sphere,
    hermitian_eigenvalues,
    kron,
    make_density,
    make_observable,
    moments,
    purity,
    random_density,
    robertson_bound,
    sample_bloch_vectors,
    sample_qubit_state,
    sum_uncertainty,
    variance,
)

entries = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


# -------------------------------------------------------------------------
# VALIDATION
# -------------------------------------------------------------------------
def test_make_density_accepts_valid_states():
    assert make_density(np.diag([1.0, 0.0])).dim == 2
    assert make_density(0.5 * I2).dim == 2


def test_make_density_rejects_negative_eigenvalue():
    with pytest.raises(NotPSD):
        make_density(np.diag([0.6, 0.6, -0.2]))


def test_make_density_rejects_bad_trace():
    with pytest.raises(TraceNotOne):
        make_density(np.diag([0.6, 0.6]))


def test_make_density_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        make_density([[0.5, 0.1], [0.0, 0.5]])


def test_make_observable_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        make_observable([[0.0, 1.0], [0.0, 0.0]])


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), -float("inf")])
def test_non_finite_entries_are_rejected(bad):
    with pytest.raises(NotHermitian):
        make_density([[bad, 0.0], [0.0, bad]])
    with pytest.raises(NotHermitian):
        make_density([[0.5, bad], [bad, 0.5]])
    with pytest.raises(NotHermitian):
        make_observable([[bad, 0.0], [0.0, 1.0]])


def test_as_matrix_rejects_non_square():
    with pytest.raises(DimMismatch):
        as_matrix([[1.0, 2.0, 3.0]])


def test_validated_matrix_is_read_only():
    rho = make_density(0.5 * I2)
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 1.0


# -------------------------------------------------------------------------
# MOMENTS
# -------------------------------------------------------------------------
def test_expectation_examples():
    assert expectation(make_density(0.5 * I2), make_observable(SIGMA_1)) == pytest.approx(0.0)
    assert expectation(make_density(bloch_matrix((0, 0, 1))), make_observable(SIGMA_3)) == pytest.approx(1.0)
    assert expectation(make_density(bloch_matrix((0.3, 0.4, 0.5))), make_observable(SIGMA_1)) == pytest.approx(0.3)


def test_expectation_dimension_mismatch():
    with pytest.raises(DimMismatch):
        expectation(make_density(0.5 * I2), make_observable(np.eye(3)))


def test_variance_examples():
    assert variance(make_density(0.5 * I2), make_observable(SIGMA_1)) == pytest.approx(1.0)
    assert variance(make_density(bloch_matrix((1, 0, 0))), make_observable(SIGMA_1)) == 0.0
    assert variance(make_density(bloch_matrix((0.3, 0.4, 0.5))), make_observable(SIGMA_2)) == pytest.approx(0.84)


def test_moments_of_pauli_square_to_one():
    mean, second = moments(make_density(bloch_matrix((0.3, 0.4, 0.5))), make_observable(SIGMA_3))
    assert mean == pytest.approx(0.5)
    assert second == pytest.approx(1.0)


def test_sum_uncertainty_examples():
    paulis = [make_observable(s) for s in (SIGMA_1, SIGMA_2, SIGMA_3)]
    assert sum_uncertainty(make_density(0.5 * I2), paulis[:2]).sum_of_variances == pytest.approx(2.0)
    assert sum_uncertainty(make_density(bloch_matrix((1, 0, 0))), paulis[:2]).sum_of_variances == pytest.approx(1.0)
    assert sum_uncertainty(make_density(bloch_matrix((0.6, 0.8, 0))), paulis).sum_of_variances == pytest.approx(2.0)


def test_sum_uncertainty_needs_observables():
    with pytest.raises(EmptyObservableList):
        sum_uncertainty(make_density(0.5 * I2), [])


@pytest.mark.parametrize(
    "r, expected",
    [
        ((0, 0, 1), (1.0, 1.0)),
        ((0, 0, 0), (1.0, 0.0)),
        ((0, 0, 0.5), (1.0, 0.5)),
    ],
)
def test_robertson_bound_examples(r, expected):
    lhs, rhs = robertson_bound(make_density(bloch_matrix(r)), make_observable(SIGMA_1), make_observable(SIGMA_2))
    assert (lhs, rhs) == pytest.approx(expected)


def test_commutator_of_paulis():
    assert np.allclose(commutator(SIGMA_1, SIGMA_2), 2j * SIGMA_3)


def test_purity():
    assert purity(make_density(0.5 * I2)) == pytest.approx(0.5)
    assert purity(make_density(bloch_matrix((0, 1, 0)))) == pytest.approx(1.0)


# -------------------------------------------------------------------------
# LINEAR ALGEBRA
# -------------------------------------------------------------------------
def test_kron_examples():
    assert np.array_equal(kron(I2, I2), I4)
    assert np.array_equal(kron(SIGMA_1, SIGMA_1), np.fliplr(np.eye(4)))
    assert np.array_equal(kron(SIGMA_3, SIGMA_3), np.diag([1, -1, -1, 1]))


def test_hermitian_eigenvalues_examples():
    assert hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])) == pytest.approx([1.0, 2.0, 3.0])
    assert hermitian_eigenvalues(SIGMA_1) == pytest.approx([-1.0, 1.0])


def test_hermitian_eigenvalues_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eigenvalues([[0.0, 1.0], [2.0, 0.0]])


def test_embed_pads_with_zeros():
    out = embed(SIGMA_1, 3)
    assert out.shape == (3, 3)
    assert np.array_equal(out[:2, :2], SIGMA_1)
    assert not out[2].any() and not out[:, 2].any()
    with pytest.raises(DimMismatch):
        embed(I4, 3)


@settings(max_examples=60)
@given(
    a=arrays(np.float64, (2, 2), elements=entries),
    b=arrays(np.float64, (2, 2), elements=entries),
    c=arrays(np.float64, (2, 2), elements=entries),
    d=arrays(np.float64, (2, 2), elements=entries),
)
def test_kron_mixed_product(a, b, c, d):
    assert np.allclose(kron(a, b) @ kron(c, d), kron(a @ c, b @ d), atol=1e-12)


@settings(max_examples=60)
@given(m=arrays(np.float64, (3, 3), elements=entries))
def test_eigenvalues_match_trace_and_determinant(m):
    sym = m + m.T
    values = hermitian_eigenvalues(sym)
    assert sum(values) == pytest.approx(np.trace(sym), abs=1e-9)
    assert np.prod(values) == pytest.approx(np.linalg.det(sym), abs=1e-9)


# -------------------------------------------------------------------------
# SAMPLING
# -------------------------------------------------------------------------
def test_pure_samples_are_unit(rng):
    norms = np.linalg.norm(sample_bloch_vectors(1000, "pure-uniform", rng), axis=1)
    assert np.allclose(norms, 1.0, atol=1e-12)


def test_ball_samples_fill_the_ball(rng):
    norms = np.linalg.norm(sample_bloch_vectors(200000, "ball-uniform", rng), axis=1)
    assert norms.max() <= 1.0
    assert np.mean(norms ** 3) == pytest.approx(0.5, abs=0.01)


def test_unknown_sampling_mode(rng):
    with pytest.raises(OutOfRange):
        sample_bloch_vectors(3, "gaussian", rng)


def test_sample_qubit_state_is_deterministic():
    assert sample_qubit_state("pure-uniform", 42) == sample_qubit_state("pure-uniform", 42)
    assert sample_qubit_state("pure-uniform", 42).norm == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_random_density_is_valid(rng, dim):
    rho = random_density(dim, rng)
    assert rho.dim == dim
    assert min(hermitian_eigenvalues(rho)) >= -1e-10


def test_random_density_of_rank_one_is_pure(rng):
    assert purity(random_density(3, rng, rank=1)) == pytest.approx(1.0, abs=1e-12)


def test_fibonacci_sphere_points_are_unit():
    points = fibonacci_sphere(500)
    assert points.shape == (500, 3)
    assert np.allclose(np.linalg.norm(points, axis=1), 1.0)


@settings(max_examples=60)
@given(r=arrays(np.float64, (3,), elements=entries))
def test_bloch_state_variances_add_to_three_minus_norm(r):
    assume(np.linalg.norm(r) <= 1.0)
    rho = make_density(bloch_matrix(r))
    paulis = [make_observable(s) for s in (SIGMA_1, SIGMA_2, SIGMA_3)]
    total = sum_uncertainty(rho, paulis).sum_of_variances
    assert total == pytest.approx(3.0 - float(r @ r), abs=1e-12)
