# core/quantum.py
"""
Density-matrix foundation shared by every agent.

Provides validated density matrices and observables, expectation values,
variances, sum-of-variance reports, the Robertson product relation,
Kronecker products, Hermitian eigenvalues and seeded state sampling.
Everything here is a pure function of its inputs; matrices are stored
read-only after validation.
"""

from typing import List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from core.errors import (
    DimMismatch,
    EigenFailure,
    EmptyObservableList,
    InvariantViolation,
    NotHermitian,
    NotPSD,
    OutOfRange,
    TraceNotOne,
)
from core.models import BlochVector, UncertaintyReport
from core.tolerances import TAU_HERM, TAU_IMAG, TAU_PSD, TAU_TR

ComplexMatrix = npt.NDArray[np.complex128]
SamplingMode = Literal["pure-uniform", "ball-uniform"]

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_1, SIGMA_2, SIGMA_3)


# -------------------------------------------------------------------------
# MATRIX WRAPPERS
# -------------------------------------------------------------------------
def as_matrix(entries) -> ComplexMatrix:
    """Coerce nested sequences / arrays into a square complex matrix."""
    mat = np.array(entries, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] == 0:
        raise DimMismatch(f"expected a non-empty square matrix, got shape {mat.shape}")
    return mat


def hermiticity_residual(mat: ComplexMatrix) -> float:
    return float(np.max(np.abs(mat - mat.conj().T)))


class _HermitianMatrix:
    __slots__ = ("_mat",)

    def __init__(self, entries):
        mat = as_matrix(entries)
        if not np.all(np.isfinite(mat)):
            raise NotHermitian("matrix has non-finite entries")
        residual = hermiticity_residual(mat)
        if residual > TAU_HERM:
            raise NotHermitian(f"max |m_ij - conj(m_ji)| = {residual:.3e} > {TAU_HERM}")
        self._validate(mat)
        mat.setflags(write=False)
        self._mat = mat

    def _validate(self, mat: ComplexMatrix) -> None:
        pass

    @property
    def mat(self) -> ComplexMatrix:
        return self._mat

    @property
    def dim(self) -> int:
        return self._mat.shape[0]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim})"


class DensityMatrix(_HermitianMatrix):
    """Hermitian, unit-trace, positive semidefinite state."""

    __slots__ = ()

    def _validate(self, mat: ComplexMatrix) -> None:
        trace_residual = abs(np.trace(mat) - 1.0)
        if trace_residual > TAU_TR:
            raise TraceNotOne(f"|Tr(rho) - 1| = {trace_residual:.3e} > {TAU_TR}")
        lowest = float(np.linalg.eigvalsh(mat)[0])
        if lowest < -TAU_PSD:
            raise NotPSD(f"min eigenvalue {lowest:.3e} < -{TAU_PSD}")


class Observable(_HermitianMatrix):
    """Hermitian measurement operator."""

    __slots__ = ()


MatrixLike = Union[_HermitianMatrix, ComplexMatrix]


def _raw(m: MatrixLike) -> ComplexMatrix:
    return m.mat if isinstance(m, _HermitianMatrix) else as_matrix(m)


def make_density(entries) -> DensityMatrix:
    return DensityMatrix(entries)


def make_observable(entries) -> Observable:
    return Observable(entries)


def _same_dim(rho: DensityMatrix, *ops: Observable) -> None:
    for op in ops:
        if op.dim != rho.dim:
            raise DimMismatch(f"state is {rho.dim}x{rho.dim}, observable is {op.dim}x{op.dim}")


def _real_trace(product: ComplexMatrix) -> float:
    value = np.trace(product)
    if abs(value.imag) >= TAU_IMAG:
        raise InvariantViolation(f"expectation value has imaginary part {value.imag:.3e}")
    return float(value.real)


# -------------------------------------------------------------------------
# MOMENTS
# -------------------------------------------------------------------------
def expectation(rho: DensityMatrix, A: Observable) -> float:
    """Tr(rho A)."""
    _same_dim(rho, A)
    return _real_trace(rho.mat @ A.mat)


def moments(rho: DensityMatrix, A: Observable) -> Tuple[float, float]:
    """(<A>, <A^2>)."""
    _same_dim(rho, A)
    return _real_trace(rho.mat @ A.mat), _real_trace(rho.mat @ A.mat @ A.mat)


def _variance_from(mean: float, second: float) -> float:
    var = second - mean * mean
    if var < 0.0:
        if var < -TAU_PSD:
            raise InvariantViolation(f"variance {var:.3e} below -{TAU_PSD}")
        return 0.0
    return var


def variance(rho: DensityMatrix, A: Observable) -> float:
    """<A^2> - <A>^2, with round-off negatives clamped to zero."""
    mean, second = moments(rho, A)
    return _variance_from(mean, second)


def sum_uncertainty(rho: DensityMatrix, obs: Sequence[Observable]) -> UncertaintyReport:
    if not obs:
        raise EmptyObservableList("sum_uncertainty needs at least one observable")
    means, seconds, variances = [], [], []
    for A in obs:
        mean, second = moments(rho, A)
        means.append(mean)
        seconds.append(second)
        variances.append(_variance_from(mean, second))
    return UncertaintyReport(
        means=means,
        second_moments=seconds,
        variances=variances,
        sum_of_variances=sum(variances),
    )


def commutator(A: MatrixLike, B: MatrixLike) -> ComplexMatrix:
    a, b = _raw(A), _raw(B)
    return a @ b - b @ a


def robertson_bound(rho: DensityMatrix, A1: Observable, A2: Observable) -> Tuple[float, float]:
    """(Delta A1 * Delta A2, 1/2 |<[A1, A2]>|)."""
    _same_dim(rho, A1, A2)
    lhs = float(np.sqrt(variance(rho, A1)) * np.sqrt(variance(rho, A2)))
    rhs = 0.5 * float(abs(np.trace(rho.mat @ commutator(A1, A2))))
    return lhs, rhs


def purity(rho: DensityMatrix) -> float:
    return _real_trace(rho.mat @ rho.mat)


# -------------------------------------------------------------------------
# LINEAR ALGEBRA
# -------------------------------------------------------------------------
def kron(A: MatrixLike, B: MatrixLike) -> ComplexMatrix:
    return np.kron(_raw(A), _raw(B))


def hermitian_eigenvalues(M: MatrixLike) -> List[float]:
    """Real eigenvalues of a Hermitian matrix, ascending."""
    mat = _raw(M)
    residual = hermiticity_residual(mat)
    if residual > TAU_HERM:
        raise NotHermitian(f"max |m_ij - conj(m_ji)| = {residual:.3e} > {TAU_HERM}")
    try:
        values = np.linalg.eigvalsh(mat)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"eigvalsh did not converge: {exc}") from exc
    return [float(v) for v in values]


def embed(mat: MatrixLike, dim: int) -> ComplexMatrix:
    """Direct sum mat (+) 0 padded to dim x dim."""
    block = _raw(mat)
    if block.shape[0] > dim:
        raise DimMismatch(f"cannot embed {block.shape[0]}x{block.shape[0]} into {dim}x{dim}")
    out = np.zeros((dim, dim), dtype=complex)
    out[: block.shape[0], : block.shape[1]] = block
    return out


def pauli_dot(vector) -> ComplexMatrix:
    """sigma . v for a real 3-vector v."""
    v = np.asarray(vector, dtype=float)
    return v[0] * SIGMA_1 + v[1] * SIGMA_2 + v[2] * SIGMA_3


def bloch_matrix(vector) -> ComplexMatrix:
    """1/2 (I + sigma . r) as a raw matrix."""
    return 0.5 * (I2 + pauli_dot(vector))


# -------------------------------------------------------------------------
# SAMPLING
# -------------------------------------------------------------------------
def sample_bloch_vectors(n: int, mode: SamplingMode, rng: np.random.Generator) -> np.ndarray:
    """n Bloch vectors, uniform on the sphere (pure) or in the ball (mixed)."""
    if mode not in ("pure-uniform", "ball-uniform"):
        raise OutOfRange(f"unknown sampling mode {mode!r}")
    directions = rng.normal(size=(n, 3))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    if mode == "pure-uniform":
        return directions
    radii = rng.random(n) ** (1.0 / 3.0)
    return directions * radii[:, None]


def sample_qubit_state(mode: SamplingMode, seed: int) -> BlochVector:
    rng = np.random.default_rng(seed)
    return BlochVector.from_array(sample_bloch_vectors(1, mode, rng)[0])


def random_density(dim: int, rng: np.random.Generator, rank: Optional[int] = None) -> DensityMatrix:
    """Random full-rank (or given-rank) state G G^dagger / Tr."""
    k = dim if rank is None else rank
    g = rng.normal(size=(dim, k)) + 1j * rng.normal(size=(dim, k))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho / np.trace(rho).real)


def fibonacci_sphere(n: int) -> np.ndarray:
    """n nearly uniform unit vectors; the polar axis is z."""
    idx = np.arange(n, dtype=float)
    z = 1.0 - (2.0 * idx + 1.0) / n
    radius = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = idx * np.pi * (3.0 - np.sqrt(5.0))
    return np.column_stack((radius * np.cos(phi), radius * np.sin(phi), z))
