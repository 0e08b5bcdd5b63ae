# core/models.py
"""
Immutable value types exchanged between agents.

Validators raise the domain errors from core.errors directly; those are not
ValueError subclasses, so pydantic lets them propagate unchanged.
"""

import math
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from core.errors import (
    BlochNormExceeded,
    InvalidEnsemble,
    InvalidOmega,
    InvalidPair,
    InvalidPopulations,
    NotOrthogonal,
    NotSymmetricState,
    NotUnitBloch,
    NotUnitVector,
    OutOfRange,
)
from core.tolerances import TAU_ORTH, TAU_SYM, TAU_UNIT


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True)


def _clip_unit_interval(value: float, name: str, tol: float = 1e-12) -> float:
    if value < -tol or value > 1 + tol or math.isnan(value):
        raise OutOfRange(f"{name}={value!r} outside [0, 1]")
    return min(1.0, max(0.0, value))


# -------------------------------------------------------------------------
# VECTORS
# -------------------------------------------------------------------------
class BlochVector(_Frozen):
    """Mean spin vector r = (r1, r2, r3) of a qubit, |r| <= 1."""

    r1: float
    r2: float
    r3: float

    @model_validator(mode="after")
    def _check_norm(self) -> "BlochVector":
        norm = math.hypot(self.r1, self.r2, self.r3)
        if not math.isfinite(norm):
            raise BlochNormExceeded(f"non-finite Bloch vector ({self.r1!r}, {self.r2!r}, {self.r3!r})")
        norm_sq = norm * norm
        if norm_sq > 1 + TAU_UNIT:
            raise BlochNormExceeded(f"|r|^2 = {norm_sq!r} exceeds 1 by {norm_sq - 1:.3e}")
        return self

    @classmethod
    def from_array(cls, values) -> "BlochVector":
        r1, r2, r3 = (float(v) for v in values)
        return cls(r1=r1, r2=r2, r3=r3)

    def as_array(self) -> np.ndarray:
        return np.array([self.r1, self.r2, self.r3], dtype=float)

    @property
    def norm(self) -> float:
        return math.sqrt(self.r1 ** 2 + self.r2 ** 2 + self.r3 ** 2)


class PauliDirection(_Frozen):
    """Unit vector selecting the Pauli observable sigma . a."""

    a1: float
    a2: float
    a3: float

    @model_validator(mode="after")
    def _check_unit(self) -> "PauliDirection":
        norm = math.hypot(self.a1, self.a2, self.a3)
        if not math.isfinite(norm):
            raise NotUnitVector(f"non-finite direction ({self.a1!r}, {self.a2!r}, {self.a3!r})")
        if abs(norm - 1.0) > TAU_UNIT:
            raise NotUnitVector(f"|a| = {norm!r}, residual {abs(norm - 1.0):.3e}")
        return self

    @classmethod
    def from_array(cls, values) -> "PauliDirection":
        a1, a2, a3 = (float(v) for v in values)
        return cls(a1=a1, a2=a2, a3=a3)

    def as_array(self) -> np.ndarray:
        return np.array([self.a1, self.a2, self.a3], dtype=float)

    def require_orthogonal(self, other: "PauliDirection") -> None:
        dot = float(self.as_array() @ other.as_array())
        if abs(dot) > TAU_ORTH:
            raise NotOrthogonal(f"a . b = {dot!r} (tolerance {TAU_ORTH})")


X_HAT = PauliDirection(a1=1.0, a2=0.0, a3=0.0)
Y_HAT = PauliDirection(a1=0.0, a2=1.0, a3=0.0)
Z_HAT = PauliDirection(a1=0.0, a2=0.0, a3=1.0)


# -------------------------------------------------------------------------
# MOMENTS
# -------------------------------------------------------------------------
class UncertaintyReport(_Frozen):
    means: List[float]
    second_moments: List[float]
    variances: List[float]
    sum_of_variances: float

    @property
    def std_devs(self) -> List[float]:
        return [math.sqrt(v) for v in self.variances]


# -------------------------------------------------------------------------
# QUTRITS AND ATOMS
# -------------------------------------------------------------------------
class AppendedQutrit(_Frozen):
    """omega |psi><psi| (+) (1 - omega), with |psi> given by its unit Bloch vector."""

    omega: float
    r: BlochVector

    @field_validator("omega")
    @classmethod
    def _check_omega(cls, value: float) -> float:
        if not 0.0 <= value <= 1.0:
            raise InvalidOmega(f"omega={value!r} outside [0, 1]")
        return value

    @field_validator("r")
    @classmethod
    def _check_pure(cls, value: BlochVector) -> BlochVector:
        if abs(value.norm - 1.0) > TAU_UNIT:
            raise NotUnitBloch(f"|r| = {value.norm!r}, residual {abs(value.norm - 1.0):.3e}")
        return value

    @classmethod
    def of(cls, omega: float, r) -> "AppendedQutrit":
        return cls(omega=float(omega), r=BlochVector.from_array(r))


class SubspacePair(_Frozen):
    i: int
    j: int

    @model_validator(mode="after")
    def _check_pair(self) -> "SubspacePair":
        if (self.i, self.j) not in ((1, 2), (1, 3), (2, 3)):
            raise InvalidPair(f"({self.i}, {self.j}) is not one of 12, 13, 23")
        return self

    @classmethod
    def parse(cls, label) -> "SubspacePair":
        text = str(label).strip().replace(",", "")
        if len(text) != 2 or not text.isdigit():
            raise InvalidPair(f"cannot read level pair from {label!r}")
        return cls(i=int(text[0]), j=int(text[1]))

    @property
    def label(self) -> str:
        return f"{self.i}{self.j}"


PAIR_12 = SubspacePair(i=1, j=2)
PAIR_13 = SubspacePair(i=1, j=3)
PAIR_23 = SubspacePair(i=2, j=3)


class SubspaceBlochVector(_Frozen):
    n1: float
    n2: float
    n3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.n1, self.n2, self.n3], dtype=float)

    @property
    def norm(self) -> float:
        return math.sqrt(self.n1 ** 2 + self.n2 ** 2 + self.n3 ** 2)


class AtomicPreset(_Frozen):
    """
    Steady-state populations of a driven 3-level atom.

    Point presets carry `populations`; the ladder preset carries ranges
    for rho_11 and rho_33 instead.
    """

    name: Literal["lambda", "vee", "xi"]
    transition_pairs: Tuple[str, ...]
    populations: Optional[Tuple[float, float, float]] = None
    rho11_range: Optional[Tuple[float, float]] = None
    rho33_range: Optional[Tuple[float, float]] = None

    @model_validator(mode="after")
    def _check_populations(self) -> "AtomicPreset":
        if self.populations is not None:
            validate_populations(self.populations)
        elif self.rho11_range is None or self.rho33_range is None:
            raise InvalidPopulations(f"preset {self.name!r} needs populations or ranges")
        return self


def validate_populations(populations, tol: float = 1e-9) -> Tuple[float, float, float]:
    pops = tuple(float(p) for p in populations)
    if len(pops) != 3:
        raise InvalidPopulations(f"expected three populations, got {len(pops)}")
    if not all(math.isfinite(p) for p in pops):
        raise InvalidPopulations(f"non-finite population in {pops}")
    if min(pops) < -tol:
        raise InvalidPopulations(f"negative population in {pops}")
    total = sum(pops)
    if abs(total - 1.0) > tol:
        raise InvalidPopulations(f"populations sum to {total!r}, residual {abs(total - 1.0):.3e}")
    return pops


# -------------------------------------------------------------------------
# TWO-QUBIT STATES
# -------------------------------------------------------------------------
class KappaOmega(_Frozen):
    omega: float
    kappa: float

    @field_validator("omega", "kappa")
    @classmethod
    def _check_range(cls, value: float, info) -> float:
        return _clip_unit_interval(value, info.field_name)


class SymmetricTwoQubitParams(_Frozen):
    """(s_i, t_ij) of rho_AB = 1/4 [I + sum s_i (s_i x I + I x s_i) + sum t_ij s_i x s_j]."""

    s: Tuple[float, float, float]
    t: Tuple[Tuple[float, float, float], Tuple[float, float, float], Tuple[float, float, float]]

    @model_validator(mode="after")
    def _check_symmetric(self) -> "SymmetricTwoQubitParams":
        t = self.t_matrix()
        asym = float(np.max(np.abs(t - t.T)))
        if asym > TAU_SYM:
            raise NotSymmetricState(f"t_ij - t_ji residual {asym:.3e}")
        return self

    def t_matrix(self) -> np.ndarray:
        return np.array(self.t, dtype=float)

    def s_vector(self) -> np.ndarray:
        return np.array(self.s, dtype=float)


class EnsembleTerm(_Frozen):
    p: float
    s_hat: Tuple[float, float, float]


class SeparableEnsemble(_Frozen):
    """Weights p_i and unit Bloch vectors s_i of sum_i p_i rho_i (x) rho_i."""

    terms: List[EnsembleTerm]

    @model_validator(mode="after")
    def _check_terms(self) -> "SeparableEnsemble":
        if not self.terms:
            raise InvalidEnsemble("ensemble has no terms")
        total = 0.0
        for k, term in enumerate(self.terms):
            if term.p < 0.0:
                raise InvalidEnsemble(f"term {k}: negative weight {term.p!r}")
            norm = math.sqrt(sum(c * c for c in term.s_hat))
            if abs(norm - 1.0) > TAU_UNIT:
                raise InvalidEnsemble(f"term {k}: |s| = {norm!r} is not a pure constituent")
            total += term.p
        if abs(total - 1.0) > 1e-12:
            raise InvalidEnsemble(f"weights sum to {total!r}, residual {abs(total - 1.0):.3e}")
        return self

    @classmethod
    def of(cls, weights, directions) -> "SeparableEnsemble":
        return cls(terms=[
            EnsembleTerm(p=float(p), s_hat=tuple(float(c) for c in s))
            for p, s in zip(weights, directions)
        ])


class ConcurrenceResult(_Frozen):
    value: float
    lambdas: Optional[Tuple[float, float, float, float]] = None


# -------------------------------------------------------------------------
# PLOT DATA
# -------------------------------------------------------------------------
class RegionPoint(_Frozen):
    d1: float
    d2: float
    tag: Literal["interior", "boundary"] = "interior"

    @field_validator("d1", "d2")
    @classmethod
    def _check_range(cls, value: float, info) -> float:
        return _clip_unit_interval(value, info.field_name)


class ContourGrid(_Frozen):
    """Scalar field z over (x_vals, y_vals); z is row-major, rows follow y. None marks an invalid cell."""

    x_name: str
    y_name: str
    z_name: str
    x_vals: List[float]
    y_vals: List[float]
    z: List[List[Optional[float]]]

    @model_validator(mode="after")
    def _check_shape(self) -> "ContourGrid":
        if len(self.z) != len(self.y_vals) or any(len(row) != len(self.x_vals) for row in self.z):
            raise OutOfRange(
                f"z must be {len(self.y_vals)} x {len(self.x_vals)} to match the axes"
            )
        return self

    def at(self, x_index: int, y_index: int) -> Optional[float]:
        return self.z[y_index][x_index]

    def rows(self):
        """Long form (x, y, z), y-major like the z matrix."""
        for iy, y in enumerate(self.y_vals):
            for ix, x in enumerate(self.x_vals):
                yield x, y, self.z[iy][ix]
