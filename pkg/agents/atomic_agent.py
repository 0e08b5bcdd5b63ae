# atomic_agent.py
"""
Pauli-like observables on two-level subspaces of a three-level atom.

sigma^(ij)_k acts as the Pauli matrix sigma_k on levels i and j and as zero
on the remaining level. For a qutrit state rho and orthogonal unit vectors
a, b in the subspace frame,

    Var(sigma^(ij).a) + Var(sigma^(ij).b) = 2 (rho_ii + rho_jj) - (a.n)^2 - (b.n)^2

with n the subspace Bloch vector. Choosing a = n/|n| and taking the largest
admissible coherence gives the minimum 2s - s^2, s = rho_ii + rho_jj, which
drops below the two-level value 1 whenever the third level is populated.
"""

import math
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from agents.base_agent import BaseAgent
from core.errors import DimMismatch, InvalidAxis, InvalidPair, InvalidPopulations, InvariantViolation, OutOfRange, UnknownPreset
from core.export import read_matrix
from core.models import (
    PAIR_12,
    PAIR_23,
    X_HAT,
    Y_HAT,
    AtomicPreset,
    ContourGrid,
    PauliDirection,
    SubspaceBlochVector,
    SubspacePair,
    UncertaintyReport,
    validate_populations,
)
from core.quantum import DensityMatrix, Observable, sum_uncertainty

MinSum = Union[float, Tuple[float, float]]

# V-system populations are approximate steady-state values, stored as exact decimals.
PRESETS: Dict[str, AtomicPreset] = {
    "lambda": AtomicPreset(name="lambda", transition_pairs=("12", "13"), populations=(0.0, 0.5, 0.5)),
    "vee": AtomicPreset(name="vee", transition_pairs=("13", "23"), populations=(0.2, 0.4, 0.4)),
    "xi": AtomicPreset(
        name="xi",
        transition_pairs=("12", "23"),
        rho11_range=(0.0, 1.0 / 3.0),
        rho33_range=(1.0 / 3.0, 0.5),
    ),
}


# -------------------------------------------------------------------------
# OPERATORS
# -------------------------------------------------------------------------
def sigma_ij(pair: SubspacePair, k: int) -> Observable:
    if not isinstance(pair, SubspacePair):
        pair = SubspacePair.parse(pair)
    if k not in (1, 2, 3):
        raise InvalidAxis(f"axis {k!r} is not 1, 2 or 3")
    i, j = pair.i - 1, pair.j - 1
    mat = np.zeros((3, 3), dtype=complex)
    if k == 1:
        mat[i, j] = mat[j, i] = 1.0
    elif k == 2:
        mat[i, j], mat[j, i] = -1j, 1j
    else:
        mat[i, i], mat[j, j] = 1.0, -1.0
    return Observable(mat)


def subspace_observable(pair: SubspacePair, direction: PauliDirection) -> Observable:
    """sigma^(ij) . a"""
    a = direction.as_array()
    return Observable(sum(a[k] * sigma_ij(pair, k + 1).mat for k in range(3)))


def subspace_projector(pair: SubspacePair) -> np.ndarray:
    proj = np.zeros((3, 3), dtype=complex)
    proj[pair.i - 1, pair.i - 1] = proj[pair.j - 1, pair.j - 1] = 1.0
    return proj


def _require_qutrit(rho: DensityMatrix) -> None:
    if rho.dim != 3:
        raise DimMismatch(f"expected a 3x3 state, got {rho.dim}x{rho.dim}")


def subspace_bloch(rho: DensityMatrix, pair: SubspacePair) -> SubspaceBlochVector:
    """n^(ij) = Tr(rho sigma^(ij)), read off the (i, j) block."""
    _require_qutrit(rho)
    i, j = pair.i - 1, pair.j - 1
    coherence = rho.mat[j, i]
    n = (2.0 * coherence.real, 2.0 * coherence.imag, float((rho.mat[i, i] - rho.mat[j, j]).real))

    traced = [float(np.trace(rho.mat @ sigma_ij(pair, k).mat).real) for k in (1, 2, 3)]
    residual = max(abs(x - y) for x, y in zip(n, traced))
    if residual > 1e-12:
        raise InvariantViolation(f"subspace Bloch vector disagrees with trace by {residual:.3e}")
    return SubspaceBlochVector(n1=n[0], n2=n[1], n3=n[2])


def default_frame(n) -> Tuple[PauliDirection, PauliDirection]:
    """(n_hat, n_perp); n_perp is Gram-Schmidt of z (x if n is along z). (x, y) when n = 0."""
    n = np.asarray(n, dtype=float)
    norm = float(np.linalg.norm(n))
    if norm < 1e-12:
        return X_HAT, Y_HAT
    n_hat = n / norm
    for ref in (np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0])):
        perp = ref - float(ref @ n_hat) * n_hat
        if np.linalg.norm(perp) > 1e-6:
            break
    perp /= np.linalg.norm(perp)
    return PauliDirection.from_array(n_hat), PauliDirection.from_array(perp)


# -------------------------------------------------------------------------
# UNCERTAINTY SUMS
# -------------------------------------------------------------------------
def atomic_sum_formula(
    rho: DensityMatrix,
    pair: SubspacePair,
    a: PauliDirection,
    b: PauliDirection,
) -> float:
    n = subspace_bloch(rho, pair).as_array()
    s = float((rho.mat[pair.i - 1, pair.i - 1] + rho.mat[pair.j - 1, pair.j - 1]).real)
    return 2.0 * s - float(a.as_array() @ n) ** 2 - float(b.as_array() @ n) ** 2


def atomic_uncertainty_sum(
    rho: DensityMatrix,
    pair: SubspacePair,
    a: Optional[PauliDirection] = None,
    b: Optional[PauliDirection] = None,
) -> UncertaintyReport:
    """Variances of sigma^(ij).a and sigma^(ij).b; frame defaults to (n_hat, n_perp)."""
    _require_qutrit(rho)
    if (a is None) != (b is None):
        raise InvalidAxis("give both frame axes a and b, or neither")
    if a is None:
        a, b = default_frame(subspace_bloch(rho, pair).as_array())
    a.require_orthogonal(b)

    report = sum_uncertainty(rho, [subspace_observable(pair, a), subspace_observable(pair, b)])
    populated = float((rho.mat[pair.i - 1, pair.i - 1] + rho.mat[pair.j - 1, pair.j - 1]).real)
    for second in report.second_moments:
        if abs(second - populated) > 1e-12:
            raise InvariantViolation(f"<A^2> = {second!r}, rho_ii + rho_jj = {populated!r}")
    return report


def min_uncertainty_sum(pop_i: float, pop_j: float) -> float:
    for value in (pop_i, pop_j):
        if value < -1e-12 or math.isnan(value):
            raise InvalidPopulations(f"negative population {value!r}")
    s = pop_i + pop_j
    if s > 1.0 + 1e-12:
        raise InvalidPopulations(f"rho_ii + rho_jj = {s!r} exceeds 1")
    s = min(1.0, max(0.0, s))
    return 2.0 * s - s * s


# -------------------------------------------------------------------------
# PRESETS
# -------------------------------------------------------------------------
def _preset(preset) -> AtomicPreset:
    if isinstance(preset, AtomicPreset):
        return preset
    try:
        return PRESETS[str(preset).lower()]
    except KeyError:
        raise UnknownPreset(f"unknown preset {preset!r}; expected one of {sorted(PRESETS)}") from None


def xi_min_sum(pair: SubspacePair, population: float) -> float:
    """
    Ladder-system minimum at one point of its population range.

    For pair 12 `population` is rho_33 in [1/3, 1/2]; for pair 23 it is
    rho_11 in [0, 1/3]. Either way the subspace holds 1 - population.
    """
    xi = PRESETS["xi"]
    if pair == PAIR_12:
        lo, hi = xi.rho33_range
    elif pair == PAIR_23:
        lo, hi = xi.rho11_range
    else:
        raise InvalidPair(f"ladder system has no transition {pair.label}")
    if not lo - 1e-12 <= population <= hi + 1e-12:
        raise OutOfRange(f"population {population!r} outside [{lo}, {hi}] for pair {pair.label}")
    s = 1.0 - population
    return 2.0 * s - s * s


def preset_min_sums(preset) -> Dict[str, MinSum]:
    """Minimum sum per transition pair; ladder pairs map to (low, high) intervals."""
    preset = _preset(preset)
    out: Dict[str, MinSum] = {}
    for label in preset.transition_pairs:
        pair = SubspacePair.parse(label)
        if preset.populations is None:
            lo, hi = preset.rho33_range if pair == PAIR_12 else preset.rho11_range
            # larger excluded population, smaller sum
            out[label] = (xi_min_sum(pair, hi), xi_min_sum(pair, lo))
        else:
            out[label] = min_uncertainty_sum(preset.populations[pair.i - 1], preset.populations[pair.j - 1])
    return out


def preset_min_sum(preset, pair: SubspacePair) -> MinSum:
    """One pair of a preset; point presets accept any pair."""
    preset = _preset(preset)
    if preset.populations is not None:
        return min_uncertainty_sum(preset.populations[pair.i - 1], preset.populations[pair.j - 1])
    sums = preset_min_sums(preset)
    if pair.label not in sums:
        raise InvalidPair(f"preset {preset.name!r} has no transition {pair.label}")
    return sums[pair.label]


def min_sum_surface(grid_n: int) -> ContourGrid:
    if grid_n < 2:
        raise OutOfRange(f"grid_n={grid_n} must be at least 2")
    axis = np.linspace(0.0, 1.0, grid_n)
    z = [
        [min_uncertainty_sum(float(x), float(y)) if x + y <= 1.0 + 1e-12 else None for x in axis]
        for y in axis
    ]
    return ContourGrid(
        x_name="rho_ii",
        y_name="rho_jj",
        z_name="min_sum",
        x_vals=axis.tolist(),
        y_vals=axis.tolist(),
        z=z,
    )


class AtomicAgent(BaseAgent):
    """
    Handles:
    - sigma            {pair, k}
    - subspace_bloch   {rho, pair}
    - uncertainty_sum  {rho, pair, a?, b?}
    - min_sum          {preset | populations, pair?}
    - surface          {grid_n}
    """

    def __init__(self, agent_id: str = "atomic_agent"):
        super().__init__(
            agent_id=agent_id,
            capabilities=["sigma", "subspace_bloch", "uncertainty_sum", "min_sum", "surface"],
        )

    # -------------------------------------------------------------------------
    # MESSAGE ROUTER
    # -------------------------------------------------------------------------
    def process_message(self, message: Dict[str, Any]) -> Dict[str, Any]:
        action = message.get("action")
        data = message.get("data", {})

        if not self.check_capability(action):
            return self.unknown_action(action)

        if action == "min_sum":
            return self.handle_min_sum(data)

        if action == "surface":
            return self.success(grid=min_sum_surface(int(data["grid_n"])).model_dump())

        pair = SubspacePair.parse(data["pair"])
        if action == "sigma":
            return self.success(matrix=np.asarray(sigma_ij(pair, int(data["k"])).mat).tolist())

        rho = DensityMatrix(read_matrix(data["rho"]))
        if action == "subspace_bloch":
            return self.success(n=subspace_bloch(rho, pair).as_array().tolist())

        a = PauliDirection.from_array(data["a"]) if data.get("a") is not None else None
        b = PauliDirection.from_array(data["b"]) if data.get("b") is not None else None
        return self.success(report=atomic_uncertainty_sum(rho, pair, a, b).model_dump())

    def handle_min_sum(self, data: Dict[str, Any]) -> Dict[str, Any]:
        pair = SubspacePair.parse(data["pair"]) if data.get("pair") is not None else None

        if data.get("populations") is not None:
            pops = validate_populations(data["populations"])
            label = "populations"
            pairs = [pair] if pair is not None else [SubspacePair.parse(p) for p in ("12", "13", "23")]
            sums = {p.label: min_uncertainty_sum(pops[p.i - 1], pops[p.j - 1]) for p in pairs}
        else:
            preset = _preset(data.get("preset"))
            label = preset.name
            sums = {pair.label: preset_min_sum(preset, pair)} if pair is not None else preset_min_sums(preset)
        self.log.debug("min sums for %s: %s", label, sums)
        return self.success(source=label, min_sums={k: _jsonable(v) for k, v in sums.items()})


def _jsonable(value: MinSum):
    return list(value) if isinstance(value, tuple) else value
