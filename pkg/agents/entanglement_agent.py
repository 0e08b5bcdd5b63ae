# entanglement_agent.py
"""
Concurrence of two-qubit states and the uncertainty bound of symmetric
separable states.

Concurrence routes:
- general: C = max(0, l1 - l2 - l3 - l4), l_k the square roots of the
  eigenvalues of rho (s_y x s_y) rho* (s_y x s_y), in decreasing order
- X states: 2 max(0, |rho_14| - sqrt(rho_22 rho_33), |rho_23| - sqrt(rho_11 rho_44))
- mapped qutrits: |omega (1 + kappa) - 1|

A separable symmetric state sum_i p_i rho_i (x) rho_i never brings the
transformed pair below 3/4, so a smaller sum witnesses entanglement.
"""

import math
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from agents.base_agent import BaseAgent
from agents.symmetric_map_agent import qutrit_to_two_qubit, kappa_omega_of, transformed_observables
from core.errors import DimMismatch, EigenFailure, NotXState, OutOfRange
from core.export import read_matrix
from core.models import (
    AppendedQutrit,
    ConcurrenceResult,
    KappaOmega,
    PauliDirection,
    SeparableEnsemble,
)
from core.quantum import SIGMA_2, DensityMatrix, bloch_matrix, kron, sum_uncertainty
from core.tolerances import TAU_X

SEPARABLE_FLOOR = 0.75

_YY = kron(SIGMA_2, SIGMA_2).real.astype(complex)
_X_PATTERN = np.zeros((4, 4), dtype=bool)
for _i, _j in ((0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)):
    _X_PATTERN[_i, _j] = True


def _require_two_qubit(rho: DensityMatrix) -> None:
    if rho.dim != 4:
        raise DimMismatch(f"expected a 4x4 state, got {rho.dim}x{rho.dim}")


# -------------------------------------------------------------------------
# CONCURRENCE
# -------------------------------------------------------------------------
def concurrence_general(rho: DensityMatrix) -> ConcurrenceResult:
    """
    Wootters concurrence of any two-qubit state.

    With rho = W W^dagger, the eigenvalues of rho rho~ are the squared
    singular values of W^dagger (s_y x s_y) W*, which stays accurate for
    rank-deficient states where square roots of tiny eigenvalues do not.
    """
    _require_two_qubit(rho)
    try:
        evals, vecs = np.linalg.eigh(rho.mat)
        evals = np.where(evals > 1e-14, evals, 0.0)
        w = vecs * np.sqrt(evals)[None, :]
        tau = w.conj().T @ _YY @ w.conj()
        roots = np.linalg.svd(tau, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"concurrence decomposition failed: {exc}") from exc
    if not np.all(np.isfinite(roots)):
        raise EigenFailure("non-finite singular values in concurrence")

    roots = np.sort(roots)[::-1]
    value = float(roots[0] - roots[1] - roots[2] - roots[3])
    return ConcurrenceResult(
        value=min(1.0, max(0.0, value)),
        lambdas=tuple(float(x * x) for x in roots),
    )


def concurrence_x_state(rho: DensityMatrix) -> float:
    _require_two_qubit(rho)
    off = float(np.max(np.abs(np.where(_X_PATTERN, 0.0, rho.mat))))
    if off >= TAU_X:
        raise NotXState(f"largest entry outside the X pattern is {off:.3e}")
    m = rho.mat
    outer = abs(m[0, 3]) - math.sqrt(max(0.0, m[1, 1].real * m[2, 2].real))
    inner = abs(m[1, 2]) - math.sqrt(max(0.0, m[0, 0].real * m[3, 3].real))
    return float(2.0 * max(0.0, outer, inner))


def concurrence_kappa_omega(ko: KappaOmega) -> float:
    return abs(ko.omega * (1.0 + ko.kappa) - 1.0)


def concurrence_triple(q: AppendedQutrit) -> Tuple[ConcurrenceResult, float, float]:
    """(general, X-state, closed form) for the two-qubit image of q."""
    rho_ab = qutrit_to_two_qubit(q)
    return (
        concurrence_general(rho_ab),
        concurrence_x_state(rho_ab),
        concurrence_kappa_omega(kappa_omega_of(q)),
    )


# -------------------------------------------------------------------------
# SEPARABLE STATES
# -------------------------------------------------------------------------
def separable_state(ensemble: SeparableEnsemble) -> DensityMatrix:
    rho = np.zeros((4, 4), dtype=complex)
    for term in ensemble.terms:
        single = bloch_matrix(term.s_hat)
        rho += term.p * np.kron(single, single)
    return DensityMatrix(rho)


def separable_component_variances(s_hat) -> Tuple[float, float]:
    """Variances of the transformed pair in rho (x) rho for a pure rho with Bloch vector s_hat."""
    s1, s2, s3 = PauliDirection.from_array(s_hat).as_array()
    var1 = 0.5 * (1.0 + s3 ** 2 - 0.5 * (s1 ** 2 - s2 ** 2) ** 2)
    var2 = 0.5 * (1.0 + s3 ** 2 - 2.0 * s1 ** 2 * s2 ** 2)
    return float(var1), float(var2)


def separable_component_sum(s3: float) -> float:
    if not -1.0 - 1e-12 <= s3 <= 1.0 + 1e-12:
        raise OutOfRange(f"s3={s3!r} outside [-1, 1]")
    return 0.75 + 1.5 * s3 ** 2 - 0.25 * s3 ** 4


def separable_uncertainty_sum(ensemble: SeparableEnsemble) -> float:
    """Weighted sum of per-constituent variance sums."""
    return sum(term.p * separable_component_sum(term.s_hat[2]) for term in ensemble.terms)


def mixture_uncertainty_sum(ensemble: SeparableEnsemble) -> float:
    """Variance sum of the mixed state itself; adds the spread of the constituent means."""
    report = sum_uncertainty(separable_state(ensemble), transformed_observables())
    return report.sum_of_variances


def separable_bound_oracle(grid_n: int, window: Optional[Sequence[float]] = None) -> float:
    """Grid minimum of the per-constituent sum over s3 in `window` (default [-1, 1])."""
    if grid_n < 100:
        raise OutOfRange(f"grid_n={grid_n} must be at least 100")
    lo, hi = (-1.0, 1.0) if window is None else (float(window[0]), float(window[1]))
    if not -1.0 <= lo <= hi <= 1.0:
        raise OutOfRange(f"window [{lo}, {hi}] not inside [-1, 1]")
    s3 = np.linspace(lo, hi, grid_n)
    if lo <= 0.0 <= hi:
        s3 = np.union1d(s3, [0.0])
    values = 0.75 + 1.5 * s3 ** 2 - 0.25 * s3 ** 4
    return float(values.min())


class EntanglementAgent(BaseAgent):
    """
    Handles:
    - concurrence        {rho} or {omega, r}
    - concurrence_kappa  {omega, kappa}
    - separable          {weights, directions}
    - bound_oracle       {grid_n, window?}
    """

    def __init__(self, agent_id: str = "entanglement_agent"):
        super().__init__(
            agent_id=agent_id,
            capabilities=["concurrence", "concurrence_kappa", "separable", "bound_oracle"],
        )

    # -------------------------------------------------------------------------
    # MESSAGE ROUTER
    # -------------------------------------------------------------------------
    def process_message(self, message: Dict[str, Any]) -> Dict[str, Any]:
        action = message.get("action")
        data = message.get("data", {})

        if not self.check_capability(action):
            return self.unknown_action(action)

        if action == "concurrence":
            return self.handle_concurrence(data)

        if action == "concurrence_kappa":
            ko = KappaOmega(omega=float(data["omega"]), kappa=float(data["kappa"]))
            return self.success(concurrence=concurrence_kappa_omega(ko))

        if action == "separable":
            ensemble = SeparableEnsemble.of(data["weights"], data["directions"])
            return self.success(
                separable_sum=separable_uncertainty_sum(ensemble),
                mixture_sum=mixture_uncertainty_sum(ensemble),
                concurrence=concurrence_general(separable_state(ensemble)).value,
            )

        minimum = separable_bound_oracle(int(data.get("grid_n", 101)), data.get("window"))
        return self.success(minimum=minimum)

    def handle_concurrence(self, data: Dict[str, Any]) -> Dict[str, Any]:
        if "rho" in data:
            result = concurrence_general(DensityMatrix(read_matrix(data["rho"])))
            return self.success(general=result.model_dump())

        general, x_state, closed = concurrence_triple(AppendedQutrit.of(data["omega"], data["r"]))
        self.log.debug("concurrence general=%r x=%r closed=%r", general.value, x_state, closed)
        return self.success(general=general.model_dump(), x_state=x_state, kappa_omega=closed)
