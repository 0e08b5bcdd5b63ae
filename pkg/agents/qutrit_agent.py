# qutrit_agent.py
"""
Appended-level qutrits omega |psi><psi| (+) (1 - omega) measured with
sigma.a (+) 0 and sigma.b (+) 0.

<A^2> = omega for both observables, so
    Var(A1) = omega - omega^2 (a.r)^2,   Var(A2) = omega - omega^2 (b.r)^2
and the lower edge of the (dA1, dA2) region is dA2 = dA1 sqrt(1 - dA1^2),
which reaches the origin at omega = 0.
"""

import math
from typing import Any, Dict, Optional, Tuple

import numpy as np

from agents.base_agent import BaseAgent
from core.config import UncertConfig
from core.errors import InvariantViolation, OutOfRange
from core.export import encode_matrix
from core.models import AppendedQutrit, PauliDirection, UncertaintyReport
from core.quantum import DensityMatrix, Observable, bloch_matrix, embed, fibonacci_sphere, moments, pauli_dot

BOUNDARY_BAND = 0.005


def appended_qutrit_density(q: AppendedQutrit) -> DensityMatrix:
    mat = embed(q.omega * bloch_matrix(q.r.as_array()), 3)
    mat[2, 2] = 1.0 - q.omega
    return DensityMatrix(mat)


def embedded_observable(a: PauliDirection) -> Observable:
    return Observable(embed(pauli_dot(a.as_array()), 3))


def qutrit_std_devs(omega, a_dot_r, b_dot_r) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized (dA1, dA2) for arrays of omega and frame components of r."""
    omega = np.asarray(omega, dtype=float)
    var1 = omega - omega ** 2 * np.asarray(a_dot_r, dtype=float) ** 2
    var2 = omega - omega ** 2 * np.asarray(b_dot_r, dtype=float) ** 2
    return np.sqrt(np.clip(var1, 0.0, 1.0)), np.sqrt(np.clip(var2, 0.0, 1.0))


def qutrit_variance_pair(q: AppendedQutrit, a: PauliDirection, b: PauliDirection) -> UncertaintyReport:
    a.require_orthogonal(b)
    rho = appended_qutrit_density(q)
    for direction in (a, b):
        _, second = moments(rho, embedded_observable(direction))
        if abs(second - q.omega) > 1e-12:
            raise InvariantViolation(f"<A^2> = {second!r} differs from omega = {q.omega!r}")

    r = q.r.as_array()
    mean_a = q.omega * float(a.as_array() @ r)
    mean_b = q.omega * float(b.as_array() @ r)
    variances = [max(0.0, q.omega - mean_a ** 2), max(0.0, q.omega - mean_b ** 2)]
    return UncertaintyReport(
        means=[mean_a, mean_b],
        second_moments=[q.omega, q.omega],
        variances=variances,
        sum_of_variances=sum(variances),
    )


def qutrit_boundary_min(d1: float) -> float:
    """Smallest dA2 reachable for a given dA1 (and, by symmetry, the other way round)."""
    if not 0.0 <= d1 <= 1.0:
        raise OutOfRange(f"standard deviation {d1!r} outside [0, 1]")
    return d1 * math.sqrt(1.0 - d1 * d1)


def qutrit_boundary_min_swapped(d2: float) -> float:
    """Smallest dA1 reachable for a given dA2."""
    return qutrit_boundary_min(d2)


def boundary_band_min(d1: float, band: float = BOUNDARY_BAND) -> float:
    """Minimum of the boundary curve over [d1 - band, d1 + band] clipped to [0, 1]."""
    lo, hi = max(0.0, d1 - band), min(1.0, d1 + band)
    # the curve rises up to 1/sqrt(2) and falls after it, so the ends bound it
    return min(qutrit_boundary_min(lo), qutrit_boundary_min(hi))


def qutrit_boundary_oracle(
    d1_grid=None,
    omega_n: int = 401,
    fib_n: Optional[int] = None,
    band: float = BOUNDARY_BAND,
) -> np.ndarray:
    """
    Brute-force lower edge of the qutrit region.

    For every abscissa, the smallest dA2 over an omega grid times a
    Fibonacci sphere of r directions whose dA1 falls within `band` of it.
    Abscissae with no state in their band get NaN. omega runs over the
    squares of an even grid so sqrt(omega), the largest dA1 at that omega,
    is evenly spaced. The sphere's polar axis is put on b so the directions
    r = +-b, where the minimum sits, are sampled densely.
    """
    grid = np.linspace(0.0, 1.0, 101) if d1_grid is None else np.asarray(d1_grid, dtype=float)
    points = fibonacci_sphere(fib_n or UncertConfig.fib_points())
    a_dot_r, b_dot_r = points[:, 0], points[:, 2]

    best = np.full(grid.shape, np.inf)
    for omega in np.linspace(0.0, 1.0, omega_n) ** 2:
        d1, d2 = qutrit_std_devs(omega, a_dot_r, b_dot_r)
        order = np.argsort(d1, kind="stable")
        d1_sorted, d2_sorted = d1[order], d2[order]
        lo = np.searchsorted(d1_sorted, grid - band, side="left")
        hi = np.searchsorted(d1_sorted, grid + band, side="right")
        for k in np.nonzero(hi > lo)[0]:
            best[k] = min(best[k], float(d2_sorted[lo[k]:hi[k]].min()))

    best[np.isinf(best)] = np.nan
    return best


class QutritAgent(BaseAgent):
    """
    Handles:
    - density          {omega, r}
    - variance_pair    {omega, r, a, b}
    - boundary_min     {d1}
    - boundary_oracle  {grid_n, omega_n, fib_n}
    """

    def __init__(self, agent_id: str = "qutrit_agent"):
        super().__init__(
            agent_id=agent_id,
            capabilities=["density", "variance_pair", "boundary_min", "boundary_oracle"],
        )

    # -------------------------------------------------------------------------
    # MESSAGE ROUTER
    # -------------------------------------------------------------------------
    def process_message(self, message: Dict[str, Any]) -> Dict[str, Any]:
        action = message.get("action")
        data = message.get("data", {})

        if not self.check_capability(action):
            return self.unknown_action(action)

        if action == "boundary_min":
            return self.success(d2_min=qutrit_boundary_min(float(data["d1"])))

        if action == "boundary_oracle":
            grid = np.linspace(0.0, 1.0, int(data.get("grid_n", 101)))
            mins = qutrit_boundary_oracle(grid, int(data.get("omega_n", 401)), data.get("fib_n"))
            return self.success(
                d1=grid.tolist(),
                d2_min=[None if math.isnan(v) else float(v) for v in mins],
                analytic=[qutrit_boundary_min(float(d)) for d in grid],
            )

        q = AppendedQutrit.of(data["omega"], data["r"])
        if action == "density":
            return self.success(rho=encode_matrix(appended_qutrit_density(q).mat))

        a = PauliDirection.from_array(data.get("a", (1.0, 0.0, 0.0)))
        b = PauliDirection.from_array(data.get("b", (0.0, 1.0, 0.0)))
        return self.success(report=qutrit_variance_pair(q, a, b).model_dump())
