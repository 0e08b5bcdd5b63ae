# region_sampler_agent.py
"""
Point sets and grids for plotting: sampled qubit and qutrit uncertainty
regions with their boundary curves, and scalar fields over (omega, kappa).
All sampling goes through a numpy Generator seeded by the caller.
"""

import math
from typing import Any, Dict, List

import numpy as np

from agents.atomic_agent import min_sum_surface
from agents.base_agent import BaseAgent
from agents.entanglement_agent import concurrence_kappa_omega
from agents.qutrit_agent import qutrit_boundary_min, qutrit_boundary_min_swapped, qutrit_std_devs
from agents.symmetric_map_agent import uncertainty_sum_kappa
from core.errors import OutOfRange
from core.models import ContourGrid, KappaOmega, RegionPoint
from core.quantum import sample_bloch_vectors
from core.tolerances import BOUNDARY_TAG

CONTOUR_QUANTITIES = ("sum", "concurrence", "min-sum-surface")


def _require_count(n: int, minimum: int, name: str) -> None:
    if n < minimum:
        raise OutOfRange(f"{name}={n} must be at least {minimum}")


def _points(d1: np.ndarray, d2: np.ndarray, on_boundary: np.ndarray) -> List[RegionPoint]:
    return [
        RegionPoint(d1=float(x), d2=float(y), tag="boundary" if edge else "interior")
        for x, y, edge in zip(d1, d2, on_boundary)
    ]


def _qutrit_edge(d1: np.ndarray, d2: np.ndarray) -> np.ndarray:
    lower = np.abs(d2 - d1 * np.sqrt(np.clip(1.0 - d1 ** 2, 0.0, None)))
    mirrored = np.abs(d1 - d2 * np.sqrt(np.clip(1.0 - d2 ** 2, 0.0, None)))
    return np.minimum(lower, mirrored) <= BOUNDARY_TAG


# -------------------------------------------------------------------------
# REGIONS
# -------------------------------------------------------------------------
def sample_qubit_region(n: int, seed: int) -> List[RegionPoint]:
    """(dA1, dA2) of n ball-uniform qubit states for the pair sigma_x, sigma_y."""
    _require_count(n, 0, "n")
    if n == 0:
        return []
    r = sample_bloch_vectors(n, "ball-uniform", np.random.default_rng(seed))
    d1 = np.sqrt(np.clip(1.0 - r[:, 0] ** 2, 0.0, 1.0))
    d2 = np.sqrt(np.clip(1.0 - r[:, 1] ** 2, 0.0, 1.0))
    return _points(d1, d2, np.abs(np.hypot(d1, d2) - 1.0) <= BOUNDARY_TAG)


def sample_qutrit_region(n: int, seed: int) -> List[RegionPoint]:
    """n draws of uniform omega and sphere-uniform r, then the omega = 0 origin."""
    _require_count(n, 0, "n")
    rng = np.random.default_rng(seed)
    omega = rng.random(n)
    r = sample_bloch_vectors(n, "pure-uniform", rng)
    d1, d2 = qutrit_std_devs(omega, r[:, 0], r[:, 1])

    origin1, origin2 = qutrit_std_devs(np.zeros(1), np.zeros(1), np.ones(1))
    d1 = np.concatenate([d1, origin1])
    d2 = np.concatenate([d2, origin2])
    return _points(d1, d2, _qutrit_edge(d1, d2))


def qubit_boundary_curve(n: int) -> List[RegionPoint]:
    """Quarter circle d1^2 + d2^2 = 1."""
    _require_count(n, 2, "n")
    theta = np.linspace(0.0, math.pi / 2.0, n)
    d1, d2 = np.cos(theta), np.sin(theta)
    return _points(np.clip(d1, 0.0, 1.0), np.clip(d2, 0.0, 1.0), np.ones(n, dtype=bool))


def qutrit_boundary_curve(n: int) -> List[RegionPoint]:
    """Both branches d2 = f(d1) and d1 = f(d2) of the qutrit lower edge."""
    _require_count(n, 2, "n")
    axis = np.linspace(0.0, 1.0, n)
    lower = np.array([qutrit_boundary_min(float(x)) for x in axis])
    mirrored = np.array([qutrit_boundary_min_swapped(float(y)) for y in axis])
    return _points(
        np.concatenate([axis, mirrored]),
        np.concatenate([lower, axis]),
        np.ones(2 * n, dtype=bool),
    )


# -------------------------------------------------------------------------
# CONTOURS
# -------------------------------------------------------------------------
def _omega_kappa_grid(grid_n: int, z_name: str, field) -> ContourGrid:
    _require_count(grid_n, 2, "grid_n")
    axis = np.linspace(0.0, 1.0, grid_n).tolist()
    z = [[field(KappaOmega(omega=w, kappa=k)) for w in axis] for k in axis]
    return ContourGrid(x_name="omega", y_name="kappa", z_name=z_name, x_vals=axis, y_vals=axis, z=z)


def contour_sum(grid_n: int) -> ContourGrid:
    return _omega_kappa_grid(grid_n, "sum", uncertainty_sum_kappa)


def contour_concurrence(grid_n: int) -> ContourGrid:
    return _omega_kappa_grid(grid_n, "concurrence", concurrence_kappa_omega)


def contour(quantity: str, grid_n: int) -> ContourGrid:
    if quantity == "sum":
        return contour_sum(grid_n)
    if quantity == "concurrence":
        return contour_concurrence(grid_n)
    if quantity == "min-sum-surface":
        return min_sum_surface(grid_n)
    raise OutOfRange(f"unknown contour quantity {quantity!r}; expected one of {CONTOUR_QUANTITIES}")


class RegionSamplerAgent(BaseAgent):
    """
    Handles:
    - region   {system, n, seed, boundary?}
    - contour  {quantity, grid_n}
    """

    def __init__(self, agent_id: str = "region_sampler_agent"):
        super().__init__(
            agent_id=agent_id,
            capabilities=["region", "contour"],
        )

    # -------------------------------------------------------------------------
    # MESSAGE ROUTER
    # -------------------------------------------------------------------------
    def process_message(self, message: Dict[str, Any]) -> Dict[str, Any]:
        action = message.get("action")
        data = message.get("data", {})

        if not self.check_capability(action):
            return self.unknown_action(action)

        if action == "contour":
            grid = contour(data["quantity"], int(data["grid_n"]))
            return self.success(grid=grid.model_dump())

        return self.handle_region(data)

    def handle_region(self, data: Dict[str, Any]) -> Dict[str, Any]:
        system = data.get("system")
        n, seed = int(data["n"]), int(data["seed"])
        boundary_n = int(data.get("boundary") or 0)

        if system == "qubit":
            points = sample_qubit_region(n, seed)
            if boundary_n:
                points += qubit_boundary_curve(boundary_n)
        elif system == "qutrit":
            points = sample_qutrit_region(n, seed)
            if boundary_n:
                points += qutrit_boundary_curve(boundary_n)
        else:
            raise OutOfRange(f"unknown system {system!r}; expected qubit or qutrit")

        self.log.info("%s region: %d points (seed %d)", system, len(points), seed)
        return self.success(points=[p.model_dump() for p in points])
