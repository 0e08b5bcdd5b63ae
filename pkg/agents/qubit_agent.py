# qubit_agent.py
"""
Qubit Bloch states, Pauli observables along arbitrary directions and the
qubit uncertainty region.

For orthogonal unit vectors a, b the variances of sigma.a and sigma.b in
the state 1/2 (I + sigma.r) are 1 - (a.r)^2 and 1 - (b.r)^2, so their sum
never drops below 1.
"""

import math
from typing import Any, Dict, Tuple

import numpy as np

from agents.base_agent import BaseAgent
from core.errors import OutOfRange
from core.export import encode_matrix
from core.models import BlochVector, PauliDirection, UncertaintyReport
from core.quantum import (
    DensityMatrix,
    Observable,
    bloch_matrix,
    pauli_dot,
    robertson_bound,
)


def bloch_to_density(r: BlochVector) -> DensityMatrix:
    return DensityMatrix(bloch_matrix(r.as_array()))


def pauli_observable(a: PauliDirection) -> Observable:
    return Observable(pauli_dot(a.as_array()))


def qubit_variance_pair(r: BlochVector, a: PauliDirection, b: PauliDirection) -> UncertaintyReport:
    a.require_orthogonal(b)
    rv = r.as_array()
    mean_a = float(a.as_array() @ rv)
    mean_b = float(b.as_array() @ rv)
    variances = [max(0.0, 1.0 - mean_a ** 2), max(0.0, 1.0 - mean_b ** 2)]
    return UncertaintyReport(
        means=[mean_a, mean_b],
        second_moments=[1.0, 1.0],
        variances=variances,
        sum_of_variances=sum(variances),
    )


def qubit_region_contains(d1: float, d2: float) -> bool:
    """Membership in the qubit region, in standard deviations: d1^2 + d2^2 >= 1."""
    for name, value in (("d1", d1), ("d2", d2)):
        if not 0.0 <= value <= 1.0:
            raise OutOfRange(f"{name}={value!r} outside [0, 1]")
    return d1 * d1 + d2 * d2 >= 1.0 - 1e-10


def robertson_check(r: BlochVector, a: PauliDirection, b: PauliDirection) -> Tuple[float, float]:
    return robertson_bound(bloch_to_density(r), pauli_observable(a), pauli_observable(b))


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation by `angle` about `axis`."""
    k = np.asarray(axis, dtype=float)
    k = k / np.linalg.norm(k)
    cross = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return np.eye(3) + math.sin(angle) * cross + (1.0 - math.cos(angle)) * (cross @ cross)


class QubitAgent(BaseAgent):
    """
    Handles:
    - density          {r}        -> 2x2 matrix
    - variance_pair    {r, a, b}  -> UncertaintyReport
    - region_contains  {d1, d2}   -> bool
    - robertson        {r, a, b}  -> (lhs, rhs)
    """

    def __init__(self, agent_id: str = "qubit_agent"):
        super().__init__(
            agent_id=agent_id,
            capabilities=["density", "variance_pair", "region_contains", "robertson"],
        )

    # -------------------------------------------------------------------------
    # MESSAGE ROUTER
    # -------------------------------------------------------------------------
    def process_message(self, message: Dict[str, Any]) -> Dict[str, Any]:
        action = message.get("action")
        data = message.get("data", {})

        if not self.check_capability(action):
            return self.unknown_action(action)

        if action == "density":
            rho = bloch_to_density(BlochVector.from_array(data["r"]))
            return self.success(rho=encode_matrix(rho.mat))

        if action == "region_contains":
            return self.success(inside=qubit_region_contains(float(data["d1"]), float(data["d2"])))

        r = BlochVector.from_array(data["r"])
        a = PauliDirection.from_array(data.get("a", (1.0, 0.0, 0.0)))
        b = PauliDirection.from_array(data.get("b", (0.0, 1.0, 0.0)))

        if action == "variance_pair":
            return self.success(report=qubit_variance_pair(r, a, b).model_dump())

        lhs, rhs = robertson_check(r, a, b)
        return self.success(lhs=lhs, rhs=rhs)
