# symmetric_map_agent.py
"""
The appended-level qutrit seen as a permutation-symmetric two-qubit state.

Basis order, fixed for every matrix this module emits or reads:
    uncoupled  |up,up>, |up,down>, |down,up>, |down,down>
    coupled    |1,1>, |1,-1>, |1,0>, |0,0>
The qutrit levels (qubit up, qubit down, appended level) sit in the first
three coupled slots, so rho_AB = U^dagger (rho_qutrit (+) 0) U.
"""

import math
from typing import Any, Dict, Optional, Tuple

import numpy as np

from agents.base_agent import BaseAgent
from agents.qutrit_agent import appended_qutrit_density
from core.errors import DimMismatch, InvariantViolation, NotSymmetricState
from core.export import encode_matrix, read_matrix
from core.models import (
    AppendedQutrit,
    KappaOmega,
    PauliDirection,
    SymmetricTwoQubitParams,
    UncertaintyReport,
)
from core.quantum import (
    I2,
    I4,
    PAULIS,
    SIGMA_1,
    SIGMA_2,
    DensityMatrix,
    Observable,
    embed,
    kron,
    sum_uncertainty,
)
from core.tolerances import TAU_SYM

_H = 1.0 / math.sqrt(2.0)

_U = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, _H, _H, 0.0],
        [0.0, _H, -_H, 0.0],
    ],
    dtype=complex,
)
_U.setflags(write=False)

_SWAP = np.array(
    [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)
_SWAP.setflags(write=False)


# -------------------------------------------------------------------------
# BASES
# -------------------------------------------------------------------------
def coupling_unitary() -> np.ndarray:
    """Coupled-to-uncoupled change of basis (rows are coupled states)."""
    return _U.copy()


def coupled_to_uncoupled(vec) -> np.ndarray:
    """Uncoupled amplitudes of a coupled-basis vector."""
    return _U.conj().T @ np.asarray(vec, dtype=complex)


def swap_operator() -> np.ndarray:
    return _SWAP.copy()


def embed_qutrit(rho3: DensityMatrix) -> np.ndarray:
    if rho3.dim != 3:
        raise DimMismatch(f"expected a 3x3 state, got {rho3.dim}x{rho3.dim}")
    return embed(rho3, 4)


def qutrit_to_two_qubit(q: AppendedQutrit) -> DensityMatrix:
    block = embed_qutrit(appended_qutrit_density(q))
    rho = _U.conj().T @ block @ _U
    return DensityMatrix(0.5 * (rho + rho.conj().T))


# -------------------------------------------------------------------------
# (s, t) PARAMETERS
# -------------------------------------------------------------------------
def _require_symmetric(rho: DensityMatrix) -> None:
    if rho.dim != 4:
        raise DimMismatch(f"expected a 4x4 state, got {rho.dim}x{rho.dim}")
    residual = float(np.max(np.abs(_SWAP @ rho.mat @ _SWAP - rho.mat)))
    if residual > TAU_SYM:
        raise NotSymmetricState(f"SWAP rho SWAP - rho residual {residual:.3e}")


def extract_params(rho_ab: DensityMatrix) -> SymmetricTwoQubitParams:
    _require_symmetric(rho_ab)
    s = tuple(float(np.trace(rho_ab.mat @ kron(sig, I2)).real) for sig in PAULIS)
    t = tuple(
        tuple(float(np.trace(rho_ab.mat @ kron(si, sj)).real) for sj in PAULIS)
        for si in PAULIS
    )
    return SymmetricTwoQubitParams(s=s, t=t)


def reconstruct_two_qubit(params: SymmetricTwoQubitParams) -> DensityMatrix:
    rho = I4.copy()
    for i, si in enumerate(PAULIS):
        rho = rho + params.s[i] * (kron(si, I2) + kron(I2, si))
        for j, sj in enumerate(PAULIS):
            rho = rho + params.t[i][j] * kron(si, sj)
    return DensityMatrix(0.25 * rho)


# -------------------------------------------------------------------------
# OBSERVABLES
# -------------------------------------------------------------------------
def transformed_observables() -> Tuple[Observable, Observable]:
    """sigma_1 (+) 0 and sigma_2 (+) 0 carried to the two-qubit space."""
    a1 = 0.5 * (kron(SIGMA_1, SIGMA_1) - kron(SIGMA_2, SIGMA_2))
    a2 = 0.5 * (kron(SIGMA_1, SIGMA_2) + kron(SIGMA_2, SIGMA_1))
    for local, sigma in ((a1, SIGMA_1), (a2, SIGMA_2)):
        mapped = _U.conj().T @ embed(sigma, 4) @ _U
        residual = float(np.max(np.abs(mapped - local)))
        if residual > 1e-15:
            raise InvariantViolation(f"transformed observable off by {residual:.3e}")
    return Observable(a1), Observable(a2)


def frame_coordinates(r, a: PauliDirection, b: PauliDirection) -> np.ndarray:
    """Components of r along (a, b, a x b)."""
    a.require_orthogonal(b)
    av, bv = a.as_array(), b.as_array()
    rv = np.asarray(r, dtype=float)
    return np.array([av @ rv, bv @ rv, np.cross(av, bv) @ rv])


def two_qubit_uncertainty(
    q: AppendedQutrit,
    a: Optional[PauliDirection] = None,
    b: Optional[PauliDirection] = None,
) -> UncertaintyReport:
    """Variances of the transformed pair in rho_AB; a frame (a, b) rotates r instead of the observables."""
    if a is not None and b is not None:
        q = AppendedQutrit.of(q.omega, frame_coordinates(q.r.as_array(), a, b))
    return sum_uncertainty(qutrit_to_two_qubit(q), transformed_observables())


def kappa_omega_of(q: AppendedQutrit) -> KappaOmega:
    return KappaOmega(omega=q.omega, kappa=math.hypot(q.r.r1, q.r.r2))


def uncertainty_sum_kappa(ko: KappaOmega) -> float:
    return 2.0 * ko.omega - ko.omega ** 2 * ko.kappa ** 2


class SymmetricMapAgent(BaseAgent):
    """
    Handles:
    - rho_ab       {omega, r}
    - params       {omega, r} or {rho}
    - uncertainty  {omega, r, a?, b?}
    - sum_kappa    {omega, kappa}
    - observables  {}
    """

    def __init__(self, agent_id: str = "symmetric_map_agent"):
        super().__init__(
            agent_id=agent_id,
            capabilities=["rho_ab", "params", "uncertainty", "sum_kappa", "observables"],
        )

    # -------------------------------------------------------------------------
    # MESSAGE ROUTER
    # -------------------------------------------------------------------------
    def process_message(self, message: Dict[str, Any]) -> Dict[str, Any]:
        action = message.get("action")
        data = message.get("data", {})

        if not self.check_capability(action):
            return self.unknown_action(action)

        if action == "observables":
            a1, a2 = transformed_observables()
            return self.success(A1=encode_matrix(a1.mat), A2=encode_matrix(a2.mat))

        if action == "sum_kappa":
            ko = KappaOmega(omega=float(data["omega"]), kappa=float(data["kappa"]))
            return self.success(sum=uncertainty_sum_kappa(ko))

        if action == "params" and "rho" in data:
            params = extract_params(DensityMatrix(read_matrix(data["rho"])))
            return self.success(params=params.model_dump())

        q = AppendedQutrit.of(data["omega"], data["r"])

        if action == "rho_ab":
            return self.success(rho_ab=encode_matrix(qutrit_to_two_qubit(q).mat))

        if action == "params":
            return self.success(params=extract_params(qutrit_to_two_qubit(q)).model_dump())

        a = PauliDirection.from_array(data["a"]) if data.get("a") is not None else None
        b = PauliDirection.from_array(data["b"]) if data.get("b") is not None else None
        report = two_qubit_uncertainty(q, a, b)
        return self.success(
            report=report.model_dump(),
            kappa_omega=kappa_omega_of(q).model_dump(),
        )
