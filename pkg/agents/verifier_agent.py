# verifier_agent.py
"""
Invariant suites run by `main.py verify`.

Each suite draws from its own generator, seeded by (seed, suite index), so
reports are reproducible suite by suite. Every check records the worst
residual it met; a suite passes only if all its checks do.
"""

import math
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from pydantic import BaseModel

from agents.atomic_agent import (
    PRESETS,
    atomic_sum_formula,
    atomic_uncertainty_sum,
    min_uncertainty_sum,
    preset_min_sums,
    subspace_bloch,
    subspace_observable,
    subspace_projector,
)
from agents.base_agent import BaseAgent
from agents.entanglement_agent import (
    SEPARABLE_FLOOR,
    concurrence_general,
    concurrence_triple,
    mixture_uncertainty_sum,
    separable_bound_oracle,
    separable_component_variances,
    separable_state,
    separable_uncertainty_sum,
)
from agents.qubit_agent import bloch_to_density, pauli_observable, qubit_variance_pair, robertson_check, rotation_matrix
from agents.qutrit_agent import (
    appended_qutrit_density,
    boundary_band_min,
    embedded_observable,
    qutrit_boundary_min,
    qutrit_boundary_oracle,
    qutrit_variance_pair,
)
from agents.region_sampler_agent import contour_concurrence, contour_sum, sample_qubit_region, sample_qutrit_region
from agents.symmetric_map_agent import (
    coupled_to_uncoupled,
    coupling_unitary,
    embed_qutrit,
    extract_params,
    kappa_omega_of,
    qutrit_to_two_qubit,
    reconstruct_two_qubit,
    swap_operator,
    transformed_observables,
    two_qubit_uncertainty,
    uncertainty_sum_kappa,
)
from core.config import UncertConfig
from core.errors import OutOfRange
from core.models import (
    PAIR_12,
    PAIR_13,
    PAIR_23,
    X_HAT,
    Y_HAT,
    AppendedQutrit,
    BlochVector,
    KappaOmega,
    PauliDirection,
    SeparableEnsemble,
)
from core.quantum import (
    PAULIS,
    DensityMatrix,
    commutator,
    hermitian_eigenvalues,
    kron,
    make_observable,
    purity,
    random_density,
    sample_bloch_vectors,
    sum_uncertainty,
)

SUITES = ("core", "regions", "atomic", "map", "entanglement")


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class SuiteReport(BaseModel):
    suite: str
    passed: int
    failed: int
    checks: List[CheckResult]

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _within(name: str, residual: float, tol: float) -> CheckResult:
    passed = bool(np.isfinite(residual)) and residual <= tol
    return CheckResult(name=name, passed=passed, detail=f"max residual {residual:.3e} (tolerance {tol:g})")


def _holds(name: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(name=name, passed=bool(passed), detail=detail)


def _random_frame(rng: np.random.Generator):
    """Rotated copy of (x, y)."""
    rot = rotation_matrix(sample_bloch_vectors(1, "pure-uniform", rng)[0], float(rng.uniform(0.0, 2.0 * math.pi)))
    return PauliDirection.from_array(rot[:, 0]), PauliDirection.from_array(rot[:, 1])


def _random_qutrit(rng: np.random.Generator) -> AppendedQutrit:
    return AppendedQutrit.of(float(rng.random()), sample_bloch_vectors(1, "pure-uniform", rng)[0])


def _random_ensemble(rng: np.random.Generator, max_terms: int = 8) -> SeparableEnsemble:
    k = int(rng.integers(1, max_terms + 1))
    weights = rng.dirichlet(np.ones(k))
    weights /= weights.sum()
    return SeparableEnsemble.of(weights, sample_bloch_vectors(k, "pure-uniform", rng))


# -------------------------------------------------------------------------
# SUITES
# -------------------------------------------------------------------------
def core_suite(rng: np.random.Generator, draws: int, **_: Any) -> List[CheckResult]:
    checks = []

    worst = 0.0
    for _ in range(min(draws, 1000)):
        a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
        worst = max(worst, float(np.max(np.abs(kron(a, b) @ kron(c, d) - kron(a @ c, b @ d)))))
    checks.append(_within("kron mixed product", worst, 1e-12))

    paulis = [make_observable(s) for s in PAULIS]
    algebra = max(
        float(np.max(np.abs(commutator(paulis[k], paulis[(k + 1) % 3]) - 2j * paulis[(k + 2) % 3].mat)))
        for k in range(3)
    )
    checks.append(_within("Pauli commutators", algebra, 1e-15))

    trace_gap, lowest = 0.0, 0.0
    for _ in range(min(draws, 1000)):
        values = hermitian_eigenvalues(random_density(int(rng.integers(2, 5)), rng))
        trace_gap = max(trace_gap, abs(sum(values) - 1.0))
        lowest = min(lowest, values[0])
    checks.append(_within("eigenvalues sum to the trace", trace_gap, 1e-12))
    checks.append(_within("random states are positive", -lowest, 1e-10))

    worst, robertson_gap, purity_gap = 0.0, 0.0, 0.0
    for _ in range(draws):
        r = BlochVector.from_array(sample_bloch_vectors(1, "ball-uniform", rng)[0])
        purity_gap = max(purity_gap, abs(purity(bloch_to_density(r)) - 0.5 * (1.0 + r.norm ** 2)))
        a, b = _random_frame(rng)
        formula = qubit_variance_pair(r, a, b).variances
        traced = sum_uncertainty(bloch_to_density(r), [pauli_observable(a), pauli_observable(b)]).variances
        worst = max(worst, max(abs(x - y) for x, y in zip(formula, traced)))
        lhs, rhs = robertson_check(r, a, b)
        robertson_gap = max(robertson_gap, rhs - lhs)
    checks.append(_within("qubit variance formula matches trace", worst, 1e-10))
    checks.append(_within("Robertson product bound", robertson_gap, 1e-12))
    checks.append(_within("qubit purity is (1 + |r|^2) / 2", purity_gap, 1e-12))

    r = sample_bloch_vectors(10 * draws, "ball-uniform", rng)
    sums = 2.0 - r[:, 0] ** 2 - r[:, 1] ** 2
    checks.append(_within("qubit sum never below 1", 1.0 - float(sums.min()), 1e-10))
    saturated = qubit_variance_pair(BlochVector.from_array(X_HAT.as_array()), X_HAT, Y_HAT).sum_of_variances
    checks.append(_within("qubit sum reaches 1 at r = a", abs(saturated - 1.0), 1e-12))
    return checks


def regions_suite(rng: np.random.Generator, draws: int, fib_n: Optional[int] = None, **_: Any) -> List[CheckResult]:
    checks = []

    points = sample_qubit_region(draws, int(rng.integers(2 ** 32)))
    gap = max((1.0 - (p.d1 ** 2 + p.d2 ** 2) for p in points), default=0.0)
    checks.append(_within("qubit samples outside the quarter disc", gap, 1e-10))

    points = sample_qutrit_region(draws, int(rng.integers(2 ** 32)))
    gap = max(
        (max(qutrit_boundary_min(p.d1) - p.d2, qutrit_boundary_min(p.d2) - p.d1) for p in points),
        default=0.0,
    )
    checks.append(_within("qutrit samples above the boundary", gap, 1e-6))
    checks.append(_holds("qutrit origin sampled", any(p.d1 == 0.0 and p.d2 == 0.0 for p in points)))

    worst, dominance = 0.0, True
    for _ in range(draws):
        q = _random_qutrit(rng)
        a, b = _random_frame(rng)
        report = qutrit_variance_pair(q, a, b)
        traced = sum_uncertainty(appended_qutrit_density(q), [embedded_observable(a), embedded_observable(b)])
        worst = max(worst, max(abs(x - y) for x, y in zip(report.variances, traced.variances)))
        d1, d2 = report.std_devs
        if report.sum_of_variances < 1.0 - 1e-10 and d1 ** 2 + d2 ** 2 >= 1.0 - 1e-10:
            dominance = False
    checks.append(_within("qutrit variance formula matches trace", worst, 1e-10))
    checks.append(_holds("qutrit sums below 1 fall outside the qubit region", dominance))

    origin = qutrit_variance_pair(AppendedQutrit.of(0.0, (0.0, 0.0, 1.0)), X_HAT, Y_HAT)
    checks.append(_holds("origin attained at omega = 0", origin.variances == [0.0, 0.0]))

    grid = np.linspace(0.0, 1.0, 101)
    found = qutrit_boundary_oracle(grid, fib_n=fib_n)
    expected = np.array([boundary_band_min(float(d)) for d in grid])
    checks.append(_within("brute-force boundary matches the analytic curve", float(np.max(np.abs(found - expected))), 0.01))
    return checks


def atomic_suite(rng: np.random.Generator, draws: int, **_: Any) -> List[CheckResult]:
    checks = []

    lam, vee, xi = (preset_min_sums(PRESETS[name]) for name in ("lambda", "vee", "xi"))
    reproduced = [
        abs(lam["12"] - 0.75), abs(lam["13"] - 0.75),
        abs(vee["13"] - 0.84), abs(vee["23"] - 0.96),
        abs(xi["12"][0] - 0.75), abs(xi["12"][1] - 8.0 / 9.0),
        abs(xi["23"][0] - 8.0 / 9.0), abs(xi["23"][1] - 1.0),
    ]
    checks.append(_within("preset minimum sums", max(reproduced), 1e-12))

    pairs = (PAIR_12, PAIR_13, PAIR_23)
    worst = 0.0
    for _ in range(min(draws, 1000)):
        pair = pairs[int(rng.integers(3))]
        a = PauliDirection.from_array(sample_bloch_vectors(1, "pure-uniform", rng)[0])
        square = subspace_observable(pair, a).mat @ subspace_observable(pair, a).mat
        worst = max(worst, float(np.max(np.abs(square - subspace_projector(pair)))))
    checks.append(_within("(sigma^(ij).a)^2 is the subspace projector", worst, 1e-12))

    worst, positivity = 0.0, 0.0
    for _ in range(draws):
        rho = random_density(3, rng, rank=int(rng.integers(1, 4)))
        pair = pairs[int(rng.integers(3))]
        a, b = _random_frame(rng)
        traced = atomic_uncertainty_sum(rho, pair, a, b).sum_of_variances
        worst = max(worst, abs(traced - atomic_sum_formula(rho, pair, a, b)))
        populated = float((rho.mat[pair.i - 1, pair.i - 1] + rho.mat[pair.j - 1, pair.j - 1]).real)
        positivity = max(positivity, subspace_bloch(rho, pair).norm - populated)
    checks.append(_within("subspace sum formula matches trace", worst, 1e-10))
    checks.append(_within("|n| bounded by the subspace population", positivity, 1e-10))

    below, attained = 0.0, 0.0
    for _ in range(draws):
        pops = rng.dirichlet(np.ones(3))
        pair = pairs[int(rng.integers(3))]
        i, j = pair.i - 1, pair.j - 1
        floor = min_uncertainty_sum(pops[i], pops[j])
        for fraction in (float(rng.random()), 1.0):
            rho = np.diag(pops).astype(complex)
            coherence = fraction * math.sqrt(pops[i] * pops[j]) * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
            rho[i, j], rho[j, i] = coherence, np.conj(coherence)
            total = atomic_uncertainty_sum(DensityMatrix(rho), pair).sum_of_variances
            below = max(below, floor - total)
            if fraction == 1.0:
                attained = max(attained, abs(total - floor))
    checks.append(_within("no coherence beats the minimum", below, 1e-10))
    checks.append(_within("minimum attained at maximal coherence", attained, 1e-10))

    s = np.linspace(0.0, 1.0, 1001)
    values = np.array([min_uncertainty_sum(x, 0.0) for x in s])
    increasing = bool(np.all(np.diff(values) > 0.0))
    checks.append(_holds("minimum increases with the subspace population", increasing and bool(np.all(values[:-1] < 1.0))))
    return checks


def map_suite(rng: np.random.Generator, draws: int, **_: Any) -> List[CheckResult]:
    u = coupling_unitary()
    checks = [_within("coupling unitary", float(np.max(np.abs(u.conj().T @ u - np.eye(4)))), 1e-15)]

    exchange = [1.0, 1.0, 1.0, -1.0]
    parity = max(
        float(np.max(np.abs(swap_operator() @ coupled_to_uncoupled(e) - sign * coupled_to_uncoupled(e))))
        for e, sign in zip(np.eye(4), exchange)
    )
    checks.append(_within("triplet symmetric, singlet antisymmetric", parity, 1e-15))

    a1, a2 = transformed_observables()
    qutrit_obs = (embedded_observable(X_HAT), embedded_observable(Y_HAT))
    swap = swap_operator()
    residuals = dict(
        round_trip=0.0, params=0.0, spectrum=0.0, purity=0.0, observables=0.0, swap=0.0, variances=0.0, kappa=0.0,
    )

    for _ in range(draws):
        q = _random_qutrit(rng)
        w, (r1, r2, r3) = q.omega, q.r.as_array()
        rho3 = appended_qutrit_density(q)
        rho_ab = qutrit_to_two_qubit(q)

        params = extract_params(rho_ab)
        rebuilt = reconstruct_two_qubit(params)
        residuals["round_trip"] = max(residuals["round_trip"], float(np.max(np.abs(rebuilt.mat - rho_ab.mat))))

        expected_t = np.array([
            [(1 - w) + w * r1, w * r2, 0.0],
            [w * r2, (1 - w) - w * r1, 0.0],
            [0.0, 0.0, 2 * w - 1],
        ])
        param_gap = max(
            float(np.max(np.abs(params.t_matrix() - expected_t))),
            float(np.max(np.abs(params.s_vector() - np.array([0.0, 0.0, w * r3])))),
        )
        residuals["params"] = max(residuals["params"], param_gap)

        spectrum = np.abs(np.linalg.eigvalsh(embed_qutrit(rho3)) - np.linalg.eigvalsh(rho_ab.mat))
        residuals["spectrum"] = max(residuals["spectrum"], float(spectrum.max()))
        residuals["purity"] = max(residuals["purity"], abs(purity(rho_ab) - purity(rho3)))

        for big, small in zip((a1, a2), qutrit_obs):
            for power in (1, 2):
                lhs = np.trace(rho_ab.mat @ np.linalg.matrix_power(big.mat, power))
                rhs = np.trace(rho3.mat @ np.linalg.matrix_power(small.mat, power))
                residuals["observables"] = max(residuals["observables"], abs(lhs - rhs))

        residuals["swap"] = max(residuals["swap"], float(np.max(np.abs(swap @ rho_ab.mat @ swap - rho_ab.mat))))

        two = two_qubit_uncertainty(q)
        one = qutrit_variance_pair(q, X_HAT, Y_HAT)
        residuals["variances"] = max(
            residuals["variances"], max(abs(x - y) for x, y in zip(two.variances, one.variances))
        )
        residuals["kappa"] = max(
            residuals["kappa"], abs(uncertainty_sum_kappa(kappa_omega_of(q)) - two.sum_of_variances)
        )

    names = {
        "round_trip": "(s, t) round trip",
        "params": "(s, t) closed form",
        "spectrum": "spectrum preserved",
        "purity": "purity preserved",
        "observables": "transformed observables match moments",
        "swap": "exchange symmetry",
        "variances": "two-qubit variances match qutrit",
        "kappa": "sum in (omega, kappa) form",
    }
    checks.extend(_within(names[key], residuals[key], 1e-12) for key in names)
    return checks


def entanglement_suite(rng: np.random.Generator, draws: int, grid_n: int = 200, **_: Any) -> List[CheckResult]:
    checks = []

    axis = np.linspace(0.0, 1.0, grid_n)
    worst = 0.0
    for omega in axis:
        for kappa in axis:
            phi = rng.uniform(0.0, 2.0 * math.pi)
            r = (kappa * math.cos(phi), kappa * math.sin(phi), math.sqrt(max(0.0, 1.0 - kappa * kappa)))
            general, x_state, closed = concurrence_triple(AppendedQutrit.of(float(omega), r))
            worst = max(worst, abs(general.value - x_state), abs(general.value - closed), abs(x_state - closed))
    checks.append(_within("three concurrence routes agree", worst, 1e-8))

    highest = 0.0
    for _ in range(min(draws, 1000)):
        highest = max(highest, concurrence_general(separable_state(_random_ensemble(rng))).value)
    checks.append(_within("separable states have zero concurrence", highest, 1e-8))

    below, mixture_gap = 0.0, 0.0
    for _ in range(draws):
        ensemble = _random_ensemble(rng)
        weighted = separable_uncertainty_sum(ensemble)
        below = max(below, SEPARABLE_FLOOR - weighted)
        mixture_gap = max(mixture_gap, weighted - mixture_uncertainty_sum(ensemble))
    checks.append(_within("separable sum never below 3/4", below, 1e-12))
    checks.append(_within("mixture variance dominates the weighted sum", mixture_gap, 1e-10))

    worst = 0.0
    a1, a2 = transformed_observables()
    for s_hat in sample_bloch_vectors(min(draws, 1000), "pure-uniform", rng):
        single = bloch_to_density(BlochVector.from_array(s_hat)).mat
        traced = sum_uncertainty(DensityMatrix(np.kron(single, single)), [a1, a2]).variances
        worst = max(worst, max(abs(x - y) for x, y in zip(separable_component_variances(s_hat), traced)))
    checks.append(_within("product-state variance formula matches trace", worst, 1e-10))

    oracle = max(abs(separable_bound_oracle(n) - SEPARABLE_FLOOR) for n in (100, 101, 100000))
    checks.append(_within("separable bound oracle", oracle, 1e-9))
    checks.append(_within("restricted separable bound", abs(separable_bound_oracle(1001, (0.5, 1.0)) - 1.109375), 1e-12))

    sums, concurrences = contour_sum(grid_n), contour_concurrence(grid_n)
    implied, witnessed = True, False
    for (_, _, total), (_, _, c) in zip(sums.rows(), concurrences.rows()):
        if total < SEPARABLE_FLOOR and not c > 0.0:
            implied = False
        if c > 0.0 and total >= SEPARABLE_FLOOR:
            witnessed = True
    checks.append(_holds("sum below 3/4 implies entanglement", implied))
    checks.append(_holds("entangled states with sum of at least 3/4 exist", witnessed))

    edge = max(
        max(abs(concurrence_triple(AppendedQutrit.of(0.0, (k, 0.0, math.sqrt(1.0 - k * k))))[2] - 1.0),
            abs(uncertainty_sum_kappa(KappaOmega(omega=0.0, kappa=k))))
        for k in axis
    )
    checks.append(_within("omega = 0 is maximally entangled with zero sum", edge, 1e-12))
    return checks


SUITE_RUNNERS: Dict[str, Callable[..., List[CheckResult]]] = {
    "core": core_suite,
    "regions": regions_suite,
    "atomic": atomic_suite,
    "map": map_suite,
    "entanglement": entanglement_suite,
}


def run_suite(name: str, seed: int, draws: Optional[int] = None, **options: Any) -> SuiteReport:
    if name not in SUITE_RUNNERS:
        raise OutOfRange(f"unknown suite {name!r}; expected one of {SUITES}")
    rng = np.random.default_rng([seed, SUITES.index(name)])
    checks = SUITE_RUNNERS[name](rng, draws or UncertConfig.verify_draws(), **options)
    failed = sum(not c.passed for c in checks)
    return SuiteReport(suite=name, passed=len(checks) - failed, failed=failed, checks=checks)


class VerifierAgent(BaseAgent):
    """
    Handles:
    - run  {suite, seed, draws?, grid_n?, fib_n?}
    """

    def __init__(self, agent_id: str = "verifier_agent"):
        super().__init__(agent_id=agent_id, capabilities=["run"])

    # -------------------------------------------------------------------------
    # MESSAGE ROUTER
    # -------------------------------------------------------------------------
    def process_message(self, message: Dict[str, Any]) -> Dict[str, Any]:
        action = message.get("action")
        data = message.get("data", {})

        if not self.check_capability(action):
            return self.unknown_action(action)

        suite = data.get("suite", "all")
        names = SUITES if suite == "all" else (suite,)
        options = {k: data[k] for k in ("grid_n", "fib_n") if data.get(k) is not None}

        reports = []
        for name in names:
            report = run_suite(name, int(data["seed"]), data.get("draws"), **options)
            for check in report.checks:
                if not check.passed:
                    self.log.warning("%s: %s failed, %s", name, check.name, check.detail)
            reports.append(report)

        return self.success(
            ok=all(r.ok for r in reports),
            reports=[r.model_dump() for r in reports],
        )
