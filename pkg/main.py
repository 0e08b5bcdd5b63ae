"""
Command-line entry point.

    python main.py region   --system qubit --samples 1000 --seed 7
    python main.py atomic   --preset lambda --pair 12
    python main.py map      --omega 0.5 --r 1,0,0 --emit uncertainty
    python main.py contour  --quantity sum --grid 101 --out sum.csv
    python main.py verify   --suite all --seed 1

Exit codes: 0 ok, 1 failed invariant, 2 usage or rejected input, 3 I/O failure.
Payloads go to stdout (or --out); diagnostics go to stderr.
"""

import argparse
import logging
import math
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from agents.atomic_agent import AtomicAgent
from agents.entanglement_agent import EntanglementAgent
from agents.qubit_agent import QubitAgent
from agents.qutrit_agent import QutritAgent
from agents.region_sampler_agent import CONTOUR_QUANTITIES, RegionSamplerAgent
from agents.symmetric_map_agent import SymmetricMapAgent
from agents.verifier_agent import SUITES, VerifierAgent
from core.config import UncertConfig
from core.errors import NotUnitVector, QuantumError
from core.export import OutputEnvelope, grid_csv, region_csv, render_json, write_atomic
from core.models import ContourGrid, RegionPoint
from core.orchestrator import Orchestrator
from core.tolerances import TAU_CLI_UNIT

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2
EXIT_IO = 3

log = logging.getLogger("cli")


# -------------------------------------------------------
# SYSTEM INITIALIZATION
# -------------------------------------------------------
def build_orchestrator() -> Orchestrator:
    orc = Orchestrator()
    agents = [
        QubitAgent("qubit_agent"),
        QutritAgent("qutrit_agent"),
        AtomicAgent("atomic_agent"),
        SymmetricMapAgent("symmetric_map_agent"),
        EntanglementAgent("entanglement_agent"),
        RegionSamplerAgent("region_sampler_agent"),
        VerifierAgent("verifier_agent"),
    ]
    for agent in agents:
        orc.register_agent(agent.agent_id, agent)
    return orc


class CommandFailed(Exception):
    """An agent answered with an error envelope."""

    def __init__(self, response: Dict[str, Any]):
        super().__init__(f"{response.get('error')}: {response.get('message')}")
        self.response = response


def _batch(orc: Orchestrator, requests: Sequence[Tuple[str, str, Dict[str, Any]]]) -> List[Dict[str, Any]]:
    """Queue every request, drain the queue and fail on the first error envelope."""
    for to, action, data in requests:
        orc.submit(to, action, data)
    responses = orc.drain()
    for response in responses:
        if response.get("status") != "success":
            raise CommandFailed(response)
    return responses


def _request(orc: Orchestrator, to: str, action: str, data: Dict[str, Any]) -> Dict[str, Any]:
    return _batch(orc, [(to, action, data)])[0]


# -------------------------------------------------------
# ARGUMENT TYPES
# -------------------------------------------------------
def triple(text: str) -> List[float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number in {text!r}") from None


def frame(text: str) -> List[List[float]]:
    halves = text.split(":")
    if len(halves) != 2:
        raise argparse.ArgumentTypeError(f"expected a1,a2,a3:b1,b2,b3, got {text!r}")
    return [triple(h) for h in halves]


def unit(vector: Sequence[float], name: str) -> List[float]:
    """Accept a typed unit vector within the command-line tolerance and renormalize it."""
    if not all(math.isfinite(v) for v in vector):
        raise NotUnitVector(f"--{name} has non-finite entries {list(vector)!r}")
    norm = math.hypot(*vector)
    if abs(norm - 1.0) > TAU_CLI_UNIT:
        raise NotUnitVector(f"--{name} has norm {norm!r}; expected 1 within {TAU_CLI_UNIT}")
    return [v / norm for v in vector]


def _inputs(args: argparse.Namespace) -> Dict[str, Any]:
    return {k: v for k, v in vars(args).items() if k != "func"}


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "out", None):
        write_atomic(args.out, text)
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)


def _envelope(args: argparse.Namespace, command: str, results: Any) -> str:
    return render_json(OutputEnvelope(command=command, inputs=_inputs(args), results=results))


# -------------------------------------------------------
# COMMANDS
# -------------------------------------------------------
def cmd_region(orc: Orchestrator, args: argparse.Namespace) -> int:
    if args.samples < 1:
        print(f"[cli] --samples must be at least 1, got {args.samples}", file=sys.stderr)
        return EXIT_USAGE
    response = _request(orc, "region_sampler_agent", "region", {
        "system": args.system,
        "n": args.samples,
        "seed": args.seed,
        "boundary": args.boundary,
    })
    if args.format == "csv":
        _emit(args, region_csv(RegionPoint.model_validate(p) for p in response["points"]))
    else:
        _emit(args, _envelope(args, "region", {"points": response["points"]}))
    return EXIT_OK


def cmd_atomic(orc: Orchestrator, args: argparse.Namespace) -> int:
    response = _request(orc, "atomic_agent", "min_sum", {
        "preset": args.preset,
        "populations": args.pop,
        "pair": args.pair,
    })
    results: Dict[str, Any] = {"source": response["source"], "min_sums": response["min_sums"]}
    if args.pair:
        results["min_sum"] = response["min_sums"][args.pair]
    _emit(args, _envelope(args, "atomic", results))
    return EXIT_OK


def cmd_map(orc: Orchestrator, args: argparse.Namespace) -> int:
    data: Dict[str, Any] = {"omega": args.omega, "r": unit(args.r, "r")}
    if args.emit == "concurrence":
        response = _request(orc, "entanglement_agent", "concurrence", data)
        results = {
            "concurrence": response["general"]["value"],
            "general": response["general"],
            "x_state": response["x_state"],
            "kappa_omega": response["kappa_omega"],
        }
    elif args.emit == "uncertainty":
        if args.frame:
            data["a"], data["b"] = unit(args.frame[0], "frame"), unit(args.frame[1], "frame")
        response = _request(orc, "symmetric_map_agent", "uncertainty", data)
        results = {"report": response["report"], "kappa_omega": response["kappa_omega"]}
    elif args.emit == "params":
        results = {"params": _request(orc, "symmetric_map_agent", "params", data)["params"]}
    else:
        results = {"rho_ab": _request(orc, "symmetric_map_agent", "rho_ab", data)["rho_ab"]}
    _emit(args, _envelope(args, "map", results))
    return EXIT_OK


def cmd_contour(orc: Orchestrator, args: argparse.Namespace) -> int:
    if args.grid < 2:
        print(f"[cli] --grid must be at least 2, got {args.grid}", file=sys.stderr)
        return EXIT_USAGE
    response = _request(orc, "region_sampler_agent", "contour", {"quantity": args.quantity, "grid_n": args.grid})
    grid = ContourGrid.model_validate(response["grid"])
    if args.format == "csv":
        _emit(args, grid_csv(grid))
    else:
        _emit(args, _envelope(args, "contour", grid.model_dump()))
    return EXIT_OK


def cmd_verify(orc: Orchestrator, args: argparse.Namespace) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    responses = _batch(orc, [
        ("verifier_agent", "run", {"suite": name, "seed": args.seed, "draws": args.draws, "grid_n": args.grid})
        for name in names
    ])
    reports = [report for response in responses for report in response["reports"]]
    ok = all(response["ok"] for response in responses)
    for report in reports:
        print(f"[verify] {report['suite']}: {report['passed']} passed, {report['failed']} failed", file=sys.stderr)
    _emit(args, _envelope(args, "verify", {"ok": ok, "reports": reports}))
    return EXIT_OK if ok else EXIT_INVARIANT


# -------------------------------------------------------
# PARSER
# -------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uncert",
        description="Sum uncertainty relations for qubits, qutrits and symmetric two-qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def seeded(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=None, help="default: UNCERT_SEED or 0")

    region = sub.add_parser("region", help="sample an uncertainty region")
    region.add_argument("--system", choices=("qubit", "qutrit"), required=True)
    region.add_argument("--samples", type=int, default=1000)
    seeded(region)
    region.add_argument("--boundary", type=int, default=0, metavar="N", help="append N analytic boundary points")
    region.add_argument("--format", choices=("csv", "json"), default="csv")
    region.add_argument("--out")
    region.set_defaults(func=cmd_region)

    atomic = sub.add_parser("atomic", help="minimum uncertainty sum of a three-level atom")
    source = atomic.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=("lambda", "vee", "xi"))
    source.add_argument("--pop", type=triple, metavar="R11,R22,R33")
    atomic.add_argument("--pair", choices=("12", "13", "23"))
    atomic.add_argument("--out")
    atomic.set_defaults(func=cmd_atomic)

    mapping = sub.add_parser("map", help="two-qubit image of an appended-level qutrit")
    mapping.add_argument("--omega", type=float, required=True)
    mapping.add_argument("--r", type=triple, required=True, metavar="R1,R2,R3")
    mapping.add_argument("--emit", choices=("rho_ab", "params", "uncertainty", "concurrence"), default="uncertainty")
    mapping.add_argument("--frame", type=frame, metavar="A1,A2,A3:B1,B2,B3")
    mapping.add_argument("--out")
    mapping.set_defaults(func=cmd_map)

    contour = sub.add_parser("contour", help="scalar field on a grid")
    contour.add_argument("--quantity", choices=CONTOUR_QUANTITIES, required=True)
    contour.add_argument("--grid", type=int, default=101)
    contour.add_argument("--format", choices=("csv", "json"), default="csv")
    contour.add_argument("--out")
    contour.set_defaults(func=cmd_contour)

    verify = sub.add_parser("verify", help="run the invariant suites")
    verify.add_argument("--suite", choices=("all",) + SUITES, default="all")
    seeded(verify)
    verify.add_argument("--draws", type=int, default=None, help="default: UNCERT_VERIFY_DRAWS")
    verify.add_argument("--grid", type=int, default=None, help="(omega, kappa) grid size, default 200")
    verify.add_argument("--out")
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        level=getattr(logging, UncertConfig.log_level().upper(), logging.WARNING),
        format="[%(name)s] %(message)s",
        stream=sys.stderr,
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    orc = build_orchestrator()
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = UncertConfig.seed()
        return args.func(orc, args)
    except CommandFailed as exc:
        print(f"[cli] {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuantumError as exc:
        print(f"[cli] {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"[cli] I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
