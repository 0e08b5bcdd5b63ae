import pytest

from agents.verifier_agent import SUITES, run_suite
from core.errors import OutOfRange


def _failures(report):
    return [f"{c.name}: {c.detail}" for c in report.checks if not c.passed]


@pytest.mark.parametrize(
    "suite, options",
    [
        ("core", {}),
        ("regions", {}),
        ("atomic", {}),
        ("map", {}),
        ("entanglement", {"grid_n": 21}),
    ],
)
def test_suites_pass(suite, options):
    report = run_suite(suite, seed=1, draws=200, **options)
    assert report.ok, _failures(report)
    assert report.passed == len(report.checks)


def test_suites_are_reproducible():
    assert run_suite("atomic", seed=5, draws=50) == run_suite("atomic", seed=5, draws=50)


def test_unknown_suite():
    with pytest.raises(OutOfRange):
        run_suite("topology", seed=0)


def test_agent_runs_every_suite(orc):
    response = orc.send("verifier_agent", "run", {"suite": "all", "seed": 2, "draws": 50, "grid_n": 11})
    assert response["ok"] is True
    assert [r["suite"] for r in response["reports"]] == list(SUITES)
