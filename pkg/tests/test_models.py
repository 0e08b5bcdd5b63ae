import pytest

from core.errors import (
    BlochNormExceeded,
    InvalidEnsemble,
    InvalidOmega,
    InvalidPair,
    InvalidPopulations,
    InvalidQutrit,
    NotOrthogonal,
    NotSymmetricState,
    NotUnitBloch,
    NotUnitVector,
    OutOfRange,
)
from core.models import (
    X_HAT,
    AppendedQutrit,
    BlochVector,
    ContourGrid,
    KappaOmega,
    PauliDirection,
    RegionPoint,
    SeparableEnsemble,
    SubspacePair,
    SymmetricTwoQubitParams,
    validate_populations,
)


def test_bloch_vector_norm_limit():
    assert BlochVector.from_array((0.6, 0.0, 0.8)).norm == pytest.approx(1.0)
    with pytest.raises(BlochNormExceeded):
        BlochVector.from_array((0.8, 0.8, 0.0))


def test_pauli_direction_must_be_unit():
    with pytest.raises(NotUnitVector):
        PauliDirection.from_array((1.0, 1.0, 0.0))


@pytest.mark.parametrize("bad", [float("nan"), float("inf")])
def test_vectors_reject_non_finite_components(bad):
    with pytest.raises(BlochNormExceeded):
        BlochVector.from_array((bad, 0.0, 0.0))
    with pytest.raises(NotUnitVector):
        PauliDirection.from_array((bad, 0.0, 0.0))
    with pytest.raises(InvalidOmega):
        AppendedQutrit.of(bad, (0, 0, 1))


def test_orthogonality_check():
    with pytest.raises(NotOrthogonal):
        X_HAT.require_orthogonal(PauliDirection.from_array((0.6, 0.8, 0.0)))


def test_appended_qutrit_errors_share_a_base():
    with pytest.raises(InvalidOmega):
        AppendedQutrit.of(1.5, (0, 0, 1))
    with pytest.raises(NotUnitBloch):
        AppendedQutrit.of(0.5, (0.0, 0.0, 0.5))
    with pytest.raises(InvalidQutrit):
        AppendedQutrit.of(-0.1, (0, 0, 1))


def test_subspace_pair_parsing():
    assert SubspacePair.parse("13") == SubspacePair(i=1, j=3)
    assert SubspacePair.parse(23).label == "23"
    for bad in ("21", "11", "14", "x"):
        with pytest.raises(InvalidPair):
            SubspacePair.parse(bad)


def test_validate_populations():
    assert validate_populations((0.2, 0.4, 0.4)) == (0.2, 0.4, 0.4)
    with pytest.raises(InvalidPopulations):
        validate_populations((0.5, 0.6, 0.0))
    with pytest.raises(InvalidPopulations):
        validate_populations((1.2, -0.2, 0.0))
    for bad in (float("nan"), float("inf")):
        with pytest.raises(InvalidPopulations):
            validate_populations((bad, 0.5, 0.5))


def test_kappa_omega_clips_round_off_only():
    assert KappaOmega(omega=1.0 + 1e-13, kappa=-1e-13) == KappaOmega(omega=1.0, kappa=0.0)
    with pytest.raises(OutOfRange):
        KappaOmega(omega=1.1, kappa=0.5)


def test_params_must_be_symmetric():
    t = ((1.0, 0.2, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, -1.0))
    with pytest.raises(NotSymmetricState):
        SymmetricTwoQubitParams(s=(0.0, 0.0, 0.0), t=t)


def test_separable_ensemble_validation():
    assert len(SeparableEnsemble.of([0.5, 0.5], [(1, 0, 0), (0, 0, 1)]).terms) == 2
    with pytest.raises(InvalidEnsemble):
        SeparableEnsemble.of([], [])
    with pytest.raises(InvalidEnsemble):
        SeparableEnsemble.of([0.5, 0.4], [(1, 0, 0), (0, 0, 1)])
    with pytest.raises(InvalidEnsemble):
        SeparableEnsemble.of([1.0], [(0.5, 0, 0)])
    with pytest.raises(InvalidEnsemble):
        SeparableEnsemble.of([1.5, -0.5], [(1, 0, 0), (0, 0, 1)])


def test_region_point_range():
    assert RegionPoint(d1=0.0, d2=1.0).tag == "interior"
    with pytest.raises(OutOfRange):
        RegionPoint(d1=1.2, d2=0.0)


def test_contour_grid_shape_and_rows():
    grid = ContourGrid(
        x_name="omega", y_name="kappa", z_name="sum",
        x_vals=[0.0, 1.0], y_vals=[0.0, 0.5, 1.0],
        z=[[0.0, 2.0], [0.0, 1.75], [0.0, None]],
    )
    assert grid.at(1, 1) == 1.75
    assert list(grid.rows())[:3] == [(0.0, 0.0, 0.0), (1.0, 0.0, 2.0), (0.0, 0.5, 0.0)]
    with pytest.raises(OutOfRange):
        ContourGrid(x_name="x", y_name="y", z_name="z", x_vals=[0.0], y_vals=[0.0], z=[[0.0, 1.0]])
