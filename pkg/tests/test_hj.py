import numpy as np
import pytest

from horocycle_flow.closed_forms import INFINITY, Foliation
from horocycle_flow.env import Settings
from horocycle_flow.geom import (
    ETA,
    Covector,
    DegenerateParameterError,
    GridSpec,
    HalfPlanePoint,
    OneForm,
)
from horocycle_flow.hj import (
    Check,
    HJFamily,
    HJSolution,
    LevelConditionError,
    SummaryCallback,
    ToleranceCallback,
    adhoc_x,
    check_closed,
    check_exact,
    check_graph_invariance,
    check_level,
    evaluate,
    foliation_to_graph,
    gradient,
    gradient_mismatch,
    graph_deviation,
    kinetic_catalog,
    magnetic_catalog,
    parallel_graph_invariance,
    residual,
    run_checks,
    square_loop,
    stokes_area,
    verify_solution,
)
from horocycle_flow.mechanics import SystemKind

MAGNETIC = SystemKind.MAGNETIC
KINETIC = SystemKind.KINETIC

U0 = HJSolution(HJFamily.MAGNETIC_ARCTAN, 0.0)
CLOSED_GRID = GridSpec(-3.0, 3.0, 0.2, 5.0, 31, 25)
FAST = Settings(invariance_starts=3, invariance_T=2.0, workers=1, grid={"nx": 21, "ny": 21})


def test_evaluate() -> None:
    assert evaluate(U0, HalfPlanePoint(0.0, 1.0)) == 0.0
    assert evaluate(U0, HalfPlanePoint(1.0, 1.0)) == pytest.approx(np.pi / 2)
    assert evaluate(HJSolution(HJFamily.GEODESIC_ARCSINH, 0.0), HalfPlanePoint(0.0, 5.0)) == 0.0
    assert evaluate(U0.with_constant(2.0), HalfPlanePoint(0.0, 1.0)) == 2.0


def test_gradient() -> None:
    assert tuple(gradient(U0, HalfPlanePoint(1.0, 1.0))) == pytest.approx((1.0, -1.0))
    assert tuple(gradient(U0, HalfPlanePoint(0.0, 1.0))) == pytest.approx((2.0, 0.0))
    assert tuple(gradient(HJSolution(HJFamily.GEODESIC_LOG_VERTICAL), HalfPlanePoint(3.0, 4.0))) == (0.0, 0.25)
    assert tuple(gradient(HJSolution(HJFamily.MAGNETIC_ARCTAN, INFINITY), HalfPlanePoint(1.0, 2.0))) == (0.0, 0.0)


def test_solution_validation() -> None:
    with pytest.raises(ValueError):
        HJSolution(HJFamily.MAGNETIC_ARCTAN, 0.0, sign=-1)
    with pytest.raises(ValueError):
        HJSolution(HJFamily.GEODESIC_LOG_VERTICAL, sign=2)
    with pytest.raises(DegenerateParameterError):
        HJSolution(HJFamily.GEODESIC_ARCSINH, INFINITY)

    negated = HJSolution(HJFamily.GEODESIC_ARCSINH, 1.0).negated()
    assert negated.sign == -1
    assert negated.label == "geodesic_arcsinh(a=1.0, sign=-)"
    assert not adhoc_x().is_solution


def test_residual_examples() -> None:
    assert residual(MAGNETIC, U0, HalfPlanePoint(1.0, 1.0)) == pytest.approx(0.0, abs=1e-15)
    assert residual(MAGNETIC, adhoc_x(), HalfPlanePoint(0.0, 1.0)) == pytest.approx(-0.5)
    log_y = HJSolution(HJFamily.GEODESIC_LOG_VERTICAL)
    assert residual(KINETIC, log_y, HalfPlanePoint(2.0, 3.0)) == pytest.approx(0.0, abs=1e-15)


def test_catalog_solves_the_equation() -> None:
    q = GridSpec.standard().points()

    for u in magnetic_catalog() + kinetic_catalog():
        assert np.max(np.abs(residual(u.kind, u, q))) < 1e-12, u.label
        assert np.max(gradient_mismatch(u, q)) < 1e-5, u.label
        assert check_level(u.kind, u, GridSpec.standard()) < 1e-12, u.label


def test_residual_off_the_critical_level() -> None:
    q = HalfPlanePoint(0.3, 0.7)

    assert residual(MAGNETIC, U0, q, k=0.3) == pytest.approx(0.2)
    assert residual(KINETIC, HJSolution(HJFamily.GEODESIC_LOG_VERTICAL), q, k=0.3) == pytest.approx(0.4 / 0.49)


def test_check_closed() -> None:
    assert check_closed(U0.one_form(), CLOSED_GRID) < 1e-6
    assert check_closed(ETA, CLOSED_GRID) == pytest.approx(1.0 / 0.2**2, rel=1e-6)
    for u in magnetic_catalog() + kinetic_catalog():
        assert check_closed(u.one_form(), CLOSED_GRID) < 1e-6, u.label


def test_check_exact() -> None:
    loop = square_loop((0.0, 2.0), 1.0)

    assert abs(check_exact(U0.one_form(), loop)) < 1e-8
    assert check_exact(ETA, loop) == pytest.approx(4.0 / 3.0, rel=1e-10)
    assert stokes_area(loop) == pytest.approx(4.0 / 3.0, rel=1e-9)
    assert stokes_area(loop[::-1]) == pytest.approx(-4.0 / 3.0, rel=1e-9)
    assert abs(check_exact(HJSolution(HJFamily.GEODESIC_ARCSINH, 0.5).one_form(), loop)) < 1e-8


def test_check_exact_on_an_open_polygon() -> None:
    triangle = [(-1.0, 0.5), (2.0, 1.0), (0.0, 3.0)]

    assert abs(check_exact(HJSolution(HJFamily.GEODESIC_LOG_ENDPOINT, 0.0).one_form(), triangle)) < 1e-8
    with pytest.raises(ValueError):
        stokes_area(triangle)


def test_graph_invariance() -> None:
    assert check_graph_invariance(MAGNETIC, U0, HalfPlanePoint(0.0, 1.0), T=5.0) < 1e-6
    constant = HJSolution(HJFamily.CONSTANT)
    assert check_graph_invariance(MAGNETIC, constant, HalfPlanePoint(2.0, 0.3), T=5.0) < 1e-12


def test_perturbed_graph_is_not_invariant() -> None:
    dx = OneForm(lambda q: Covector(1.0 + 0.0 * q.y, 0.0 * q.y), "dx")
    perturbed = U0.one_form() + dx.scaled(0.1)

    assert graph_deviation(MAGNETIC, perturbed, HalfPlanePoint(0.0, 1.0), T=5.0) > 1e-2
    with pytest.raises(LevelConditionError):
        check_graph_invariance(MAGNETIC, adhoc_x(), HalfPlanePoint(0.0, 1.0))


def test_parallel_graph_invariance() -> None:
    starts = HalfPlanePoint(np.linspace(-1.0, 1.0, 6), np.linspace(0.5, 2.0, 6))
    u = HJSolution(HJFamily.GEODESIC_ARCSINH, 0.0, sign=-1)

    assert parallel_graph_invariance(KINETIC, u, starts, T=2.0, max_workers=2, batch=2) < 1e-6


@pytest.mark.parametrize(
    "foliation, a, solution",
    [
        (Foliation.HOROCYCLE, 0.0, HJSolution(HJFamily.MAGNETIC_ARCTAN, 0.0)),
        (Foliation.HOROCYCLE, INFINITY, HJSolution(HJFamily.CONSTANT)),
        (Foliation.GEODESIC_VERTICAL, INFINITY, HJSolution(HJFamily.GEODESIC_LOG_VERTICAL)),
        (Foliation.GEODESIC_ENDPOINT, -1.0, HJSolution(HJFamily.GEODESIC_LOG_ENDPOINT, -1.0)),
        (Foliation.GEODESIC_CENTER, 2.0, HJSolution(HJFamily.GEODESIC_ARCSINH, 2.0)),
    ],
)
def test_foliation_graphs_are_catalog_gradients(foliation: Foliation, a: object, solution: HJSolution) -> None:
    q = GridSpec.standard().points()
    graph = foliation_to_graph(a, foliation)(q)  # type: ignore[arg-type]
    expected = gradient(solution, q)

    np.testing.assert_allclose(graph.px, expected.px, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(graph.py, expected.py, rtol=1e-12, atol=1e-12)


def test_foliation_graph_examples() -> None:
    assert tuple(foliation_to_graph(0.0)(HalfPlanePoint(0.0, 1.0))) == pytest.approx((2.0, 0.0))
    assert tuple(foliation_to_graph(INFINITY)(HalfPlanePoint(4.0, 0.5))) == (0.0, 0.0)


def test_run_checks_passes_results_along() -> None:
    class First(Check):
        name = "first"  # type: ignore[assignment]

        def __call__(self, results):  # type: ignore[no-untyped-def]
            return {"value": 1.0}

    class Second(Check):
        name = "second"  # type: ignore[assignment]

        def __call__(self, results):  # type: ignore[no-untyped-def]
            return {"value": results["first"]["value"] + 1.0}

    lines: list[str] = []
    results = run_checks([First(), Second()], callbacks=[SummaryCallback(lines.append)])

    assert results["second"]["value"] == 2.0
    assert "second" in lines[0]


def test_verify_solution_passes_for_solutions() -> None:
    report = verify_solution(U0, FAST)

    assert report.passed
    assert report.max_residual < 1e-12
    assert report.reference_residual == pytest.approx(0.0, abs=1e-15)
    assert report.invariance_deviation is not None

    data = report.to_dict()
    assert data["pass"] is True
    assert data["system"] == "magnetic"
    assert data["grid"]["nx"] == 21


def test_verify_solution_kinetic() -> None:
    report = verify_solution(HJSolution(HJFamily.GEODESIC_ARCSINH, 0.0), FAST)

    assert report.kind == KINETIC
    assert report.passed


def test_verify_solution_fails_for_adhoc() -> None:
    report = verify_solution(adhoc_x(), FAST)

    assert not report.passed
    assert report.reference_residual == pytest.approx(-0.5)
    assert report.invariance_deviation is None


CATALOG = magnetic_catalog() + kinetic_catalog()
ACCEPTANCE = Settings(invariance_starts=10, workers=1, grid={"nx": 21, "ny": 21})


@pytest.mark.parametrize("u", CATALOG, ids=lambda u: u.label)
def test_every_catalog_solution_passes_verification(u: HJSolution) -> None:
    report = verify_solution(u, ACCEPTANCE)

    assert report.max_fd_residual < 1e-5
    assert report.invariance_deviation is not None
    assert report.invariance_deviation < 1e-6
    assert report.passed


@pytest.mark.parametrize("u", [u for u in kinetic_catalog() if u.sign == 1], ids=lambda u: u.label)
def test_kinetic_solutions_are_reversible(u: HJSolution) -> None:
    q = CLOSED_GRID.points()

    np.testing.assert_array_equal(residual(KINETIC, u.negated(), q), residual(KINETIC, u, q))
    np.testing.assert_array_equal(gradient(u.negated(), q).px, -gradient(u, q).px)


@pytest.mark.parametrize("u", [U0, HJSolution(HJFamily.GEODESIC_ARCSINH, 3.0, sign=-1)], ids=lambda u: u.label)
def test_adding_a_constant_changes_nothing_but_the_value(u: HJSolution) -> None:
    q = CLOSED_GRID.points()
    shifted = u.with_constant(3.5)

    np.testing.assert_array_equal(residual(u.kind, shifted, q), residual(u.kind, u, q))
    np.testing.assert_array_equal(gradient(shifted, q).as_array(), gradient(u, q).as_array())
    np.testing.assert_allclose(evaluate(shifted, q) - evaluate(u, q), 3.5, rtol=1e-12)


def test_tolerance_callbacks_report_each_check() -> None:
    class Measure(Check):
        name = "measure"  # type: ignore[assignment]

        def __call__(self, results):  # type: ignore[no-untyped-def]
            return {"error": 1e-3, "skipped": None}

    lines: list[str] = []
    check = Measure().with_callbacks(
        ToleranceCallback("error", 1e-2, lines.append),
        ToleranceCallback("error", 1e-4, lines.append),
        ToleranceCallback("skipped", 1.0, lines.append),
    )

    run_checks([check])

    assert lines == [
        "measure: error=1.000e-03 (tol 0.01) ok",
        "measure: error=1.000e-03 (tol 0.0001) FAILED",
        "measure: skipped skipped",
    ]


def test_verify_solution_reports_every_tolerance() -> None:
    lines: list[str] = []

    verify_solution(adhoc_x(), FAST, stdout=lines.append)

    reported = [line for line in lines if line.startswith(("residual:", "invariance:"))]
    assert reported[0].startswith("residual: max_residual=") and reported[0].endswith("FAILED")
    assert reported[-1] == "invariance: invariance_deviation skipped"
    assert "metric" in lines[-1]
