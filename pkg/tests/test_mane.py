import numpy as np
import pytest

from horocycle_flow.geom import GridSpec
from horocycle_flow.hj import HJFamily, HJSolution, adhoc_x
from horocycle_flow.mane import (
    CurveLeavesDomainError,
    average_action,
    circle_curve,
    circle_family,
    estimate_critical_value,
    lower_bound,
    upper_bound,
    upper_bound_integrand,
)
from horocycle_flow.mechanics import energy

U0 = HJSolution(HJFamily.MAGNETIC_ARCTAN, 0.0)


def test_upper_bound_of_solutions_is_one_half() -> None:
    grid = GridSpec.standard()

    integrand = upper_bound_integrand(U0, grid)
    assert upper_bound(U0, grid) == pytest.approx(0.5, abs=1e-9)
    assert np.ptp(integrand) < 1e-9
    assert upper_bound(HJSolution(HJFamily.CONSTANT), grid) == 0.5


def test_upper_bound_of_a_non_solution_is_worse() -> None:
    assert upper_bound(adhoc_x(), GridSpec.standard()) > 0.5


@pytest.mark.parametrize("parametrization", ["hyperbolic", "euclidean"])
def test_circle_curve_is_closed(parametrization: str) -> None:
    curve = circle_curve(2.0, 0.5, 0.7, parametrization=parametrization)  # type: ignore[arg-type]

    _, states = curve.sample(64)
    np.testing.assert_allclose(states.as_array()[:, 0], states.as_array()[:, -1], atol=1e-12)
    np.testing.assert_allclose(np.hypot(states.q.x, states.q.y - 2.0), 1.0, rtol=1e-12)


def test_hyperbolic_circles_have_constant_speed() -> None:
    curve = circle_curve(1.0, 0.9, 0.8, orientation=-1)

    _, states = curve.sample(128)
    np.testing.assert_allclose(energy(states), 0.5 * 0.8**2, rtol=1e-12)


def test_average_action_of_a_hyperbolic_circle() -> None:
    ratio, speed = 0.6, 0.4
    radius = np.arctanh(ratio)
    expected = speed * np.tanh(0.5 * radius) - 0.5 * speed**2

    clockwise = average_action(circle_curve(1.0, ratio, speed, orientation=-1), nodes=1024)
    counterclockwise = average_action(circle_curve(1.0, ratio, speed, orientation=1), nodes=1024)

    assert clockwise == pytest.approx(expected, rel=1e-9)
    assert counterclockwise == pytest.approx(-speed * np.tanh(0.5 * radius) - 0.5 * speed**2, rel=1e-9)


def test_slow_tiny_circle_gives_nothing() -> None:
    value = average_action(circle_curve(1.0, 0.01, 0.01, orientation=-1))

    assert abs(value) < 1e-3


def test_lower_bound_approaches_one_half() -> None:
    value = lower_bound(circle_family(), max_workers=4)

    assert 0.48 <= value < 0.5


def test_lower_bound_improves_with_the_family() -> None:
    coarse = lower_bound(circle_family(ratios=(0.5,)), nodes=512)
    fine = lower_bound(circle_family(ratios=(0.5, 0.9, 0.99)), nodes=512)

    assert coarse < fine < 0.5


def test_circles_must_fit_in_the_half_plane() -> None:
    with pytest.raises(CurveLeavesDomainError):
        circle_curve(1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        circle_curve(1.0, 0.5, -1.0)
    with pytest.raises(ValueError):
        lower_bound([])


def test_estimate_critical_value() -> None:
    curves = circle_family(heights=(1.0,), ratios=(0.9, 0.9999), speeds=(0.9, 1.0))

    estimate = estimate_critical_value(U0, curves, GridSpec(-2.0, 2.0, 0.2, 4.0, 21, 21), nodes=1024)

    assert estimate.upper == pytest.approx(0.5, abs=1e-9)
    assert 0.48 <= estimate.lower < 0.5
    assert estimate.gap == pytest.approx(estimate.upper - estimate.lower)
    assert "ratio=0.9999" in estimate.best_curve
    assert estimate.integrand_variance < 1e-18
    assert set(estimate.to_dict()) == {
        "upper",
        "lower",
        "gap",
        "candidate",
        "curves",
        "best_curve",
        "integrand_variance",
    }


def test_upper_bound_for_the_magnetic_catalog() -> None:
    from horocycle_flow.hj import magnetic_catalog

    grid = GridSpec.standard()
    for u in magnetic_catalog():
        integrand = upper_bound_integrand(u, grid)
        assert upper_bound(u, grid) == pytest.approx(0.5, abs=1e-9), u.label
        assert np.var(integrand) < 1e-18, u.label
