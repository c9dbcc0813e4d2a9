import numpy as np
import pytest

from horocycle_flow.closed_forms import (
    INFINITY,
    Foliation,
    TangencyPoint,
    foliation_unit_field,
    geodesic_circle,
    geodesic_vertical,
    horocycle,
    horocycle_invert,
    horocycle_unit_field,
    polar_geodesic,
    polar_horocycle,
    polar_horocycle_invert,
)
from horocycle_flow.flows import VectorField, el_vector_field, integrate
from horocycle_flow.geom import DegenerateParameterError, GridSpec, HalfPlanePoint, metric_norm
from horocycle_flow.mechanics import SystemKind, TangentState


def test_tangency_point_parsing() -> None:
    assert TangencyPoint.parse("inf") is INFINITY
    assert TangencyPoint.parse("∞").is_infinite
    assert TangencyPoint.parse("-2.5").real == -2.5
    assert str(INFINITY) == "inf"
    with pytest.raises(DegenerateParameterError):
        _ = INFINITY.real


def test_horocycle() -> None:
    np.testing.assert_allclose(horocycle(0.0, 1.0, 0.0).as_array(), [0.0, 1.0, 1.0, 0.0])
    np.testing.assert_allclose(horocycle(0.0, 1.0, 1.0).as_array(), [0.5, 0.5, 0.0, -0.5])
    with pytest.raises(DegenerateParameterError):
        horocycle(0.0, 0.0, 1.0)


def test_horocycle_invert() -> None:
    assert horocycle_invert(0.0, HalfPlanePoint(0.0, 1.0)) == (0.0, 1.0)
    assert horocycle_invert(0.0, HalfPlanePoint(0.5, 0.5)) == pytest.approx((1.0, 1.0))

    t = np.linspace(-3.0, 3.0, 13)
    s = horocycle(1.5, 0.4, t)
    t_back, b_back = horocycle_invert(1.5, s.q)
    np.testing.assert_allclose(t_back, t, atol=1e-12)
    np.testing.assert_allclose(b_back, 0.4, rtol=1e-12)


def test_horocycle_unit_field() -> None:
    assert tuple(horocycle_unit_field(0.0, HalfPlanePoint(0.0, 1.0))) == (1.0, 0.0)
    assert tuple(horocycle_unit_field(INFINITY, HalfPlanePoint(3.0, 2.0))) == (-2.0, 0.0)


def test_horocycle_is_a_critical_magnetic_orbit() -> None:
    s0 = horocycle(-1.0, 2.0, -0.5)

    trajectory = integrate(VectorField.lagrangian(SystemKind.MAGNETIC), s0, 1.5, 1e-3)

    np.testing.assert_allclose(trajectory.states[-1], horocycle(-1.0, 2.0, 1.0).as_array(), atol=1e-9)


def test_geodesic_circle() -> None:
    np.testing.assert_allclose(geodesic_circle(0.0, 1.0, 0.0).as_array(), [-0.5, 0.5, 0.5, 0.0])

    far = geodesic_circle(0.0, 1.0, np.array([-15.0, 15.0]))
    np.testing.assert_allclose(far.q.x, [-1.0, 0.0], atol=1e-12)
    assert np.all(far.q.y < 1e-6)

    with pytest.raises(DegenerateParameterError):
        geodesic_circle(0.0, 0.0, 1.0)


def test_geodesic_circle_solves_the_geodesic_equation() -> None:
    t = np.linspace(-2.0, 2.0, 9)
    s = geodesic_circle(0.7, -1.3, t)

    np.testing.assert_allclose(metric_norm(s.q, s.v), 1.0, rtol=1e-12)
    h = 1e-5
    ahead, behind = geodesic_circle(0.7, -1.3, t + h), geodesic_circle(0.7, -1.3, t - h)
    acceleration = (ahead.v.as_array() - behind.v.as_array()) / (2.0 * h)
    field = el_vector_field(SystemKind.KINETIC, s)
    np.testing.assert_allclose(acceleration, field[2:], atol=1e-8)


def test_geodesic_vertical() -> None:
    np.testing.assert_allclose(geodesic_vertical(0.0, 0.0).as_array(), [0.0, 1.0, 0.0, 1.0])
    np.testing.assert_allclose(geodesic_vertical(2.0, 1.0).as_array(), [2.0, np.e, 0.0, np.e])
    np.testing.assert_allclose(geodesic_vertical(0.0, 0.0, -1).as_array(), [0.0, 1.0, 0.0, -1.0])
    with pytest.raises(ValueError):
        geodesic_vertical(0.0, 0.0, 0)


def test_polar_forms() -> None:
    np.testing.assert_allclose(polar_horocycle(1.0, np.pi).as_array(), [0.0, 2.0, 2.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(polar_geodesic(1.0, np.pi / 2).as_array(), [0.0, 1.0, 1.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(polar_geodesic(2.0, np.pi / 2).as_array(), [0.0, 2.0, 2.0, 0.0], atol=1e-15)

    r, theta = polar_horocycle_invert(HalfPlanePoint(0.0, 2.0))
    assert (r, theta) == pytest.approx((1.0, np.pi))

    with pytest.raises(DegenerateParameterError):
        polar_horocycle(1.0, 0.0)
    with pytest.raises(DegenerateParameterError):
        polar_geodesic(1.0, np.pi)
    with pytest.raises(DegenerateParameterError):
        polar_geodesic(-1.0, 1.0)


def test_polar_horocycle_agrees_with_the_horocycle_field() -> None:
    theta = np.linspace(0.3, 6.0, 12)
    s = polar_horocycle(0.8, theta, a=1.0)

    field = horocycle_unit_field(1.0, s.q)
    np.testing.assert_allclose(s.v.as_array(), field.as_array(), atol=1e-12)
    np.testing.assert_allclose(polar_horocycle_invert(s.q, a=1.0)[1], theta, atol=1e-12)


@pytest.mark.parametrize("foliation", list(Foliation))
@pytest.mark.parametrize("a", [0.0, -1.5, INFINITY])
def test_foliation_fields_are_unit_and_invariant(foliation: Foliation, a: object) -> None:
    if foliation == Foliation.GEODESIC_CENTER and a is INFINITY:
        pytest.skip("the center foliation needs a finite center")
    q = GridSpec(-3.0, 3.0, 0.2, 4.0, 7, 6).points()
    v = foliation_unit_field(foliation, a, q)  # type: ignore[arg-type]

    np.testing.assert_allclose(metric_norm(q, v), 1.0, rtol=1e-12)

    # the flow from a point of a leaf stays tangent to the foliation
    s0 = TangentState.of(np.ravel(q.x), np.ravel(q.y), np.ravel(v.vx), np.ravel(v.vy))
    trajectory = integrate(VectorField.lagrangian(foliation.system), s0, 0.5, 1e-3)
    final = trajectory.final_state
    expected = foliation_unit_field(foliation, a, final.q)  # type: ignore[arg-type]
    np.testing.assert_allclose(final.v.as_array(), expected.as_array(), atol=1e-8)


def test_foliation_direction_flips_geodesics() -> None:
    q = HalfPlanePoint(0.3, 1.2)
    forward = foliation_unit_field(Foliation.GEODESIC_ENDPOINT, 0.0, q)
    backward = foliation_unit_field(Foliation.GEODESIC_ENDPOINT, 0.0, q, direction=-1)

    np.testing.assert_allclose(backward.as_array(), -forward.as_array())
    assert tuple(foliation_unit_field(Foliation.GEODESIC_ENDPOINT, INFINITY, q)) == (0.0, 1.2)


@pytest.mark.parametrize("a, b", [(0.0, 1.0), (-2.0, 0.5), (3.0, 2.0)])
def test_magnetic_integration_follows_the_horocycle(a: float, b: float) -> None:
    trajectory = integrate(VectorField.lagrangian(SystemKind.MAGNETIC), horocycle(a, b, 0.0), 5.0, 1e-3, record_every=500)

    exact = horocycle(a, b, trajectory.times)
    np.testing.assert_allclose(trajectory.states, exact.as_array().T, atol=1e-6)


@pytest.mark.parametrize("a, b", [(0.0, 1.0), (-2.0, 0.5), (3.0, -2.0)])
def test_kinetic_integration_follows_the_geodesics(a: float, b: float) -> None:
    field = VectorField.lagrangian(SystemKind.KINETIC)

    circle = integrate(field, geodesic_circle(a, b, 0.0), 5.0, 1e-3, record_every=500)
    np.testing.assert_allclose(circle.states, geodesic_circle(a, b, circle.times).as_array().T, atol=1e-6)

    vertical = integrate(field, geodesic_vertical(a, 0.0, -1), 5.0, 1e-3, record_every=500)
    np.testing.assert_allclose(
        vertical.states, geodesic_vertical(a, vertical.times, -1).as_array().T, atol=1e-6
    )


@pytest.mark.parametrize("a", [-2.0, 0.0, 3.0])
def test_horocycle_invert_round_trips(a: float) -> None:
    rng = np.random.default_rng(2)
    q = HalfPlanePoint(rng.uniform(-10.0, 10.0, 10_000), np.exp(rng.uniform(np.log(0.01), np.log(100.0), 10_000)))

    t, b = horocycle_invert(a, q)
    back = horocycle(a, b, t).q

    np.testing.assert_allclose(back.x, q.x, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(back.y, q.y, rtol=1e-12)
