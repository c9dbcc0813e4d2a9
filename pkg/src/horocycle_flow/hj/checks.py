"""Numerical checks of Hamilton-Jacobi solutions and of their Lagrangian graphs.

A smooth solution u of H(q, du) = 1/2 gives the exact Lagrangian graph
{(q, d_q u)} inside the energy level, and that graph is invariant under the
Hamiltonian flow. The functions below test each link of that chain: the PDE
residual, the analytic gradient, closedness and exactness of 1-forms, the
level condition and the invariance itself.
"""

from __future__ import annotations

from typing import Callable

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import dblquad

from horocycle_flow.closed_forms import Foliation, TangencyPoint, foliation_unit_field, tangency
from horocycle_flow.flows import VectorField, integrate
from horocycle_flow.geom import (
    Covector,
    GridSpec,
    HalfPlanePoint,
    HorocycleFlowError,
    OneForm,
    Real,
    dual_norm,
)
from horocycle_flow.logging import getHorocycleFlowLogger
from horocycle_flow.mechanics import (
    CotangentState,
    SystemKind,
    TangentState,
    hamiltonian,
    legendre,
)
from horocycle_flow.utils import chunks, parallel_map

from .catalog import HJSolution, evaluate, gradient

logger = getHorocycleFlowLogger("hj")


class LevelConditionError(HorocycleFlowError, ValueError):
    """The start point of an invariance run is not on the energy level of the graph."""


def residual(
    kind: SystemKind,
    u: HJSolution,
    q: HalfPlanePoint,
    k: float = 0.5,
    du: Covector | None = None,
) -> Real:
    """Signed HJ residual at ``q``; ``du`` replaces the analytic gradient when given.

    magnetic: (y^2 / 2) |du|^2 - y u_x - (k - 1/2)
    kinetic:  |du|^2 - 2k / y^2
    """
    p = gradient(u, q) if du is None else du
    y = q.y
    norm2 = p.px**2 + p.py**2
    if kind == SystemKind.MAGNETIC:
        return 0.5 * y**2 * norm2 - y * p.px - (k - 0.5)
    return norm2 - 2.0 * k / y**2


def fd_step(q: HalfPlanePoint, h_scale: float = 1e-6) -> Real:
    return h_scale * np.maximum(1.0, np.maximum(np.abs(q.x), q.y))


def finite_difference_gradient(
    fn: Callable[[HalfPlanePoint], Real], q: HalfPlanePoint, h_scale: float = 1e-6
) -> Covector:
    """Central differences with the step h = h_scale * max(1, |x|, y)."""
    h = fd_step(q, h_scale)
    x, y = q.x, q.y
    dx = (fn(HalfPlanePoint(x + h, y)) - fn(HalfPlanePoint(x - h, y))) / (2.0 * h)
    dy = (fn(HalfPlanePoint(x, y + h)) - fn(HalfPlanePoint(x, y - h))) / (2.0 * h)
    return Covector(dx, dy)


def curl(alpha: OneForm, q: HalfPlanePoint, h_scale: float = 1e-6) -> Real:
    """d_y alpha_x - d_x alpha_y by central differences."""
    h = fd_step(q, h_scale)
    x, y = q.x, q.y
    d_y_ax = (alpha(HalfPlanePoint(x, y + h)).px - alpha(HalfPlanePoint(x, y - h)).px) / (2.0 * h)
    d_x_ay = (alpha(HalfPlanePoint(x + h, y)).py - alpha(HalfPlanePoint(x - h, y)).py) / (2.0 * h)
    return d_y_ax - d_x_ay


def check_closed(alpha: OneForm, grid: GridSpec, h: float = 1e-6) -> float:
    return float(np.max(np.abs(curl(alpha, grid.points(), h))))


def square_loop(center: tuple[float, float], half_width: float) -> NDArray[np.float64]:
    """Counterclockwise closed square polyline (first vertex repeated at the end)."""
    cx, cy = center
    return np.array(
        [
            (cx - half_width, cy - half_width),
            (cx + half_width, cy - half_width),
            (cx + half_width, cy + half_width),
            (cx - half_width, cy + half_width),
            (cx - half_width, cy - half_width),
        ]
    )


def _closed(loop: NDArray[np.float64] | list[tuple[float, float]]) -> NDArray[np.float64]:
    vertices = np.asarray(loop, dtype=float)
    if not np.array_equal(vertices[0], vertices[-1]):
        vertices = np.vstack([vertices, vertices[:1]])
    return vertices


def check_exact(
    alpha: OneForm,
    loop: NDArray[np.float64] | list[tuple[float, float]],
    panels: int = 32,
    order: int = 16,
) -> float:
    """Line integral of ``alpha`` around the closed polyline ``loop``.

    Every edge is split into ``panels`` pieces, each integrated with
    ``order``-point Gauss-Legendre.
    """
    vertices = _closed(loop)
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, 1.0, panels + 1)
    width = np.diff(edges)
    s = (edges[:-1, None] + 0.5 * (nodes[None, :] + 1.0) * width[:, None]).ravel()
    w = (0.5 * weights[None, :] * width[:, None]).ravel()

    total = 0.0
    for start, end in zip(vertices[:-1], vertices[1:]):
        d = end - start
        points = start[None, :] + s[:, None] * d[None, :]
        a = alpha(HalfPlanePoint(points[:, 0], points[:, 1]))
        total += float(np.sum(w * (a.px * d[0] + a.py * d[1])))
    return total


def stokes_area(loop: NDArray[np.float64] | list[tuple[float, float]]) -> float:
    """Signed hyperbolic area inside an axis-parallel rectangle, by 2-D quadrature of 1/y^2.

    This is the integral of d(eta) and therefore the loop integral of eta.
    """
    vertices = _closed(loop)
    xs, ys = np.unique(vertices[:, 0]), np.unique(vertices[:, 1])
    if len(xs) != 2 or len(ys) != 2:
        raise ValueError("stokes_area expects an axis-parallel rectangle")
    (x0, x1), (y0, y1) = xs, ys
    area, _ = dblquad(lambda y, x: 1.0 / y**2, x0, x1, lambda x: y0, lambda x: y1)
    # shoelace sign gives the orientation
    px, py = vertices[:, 0], vertices[:, 1]
    orientation = np.sign(np.sum(px[:-1] * py[1:] - px[1:] * py[:-1]))
    return float(orientation * area)


def graph_level_deviation(
    kind: SystemKind, alpha: OneForm, q: HalfPlanePoint, k: float = 0.5
) -> Real:
    return hamiltonian(kind, CotangentState(q, alpha(q))) - k


def check_level(
    kind: SystemKind, u: HJSolution, grid: GridSpec, k: float = 0.5
) -> float:
    """max |H(q, du(q)) - k| over the grid."""
    return float(np.max(np.abs(graph_level_deviation(kind, u.one_form(), grid.points(), k))))


def graph_deviation(
    kind: SystemKind,
    alpha: OneForm,
    q0: HalfPlanePoint,
    T: float = 5.0,
    dt: float = 1e-3,
    p0: Covector | None = None,
) -> float:
    """Largest |p(t) - alpha(q(t))|_q(t) along the Hamiltonian orbits from (q0, p0).

    ``p0`` defaults to ``alpha(q0)``, i.e. the orbits start on the graph.
    ``q0`` may hold arrays of start points; they are advanced together.
    """
    p = alpha(q0) if p0 is None else p0
    start = np.array([q0.x, q0.y, p.px, p.py], dtype=float)
    trajectory = integrate(VectorField.hamiltonian(kind), start, T, dt)
    states = np.moveaxis(trajectory.states, 1, 0)
    q = HalfPlanePoint(states[0], states[1])
    off_graph = Covector(states[2], states[3]) - alpha(q)
    return float(np.max(dual_norm(q, off_graph)))


def check_graph_invariance(
    kind: SystemKind,
    u: HJSolution,
    q0: HalfPlanePoint,
    T: float = 5.0,
    dt: float = 1e-3,
    level_tol: float = 1e-10,
) -> float:
    alpha = u.one_form()
    level = np.max(np.abs(graph_level_deviation(kind, alpha, q0)))
    if level > level_tol:
        raise LevelConditionError(
            f"H(q0, du(q0)) differs from 1/2 by {level:.3e} for {u.label}"
        )
    deviation = graph_deviation(kind, alpha, q0, T, dt)
    logger.debug(f"{u.label}: graph deviation {deviation:.3e} over T={T}")
    return deviation


def parallel_graph_invariance(
    kind: SystemKind,
    u: HJSolution,
    q0: HalfPlanePoint,
    T: float = 5.0,
    dt: float = 1e-3,
    max_workers: int | None = None,
    batch: int = 4,
) -> float:
    """check_graph_invariance over many start points, split into batches across workers."""
    xs = np.atleast_1d(np.asarray(q0.x, dtype=float))
    ys = np.atleast_1d(np.asarray(q0.y, dtype=float))
    groups = chunks(list(range(len(xs))), batch)

    def run(indices: list[int]) -> float:
        return check_graph_invariance(kind, u, HalfPlanePoint(xs[indices], ys[indices]), T, dt)

    return max(parallel_map(run, groups, max_workers=max_workers))


def foliation_to_graph(
    a: TangencyPoint | float | str,
    foliation: Foliation | str = Foliation.HOROCYCLE,
    direction: int = 1,
) -> OneForm:
    """The Legendre image of the unit tangent field of a foliation, as a 1-form.

    For horocycles tangent to ``a`` this is 2 (y, -(x - a)) / ((x - a)^2 + y^2).
    """
    foliation = Foliation(foliation)
    a = tangency(a)
    kind = foliation.system

    def evaluator(q: HalfPlanePoint) -> Covector:
        v = foliation_unit_field(foliation, a, q, direction)
        return legendre(kind, TangentState(q, v)).p

    return OneForm(evaluator, f"{foliation}(a={a})")


def gradient_mismatch(u: HJSolution, q: HalfPlanePoint, h_scale: float = 1e-6) -> Real:
    fd = finite_difference_gradient(lambda point: evaluate(u, point), q, h_scale)
    exact = gradient(u, q)
    return np.hypot(fd.px - exact.px, fd.py - exact.py)
