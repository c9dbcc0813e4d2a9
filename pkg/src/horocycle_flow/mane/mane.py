"""Two-sided numerical bounds for the critical value c(L) of the magnetic Lagrangian.

upper: for any smooth u, c(L) <= sup_q 1/2 |du - eta|_q^2.
lower: for any closed curve of period tau, c(L) >= -(1/tau) int_0^tau L.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Literal

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import simpson

from horocycle_flow.geom import BoundaryError, GridSpec, HorocycleFlowError
from horocycle_flow.hj import HJSolution, gradient
from horocycle_flow.logging import getHorocycleFlowLogger
from horocycle_flow.mechanics import (
    CotangentState,
    SystemKind,
    TangentState,
    hamiltonian,
    lagrangian,
)
from horocycle_flow.utils import parallel_map

logger = getHorocycleFlowLogger("mane")

Parametrization = Literal["hyperbolic", "euclidean"]


class CurveLeavesDomainError(HorocycleFlowError):
    """A test curve touches or crosses the boundary of the half-plane."""


@dataclass(frozen=True, slots=True)
class ClosedCurve:
    """A closed curve t -> (gamma(t), gamma'(t)) of period ``period``."""

    label: str
    period: float
    path: Callable[[NDArray[np.float64]], TangentState]

    def sample(self, nodes: int) -> tuple[NDArray[np.float64], TangentState]:
        t = np.linspace(0.0, self.period, nodes + 1)
        try:
            return t, self.path(t)
        except BoundaryError as ex:
            raise CurveLeavesDomainError(f"{self.label} leaves the half-plane") from ex


def circle_curve(
    y0: float,
    ratio: float,
    speed: float,
    orientation: int = 1,
    parametrization: Parametrization = "hyperbolic",
) -> ClosedCurve:
    """The Euclidean circle of center (0, y0) and radius ``ratio * y0``.

    ``hyperbolic``: constant hyperbolic speed ``speed`` (the shape of the
    subcritical orbits). ``euclidean``: constant Euclidean speed
    ``speed * y0``. ``orientation`` +1 is counterclockwise.
    """
    if not 0.0 < ratio < 1.0:
        raise CurveLeavesDomainError(
            f"a circle of radius ratio {ratio} around height {y0} does not fit in the half-plane"
        )
    if speed <= 0 or orientation not in (1, -1):
        raise ValueError(f"speed must be positive and orientation +-1, got {speed}, {orientation}")
    label = f"circle(y0={y0:g}, ratio={ratio:g}, speed={speed:g}, {'+' if orientation > 0 else '-'})"

    if parametrization == "euclidean":
        r = ratio * y0
        omega = orientation * speed * y0 / r

        def euclidean_path(t: NDArray[np.float64]) -> TangentState:
            phase = omega * t
            return TangentState.of(
                r * np.cos(phase),
                y0 + r * np.sin(phase),
                -r * omega * np.sin(phase),
                r * omega * np.cos(phase),
            )

        return ClosedCurve(label, 2.0 * np.pi / abs(omega), euclidean_path)

    # disk model centered at the hyperbolic center i*c, mapped by w -> c i (1 + w) / (1 - w)
    R = np.arctanh(ratio)
    c = y0 * np.sqrt(1.0 - ratio**2)
    rho = np.tanh(0.5 * R)
    omega = orientation * speed / np.sinh(R)

    def hyperbolic_path(t: NDArray[np.float64]) -> TangentState:
        w = rho * np.exp(1j * omega * t)
        z = c * 1j * (1.0 + w) / (1.0 - w)
        dz = c * 1j * 2.0 / (1.0 - w) ** 2 * (1j * omega * w)
        return TangentState.of(z.real, z.imag, dz.real, dz.imag)

    return ClosedCurve(label, 2.0 * np.pi / abs(omega), hyperbolic_path)


def circle_family(
    heights: tuple[float, ...] = (1.0, 2.0, 4.0),
    ratios: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999, 0.9999),
    speeds: tuple[float, ...] = tuple(round(0.1 * i, 1) for i in range(1, 16)),
    parametrization: Parametrization = "hyperbolic",
) -> list[ClosedCurve]:
    return [
        circle_curve(y0, ratio, speed, orientation, parametrization)
        for y0 in heights
        for ratio in ratios
        for speed in speeds
        for orientation in (1, -1)
    ]


def average_action(curve: ClosedCurve, nodes: int = 2048) -> float:
    """-(1/tau) int_0^tau L(gamma, gamma') dt by composite Simpson."""
    t, states = curve.sample(nodes)
    values = lagrangian(SystemKind.MAGNETIC, states)
    return -float(simpson(values, x=t)) / curve.period


def lower_bound(
    curves: list[ClosedCurve], nodes: int = 2048, max_workers: int | None = None
) -> float:
    return max(lower_bound_values(curves, nodes, max_workers))


def lower_bound_values(
    curves: list[ClosedCurve], nodes: int = 2048, max_workers: int | None = None
) -> list[float]:
    if not curves:
        raise ValueError("the lower bound needs at least one closed curve")
    return parallel_map(lambda curve: average_action(curve, nodes), curves, max_workers=max_workers)


def upper_bound_integrand(u: HJSolution, grid: GridSpec) -> NDArray[np.float64]:
    """1/2 |du - eta|_q^2 at every grid point (the magnetic Hamiltonian on the graph of du)."""
    q = grid.points()
    return np.asarray(hamiltonian(SystemKind.MAGNETIC, CotangentState(q, gradient(u, q))))


def upper_bound(u: HJSolution, grid: GridSpec) -> float:
    return float(np.max(upper_bound_integrand(u, grid)))


@dataclass(frozen=True, slots=True)
class CriticalEstimate:
    upper: float
    lower: float
    candidate: str
    curves: str
    best_curve: str
    integrand_variance: float

    @property
    def gap(self) -> float:
        return self.upper - self.lower

    def to_dict(self) -> dict[str, Any]:
        return {
            "upper": self.upper,
            "lower": self.lower,
            "gap": self.gap,
            "candidate": self.candidate,
            "curves": self.curves,
            "best_curve": self.best_curve,
            "integrand_variance": self.integrand_variance,
        }


def estimate_critical_value(
    candidate: HJSolution,
    curves: list[ClosedCurve],
    grid: GridSpec,
    nodes: int = 2048,
    curves_label: str = "circles",
    max_workers: int | None = None,
) -> CriticalEstimate:
    integrand = upper_bound_integrand(candidate, grid)
    values = lower_bound_values(curves, nodes, max_workers)
    best = int(np.argmax(values))
    estimate = CriticalEstimate(
        upper=float(np.max(integrand)),
        lower=values[best],
        candidate=candidate.label,
        curves=curves_label,
        best_curve=curves[best].label,
        integrand_variance=float(np.var(integrand)),
    )
    logger.info(
        f"c(L) bounds: {estimate.lower:.6f} <= c <= {estimate.upper:.12f} "
        f"(best curve {estimate.best_curve})"
    )
    return estimate
