"""Periods of the subcritical magnetic orbits (energy k < 1/2).

Below the critical level every orbit closes up into a hyperbolic circle of
radius R with tanh R = sqrt(2k), and the period 2 pi / sqrt(1 - 2k) only
depends on k.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import bisect

from horocycle_flow.geom import BoundaryError, HalfPlanePoint, HorocycleFlowError, TangentVector
from horocycle_flow.logging import getHorocycleFlowLogger
from horocycle_flow.mechanics import SystemKind, TangentState, energy
from horocycle_flow.utils import parallel_map

from .integrator import rk4_step
from .vector_fields import VectorField

logger = getHorocycleFlowLogger("flows.period")

CRITICAL_LEVEL = 0.5


class LevelError(HorocycleFlowError, ValueError):
    """The requested energy level is outside the subcritical range 0 < k < 1/2."""


class NoReturnError(HorocycleFlowError):
    """The orbit did not come back to its initial state within the time budget."""


@dataclass(frozen=True, slots=True)
class PeriodSample:
    q0: HalfPlanePoint
    v0: TangentVector
    period: float


def _check_level(k: float) -> None:
    if not 0.0 < k < CRITICAL_LEVEL:
        raise LevelError(
            f"k={k} is not subcritical; orbits are periodic only for 0 < k < 1/2 "
            "and the critical level k = 1/2 (horocycle flow) has no periodic orbits"
        )


def subcritical_period(k: float) -> float:
    _check_level(k)
    return 2.0 * np.pi / np.sqrt(1.0 - 2.0 * k)


def level_state(k: float, q: HalfPlanePoint, theta: float) -> TangentState:
    """The state at ``q`` with energy ``k`` pointing in the direction ``theta``."""
    speed = q.y * np.sqrt(2.0 * k)
    return TangentState(q, TangentVector(speed * np.cos(theta), speed * np.sin(theta)))


def detect_period(
    k: float,
    s0: TangentState,
    dt: float = 1e-3,
    budget: float = 200.0,
    tol: float = 1e-6,
    level_tol: float = 1e-12,
) -> float:
    """First time the magnetic orbit of ``s0`` returns to ``s0`` in phase space.

    The return event is the sign change (- to +) of <s(t) - s0, s'(t)>, the
    derivative of half the squared phase-space distance. Candidates are
    refined by bisection on the length of the last Runge-Kutta step and
    accepted when the distance is below ``tol`` times the Euclidean speed
    of ``s0``. The departure threshold uses the same scale, so both tests
    are independent of the horizontal position of ``s0``.
    """
    _check_level(k)
    if abs(energy(s0) - k) > level_tol:
        raise LevelError(f"energy(s0)={energy(s0)!r} differs from k={k}")

    field = VectorField.lagrangian(SystemKind.MAGNETIC)
    start = s0.as_array()
    scale = float(np.hypot(start[2], start[3]))
    departed = 1e-3 * scale

    def event(state: NDArray[np.float64]) -> float:
        return float(np.dot(state - start, field(state)))

    state, t = start, 0.0
    g_prev = event(state)
    left = False
    n_steps = int(np.ceil(budget / dt))
    try:
        for _ in range(n_steps):
            new_state = rk4_step(field, state, dt)
            g = event(new_state)
            distance = float(np.linalg.norm(new_state - start))
            if not left:
                left = distance > departed
            elif g_prev < 0.0 <= g:
                base = state
                h = bisect(lambda h: event(rk4_step(field, base, h)), 0.0, dt, xtol=1e-15)
                returned = rk4_step(field, base, h)
                miss = float(np.linalg.norm(returned - start))
                if miss < tol * scale:
                    logger.debug(f"k={k}: return after {t + h} (miss {miss:.2e})")
                    return t + h
                logger.debug(f"k={k}: near return at {t + h} rejected (miss {miss:.2e})")
            state, t, g_prev = new_state, t + dt, g
    except BoundaryError as ex:
        raise NoReturnError(f"orbit left the half-plane at t={t}") from ex

    raise NoReturnError(f"no return to the initial state within t={budget} (k={k})")


def sample_periods(
    k: float,
    points: list[HalfPlanePoint],
    samples: int,
    rng: np.random.Generator,
    dt: float = 1e-3,
    budget: float = 200.0,
    tol: float = 1e-6,
    max_workers: int | None = None,
) -> list[PeriodSample]:
    """Periods from ``samples`` random directions, cycling through ``points``."""
    _check_level(k)
    starts = [
        level_state(k, points[i % len(points)], float(rng.uniform(0.0, 2.0 * np.pi)))
        for i in range(samples)
    ]

    def run(s0: TangentState) -> PeriodSample:
        return PeriodSample(s0.q, s0.v, detect_period(k, s0, dt, budget, tol))

    return parallel_map(run, starts, max_workers=max_workers, desc=None)


def relative_spread(periods: list[float]) -> float:
    values = np.asarray(periods, dtype=float)
    return float((values.max() - values.min()) / values.mean())
