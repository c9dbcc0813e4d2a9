from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np
from numpy.typing import NDArray

from horocycle_flow.geom import Y_MIN, BoundaryError, HorocycleFlowError
from horocycle_flow.logging import getHorocycleFlowLogger
from horocycle_flow.mechanics import CotangentState, SystemKind, TangentState

from .vector_fields import (
    Bundle,
    StateLike,
    VectorField,
    as_state_array,
    state_from_array,
)

logger = getHorocycleFlowLogger("flows")


class StepSizeError(HorocycleFlowError, ValueError):
    """Non-positive step or duration, or a step longer than the whole run."""


class BoundaryEscapeError(HorocycleFlowError):
    """The orbit reached y <= y_min; ``trajectory`` holds the samples up to that point."""

    def __init__(self, message: str, trajectory: Trajectory) -> None:
        super().__init__(message)
        self.trajectory = trajectory


@dataclass(frozen=True, slots=True)
class TrajectorySample:
    t: float
    state: TangentState | CotangentState
    energy: float
    momentum_x: float


@dataclass(frozen=True)
class Trajectory:
    """Recorded samples of one orbit, or of a batch of orbits advanced together.

    ``states`` has shape ``(m, 4)`` (or ``(m, 4, N)`` for a batch), ``energy``
    and ``momentum_x`` have shape ``(m,)`` (or ``(m, N)``).
    """

    kind: SystemKind
    bundle: Bundle
    dt: float
    times: NDArray[np.float64]
    states: NDArray[np.float64]
    energy: NDArray[np.float64]
    momentum_x: NDArray[np.float64]

    def __len__(self) -> int:
        return len(self.times)

    def __iter__(self) -> Iterator[TrajectorySample]:
        return iter(self.samples)

    @property
    def energy_drift(self) -> float:
        return float(np.max(np.abs(self.energy - self.energy[0])))

    @property
    def momentum_drift(self) -> float:
        return float(np.max(np.abs(self.momentum_x - self.momentum_x[0])))

    @property
    def samples(self) -> list[TrajectorySample]:
        return [
            TrajectorySample(
                float(t),
                state_from_array(self.bundle, state),
                float(e),
                float(p),
            )
            for t, state, e, p in zip(self.times, self.states, self.energy, self.momentum_x)
        ]

    @property
    def final_state(self) -> TangentState | CotangentState:
        return state_from_array(self.bundle, self.states[-1])

    @property
    def final_time(self) -> float:
        return float(self.times[-1])


def rk4_step(
    field: VectorField, state: NDArray[np.float64], h: float
) -> NDArray[np.float64]:
    k1 = field(state)
    k2 = field(state + 0.5 * h * k1)
    k3 = field(state + 0.5 * h * k2)
    k4 = field(state + h * k3)
    return state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _build(
    field: VectorField,
    dt: float,
    times: list[float],
    states: list[NDArray[np.float64]],
) -> Trajectory:
    stacked = np.array(states)
    # observables want the component axis first
    components = np.moveaxis(stacked, 1, 0)
    return Trajectory(
        kind=field.kind,
        bundle=field.bundle,
        dt=dt,
        times=np.array(times),
        states=stacked,
        energy=field.energy(components),
        momentum_x=field.momentum_x(components),
    )


def integrate(
    field: VectorField,
    s0: StateLike,
    T: float,
    dt: float,
    record_every: int = 1,
) -> Trajectory:
    """Fixed-step classical Runge-Kutta from ``s0`` over ``[0, T]``.

    The final step is shortened so the last sample sits exactly at ``T``.
    Every ``record_every``-th step is recorded, plus the first and the last.
    """
    if dt <= 0 or T <= 0:
        raise StepSizeError(f"dt={dt} and T={T} must be positive")
    if dt > T:
        raise StepSizeError(f"dt={dt} is longer than the run T={T}")
    if record_every < 1:
        raise StepSizeError(f"record_every={record_every} must be at least 1")

    state = as_state_array(s0)
    n_steps = int(np.ceil(T / dt - 1e-9))
    logger.debug(
        f"integrate {field.kind}/{field.bundle}: T={T}, dt={dt}, steps={n_steps}"
    )

    times: list[float] = [0.0]
    states: list[NDArray[np.float64]] = [state]
    t = 0.0
    for i in range(1, n_steps + 1):
        t_next = T if i == n_steps else i * dt
        try:
            new_state = rk4_step(field, state, t_next - t)
        except BoundaryError:
            new_state = None
        if new_state is None or not np.all(np.isfinite(new_state)) or np.any(new_state[1] <= Y_MIN):
            partial = _build(field, dt, times, states)
            logger.warning(f"orbit left the half-plane after t={t}")
            raise BoundaryEscapeError(
                f"orbit reached the boundary y <= {Y_MIN} between t={t} and t={t_next}",
                partial,
            )
        state, t = new_state, t_next
        if i % record_every == 0 or i == n_steps:
            times.append(t)
            states.append(state)

    trajectory = _build(field, dt, times, states)
    logger.debug(
        f"integrate done: energy drift {trajectory.energy_drift:.3e}, "
        f"momentum drift {trajectory.momentum_drift:.3e}"
    )
    return trajectory
