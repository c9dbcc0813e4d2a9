"""First-order vector fields of the Euler-Lagrange and Hamiltonian flows.

States are packed as ``(x, y, vx, vy)`` on the tangent bundle and
``(x, y, px, py)`` on the cotangent bundle. Every field accepts either a
state object or a float array whose leading axis has length 4; trailing axes
are broadcast, so a ``(4, N)`` array advances N trajectories at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import Callable, Union

import numpy as np
from numpy.typing import NDArray

from horocycle_flow.geom import (
    Y_MIN,
    BoundaryError,
    TangentVector,
    christoffel_acceleration,
)
from horocycle_flow.mechanics import (
    CotangentState,
    SystemKind,
    TangentState,
    energy,
    hamiltonian,
    legendre,
)

StateLike = Union[TangentState, CotangentState, NDArray[np.float64]]


class Bundle(StrEnum):
    TANGENT = "tangent"
    COTANGENT = "cotangent"


def as_state_array(s: StateLike) -> NDArray[np.float64]:
    if isinstance(s, (TangentState, CotangentState)):
        state = np.array(list(s), dtype=float)
    else:
        state = np.asarray(s, dtype=float)
    if state.shape[0] != 4:
        raise ValueError(f"a state has 4 components, got shape {state.shape}")
    if not np.all(np.isfinite(state)) or np.any(state[1] <= Y_MIN):
        raise BoundaryError(f"state {state.tolist()} is not inside the half-plane (y_min={Y_MIN})")
    return state


def state_from_array(
    bundle: Bundle, state: NDArray[np.float64]
) -> TangentState | CotangentState:
    if bundle == Bundle.TANGENT:
        return TangentState.from_array(state)
    return CotangentState.from_array(state)


def el_vector_field(kind: SystemKind, s: StateLike) -> NDArray[np.float64]:
    """(x', y', vx', vy') of the Euler-Lagrange flow.

    The magnetic field keeps vx / y^2 + 1 / y constant and moves vy / y^2 at
    the rate -(vx^2 + vy^2) / y^3 - vx / y^2.
    """
    x, y, vx, vy = as_state_array(s)
    ax = 2.0 * vx * vy / y
    ay = (vy**2 - vx**2) / y
    if kind == SystemKind.MAGNETIC:
        ax = ax + vy
        ay = ay - vx
    return np.array([vx, vy, ax, ay])


def ham_vector_field(kind: SystemKind, s: StateLike) -> NDArray[np.float64]:
    """Canonical equations (dH/dp, -dH/dq) on the cotangent bundle."""
    x, y, px, py = as_state_array(s)
    dx = y**2 * px
    dy = y**2 * py
    dpy = -y * (px**2 + py**2)
    if kind == SystemKind.MAGNETIC:
        dx = dx - y
        dpy = dpy + px
    return np.array([dx, dy, 0.0 * px, dpy])


def covariant_acceleration(kind: SystemKind, s: TangentState) -> TangentVector:
    """nabla_t(gamma') of the orbit through ``s``, from the Christoffel symbols."""
    field = el_vector_field(kind, s)
    return christoffel_acceleration(s.q, s.v, TangentVector(field[2], field[3]))


@dataclass(frozen=True, slots=True)
class VectorField:
    """A vector field together with the observables recorded along its orbits."""

    kind: SystemKind
    bundle: Bundle
    rhs: Callable[[SystemKind, StateLike], NDArray[np.float64]]

    @classmethod
    def lagrangian(cls, kind: SystemKind | str) -> VectorField:
        return cls(SystemKind(kind), Bundle.TANGENT, el_vector_field)

    @classmethod
    def hamiltonian(cls, kind: SystemKind | str) -> VectorField:
        return cls(SystemKind(kind), Bundle.COTANGENT, ham_vector_field)

    def __call__(self, state: StateLike) -> NDArray[np.float64]:
        return self.rhs(self.kind, state)

    def make_state(self, state: NDArray[np.float64]) -> TangentState | CotangentState:
        return state_from_array(self.bundle, state)

    def energy(self, state: NDArray[np.float64]) -> NDArray[np.float64]:
        s = self.make_state(state)
        if isinstance(s, TangentState):
            return np.asarray(energy(s), dtype=float)
        return np.asarray(hamiltonian(self.kind, s), dtype=float)

    def momentum_x(self, state: NDArray[np.float64]) -> NDArray[np.float64]:
        """Conjugate momentum p_x (a prime integral of both systems)."""
        s = self.make_state(state)
        if isinstance(s, TangentState):
            return np.asarray(legendre(self.kind, s).p.px, dtype=float)
        return np.asarray(s.p.px, dtype=float)
