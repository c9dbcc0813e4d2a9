"""Lagrangian and Hamiltonian mechanics of the two systems on H.

``magnetic``: L = 1/2 |v|_q^2 + eta_q(v), H = 1/2 |p - eta|_q^2.
``kinetic``:  L = 1/2 |v|_q^2,            H = 1/2 |p|_q^2 (geodesic flow).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import Iterator

import numpy as np
from numpy.typing import NDArray

from horocycle_flow.geom import (
    Covector,
    HalfPlanePoint,
    Real,
    TangentVector,
    dual_norm,
    eta,
    metric_norm,
)


class SystemKind(StrEnum):
    MAGNETIC = "magnetic"
    KINETIC = "kinetic"


@dataclass(frozen=True, slots=True)
class TangentState:
    q: HalfPlanePoint
    v: TangentVector

    @classmethod
    def of(cls, x: Real, y: Real, vx: Real, vy: Real) -> TangentState:
        return cls(HalfPlanePoint(x, y), TangentVector(vx, vy))

    @classmethod
    def from_array(cls, state: NDArray[np.float64]) -> TangentState:
        return cls.of(state[0], state[1], state[2], state[3])

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.q.x, self.q.y, self.v.vx, self.v.vy], dtype=float)

    def __iter__(self) -> Iterator[Real]:
        yield from self.q
        yield from self.v


@dataclass(frozen=True, slots=True)
class CotangentState:
    q: HalfPlanePoint
    p: Covector

    @classmethod
    def of(cls, x: Real, y: Real, px: Real, py: Real) -> CotangentState:
        return cls(HalfPlanePoint(x, y), Covector(px, py))

    @classmethod
    def from_array(cls, state: NDArray[np.float64]) -> CotangentState:
        return cls.of(state[0], state[1], state[2], state[3])

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.q.x, self.q.y, self.p.px, self.p.py], dtype=float)

    def __iter__(self) -> Iterator[Real]:
        yield from self.q
        yield from self.p


def lagrangian(kind: SystemKind, s: TangentState) -> Real:
    (x, y), (vx, vy) = s.q, s.v
    kinetic = (vx**2 + vy**2) / (2.0 * y**2)
    if kind == SystemKind.MAGNETIC:
        return kinetic + vx / y
    return kinetic


def energy(s: TangentState) -> Real:
    """E = 1/2 |v|_q^2, the same for both systems."""
    return 0.5 * metric_norm(s.q, s.v) ** 2


def momentum_x(s: TangentState) -> Real:
    """Conjugate momentum dL/dv_x of the magnetic system (a prime integral)."""
    y = s.q.y
    return s.v.vx / y**2 + 1.0 / y


def hamiltonian(kind: SystemKind, s: CotangentState) -> Real:
    y = s.q.y
    px, py = s.p
    kinetic = 0.5 * y**2 * (px**2 + py**2)
    if kind == SystemKind.MAGNETIC:
        return kinetic - y * px + 0.5
    return kinetic


def hamiltonian_norm_form(kind: SystemKind, s: CotangentState) -> Real:
    """1/2 |p - eta|_q^2 (magnetic) or 1/2 |p|_q^2 (kinetic); oracle for ``hamiltonian``."""
    p = s.p - eta(s.q) if kind is SystemKind.MAGNETIC else s.p
    return 0.5 * dual_norm(s.q, p) ** 2


def legendre(kind: SystemKind, s: TangentState) -> CotangentState:
    y = s.q.y
    px = s.v.vx / y**2
    py = s.v.vy / y**2
    if kind == SystemKind.MAGNETIC:
        px = px + 1.0 / y
    return CotangentState(s.q, Covector(px, py))


def legendre_inverse(kind: SystemKind, s: CotangentState) -> TangentState:
    y = s.q.y
    vx = y**2 * s.p.px
    vy = y**2 * s.p.py
    if kind == SystemKind.MAGNETIC:
        vx = vx - y
    return TangentState(s.q, TangentVector(vx, vy))
