"""Exact horocycles, geodesics and the unit tangent fields of their foliations.

Horocycles tangent to ``a`` are the leaves of the invariant set of the
critical magnetic flow; the three geodesic foliations (vertical lines,
geodesics sharing an endpoint, geodesics sharing a center) are invariant
under the geodesic flow. All curves are parametrised by hyperbolic arc length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from horocycle_flow.geom import (
    DegenerateParameterError,
    HalfPlanePoint,
    Real,
    TangentVector,
)
from horocycle_flow.mechanics import SystemKind, TangentState

_INFINITY_NAMES = ("inf", "infinity", "+inf", "∞")


@dataclass(frozen=True, slots=True)
class TangencyPoint:
    """A point of the boundary: a real number or the point at infinity (``value is None``)."""

    value: float | None

    def __post_init__(self) -> None:
        if self.value is not None and not math.isfinite(self.value):
            raise ValueError(f"use INFINITY for the point at infinity, not {self.value!r}")

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @property
    def real(self) -> float:
        if self.value is None:
            raise DegenerateParameterError("the point at infinity has no real coordinate")
        return self.value

    @classmethod
    def parse(cls, text: str) -> TangencyPoint:
        if text.strip().lower() in _INFINITY_NAMES:
            return INFINITY
        return cls(float(text))

    def __str__(self) -> str:
        return "inf" if self.value is None else repr(self.value)


INFINITY = TangencyPoint(None)


def tangency(a: TangencyPoint | float | str | None) -> TangencyPoint:
    if isinstance(a, TangencyPoint):
        return a
    if a is None:
        return INFINITY
    if isinstance(a, str):
        return TangencyPoint.parse(a)
    if math.isinf(a):
        return INFINITY
    return TangencyPoint(float(a))


@dataclass(frozen=True, slots=True)
class CurveParams:
    """Leaf index of a foliation: tangency/end point ``a`` and curve index ``b``."""

    a: TangencyPoint
    b: Real

    def check_horocycle(self) -> CurveParams:
        if np.any(np.asarray(self.b) <= 0):
            raise DegenerateParameterError(f"horocycle index b={self.b} must be positive")
        return self


def horocycle(a: float, b: Real, t: Real) -> TangentState:
    """Unit-speed horocycle tangent to ``a``; ``b`` is the inverse Euclidean diameter."""
    CurveParams(TangencyPoint(float(a)), b).check_horocycle()
    s = 1.0 + t**2
    d = b * s
    return TangentState.of(a + t / d, 1.0 / d, (1.0 - t**2) / (d * s), -2.0 * t / (d * s))


def horocycle_invert(a: float, q: HalfPlanePoint) -> tuple[Real, Real]:
    """(t, b) with horocycle(a, b, t) at ``q``."""
    dx = q.x - a
    return dx / q.y, q.y / (dx**2 + q.y**2)


def horocycle_unit_field(a: TangencyPoint | float | str, q: HalfPlanePoint) -> TangentVector:
    a = tangency(a)
    if a.is_infinite:
        return TangentVector(-q.y, 0.0 * q.y)
    dx = q.x - a.real
    scale = q.y / (dx**2 + q.y**2)
    return TangentVector(scale * (q.y**2 - dx**2), scale * (-2.0 * dx * q.y))


def geodesic_circle(a: float, b: Real, t: Real) -> TangentState:
    """Unit-speed semicircular geodesic with endpoints ``a - 1/b`` and ``a`` (reached as t -> +inf)."""
    if np.any(np.asarray(b) == 0):
        raise DegenerateParameterError(
            "b=0 degenerates to a vertical ray; use geodesic_vertical"
        )
    e = np.exp(t)
    d = b**2 + e**2
    return TangentState.of(
        a - b / d,
        e / d,
        e * 2.0 * e * b / d**2,
        e * (b**2 - e**2) / d**2,
    )


def geodesic_vertical(b: float, t: Real, direction: int = 1) -> TangentState:
    if direction not in (1, -1):
        raise ValueError(f"direction must be +1 or -1, got {direction}")
    y = np.exp(direction * t)
    return TangentState.of(b + 0.0 * y, y, 0.0 * y, direction * y)


def vertical_unit_field(q: HalfPlanePoint, direction: int = 1) -> TangentVector:
    if direction not in (1, -1):
        raise ValueError(f"direction must be +1 or -1, got {direction}")
    return TangentVector(0.0 * q.y, direction * q.y)


def geodesic_endpoint_unit_field(a: float, q: HalfPlanePoint) -> TangentVector:
    """Unit tangent of the geodesic through ``q`` that ends at ``a``."""
    dx = q.x - a
    scale = q.y / (dx**2 + q.y**2)
    return TangentVector(scale * (-2.0 * dx * q.y), scale * (dx**2 - q.y**2))


def geodesic_center_unit_field(a: float, q: HalfPlanePoint) -> TangentVector:
    """Unit tangent (clockwise) of the semicircle centered at ``a`` through ``q``."""
    dx = q.x - a
    scale = q.y / np.sqrt(dx**2 + q.y**2)
    return TangentVector(scale * q.y, -scale * dx)


def _check_angle(theta: Real, upper: float) -> None:
    theta = np.asarray(theta)
    if np.any(theta <= 0.0) or np.any(theta >= upper):
        raise DegenerateParameterError(
            f"theta must lie strictly inside (0, {upper:.6g}); the ends are boundary points"
        )


def polar_horocycle(r: Real, theta: Real, a: float = 0.0) -> TangentState:
    """Point and unit tangent on the horocycle of Euclidean radius ``r`` tangent to ``a``."""
    if np.any(np.asarray(r) <= 0):
        raise DegenerateParameterError(f"radius r={r} must be positive")
    _check_angle(theta, 2.0 * np.pi)
    c, s = np.cos(theta), np.sin(theta)
    y = r * (1.0 - c)
    return TangentState.of(a - r * s, y, -y * c, y * s)


def polar_horocycle_invert(q: HalfPlanePoint, a: float = 0.0) -> tuple[Real, Real]:
    """(r, theta) with theta in (0, 2 pi)."""
    dx = q.x - a
    rho2 = dx**2 + q.y**2
    sin_theta = -2.0 * dx * q.y / rho2
    cos_theta = (dx**2 - q.y**2) / rho2
    theta = np.mod(np.arctan2(sin_theta, cos_theta), 2.0 * np.pi)
    return rho2 / (2.0 * q.y), theta


def polar_geodesic(r: Real, theta: Real, a: float = 0.0) -> TangentState:
    """Point and unit tangent on the geodesic semicircle of Euclidean radius ``r`` centered at ``a``."""
    if np.any(np.asarray(r) <= 0):
        raise DegenerateParameterError(f"radius r={r} must be positive")
    _check_angle(theta, np.pi)
    c, s = np.cos(theta), np.sin(theta)
    y = r * s
    return TangentState.of(a - r * c, y, y * s, y * c)


class Foliation(StrEnum):
    """Invariant foliations with closed-form unit tangent fields."""

    HOROCYCLE = "horocycle"
    GEODESIC_VERTICAL = "geodesic-vertical"
    GEODESIC_ENDPOINT = "geodesic-endpoint"
    GEODESIC_CENTER = "geodesic-center"

    @property
    def system(self) -> SystemKind:
        if self == Foliation.HOROCYCLE:
            return SystemKind.MAGNETIC
        return SystemKind.KINETIC


def foliation_unit_field(
    foliation: Foliation | str,
    a: TangencyPoint | float | str,
    q: HalfPlanePoint,
    direction: int = 1,
) -> TangentVector:
    """Unit tangent at ``q`` of the leaf through ``q``.

    ``a`` is the tangency point (horocycles), the common endpoint or the
    common center (geodesics); ``direction`` flips the geodesic leaves. The
    endpoint foliation at ``a = inf`` is the vertical one.
    """
    foliation = Foliation(foliation)
    a = tangency(a)
    if foliation == Foliation.HOROCYCLE:
        return horocycle_unit_field(a, q)
    if foliation == Foliation.GEODESIC_VERTICAL or (
        foliation == Foliation.GEODESIC_ENDPOINT and a.is_infinite
    ):
        return vertical_unit_field(q, direction)
    if foliation == Foliation.GEODESIC_ENDPOINT:
        return geodesic_endpoint_unit_field(a.real, q) * direction
    return geodesic_center_unit_field(a.real, q) * direction
