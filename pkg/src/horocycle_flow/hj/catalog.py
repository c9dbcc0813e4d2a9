"""Smooth solutions of the Hamilton-Jacobi equation at the critical level 1/2.

Magnetic system: the constants and u_a = 2 arctan((x - a) / y) + c, one for
every tangency point a (u_inf = 0). Kinetic system: +-log y, the same-endpoint
family +-(log y - log((x - a)^2 + y^2)) and the same-center family
+-arcsinh((x - a) / y), each up to an additive constant. The kinetic list is
not exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np

from horocycle_flow.closed_forms import INFINITY, TangencyPoint, tangency
from horocycle_flow.geom import (
    Covector,
    DegenerateParameterError,
    HalfPlanePoint,
    OneForm,
    Real,
)
from horocycle_flow.mechanics import SystemKind


class HJFamily(StrEnum):
    MAGNETIC_ARCTAN = "magnetic_arctan"
    CONSTANT = "constant"
    GEODESIC_LOG_VERTICAL = "geodesic_log_vertical"
    GEODESIC_LOG_ENDPOINT = "geodesic_log_endpoint"
    GEODESIC_ARCSINH = "geodesic_arcsinh"
    # u = x, a non-solution witness for negative controls
    ADHOC_X = "adhoc_x"

    @property
    def system(self) -> SystemKind:
        if self in (HJFamily.MAGNETIC_ARCTAN, HJFamily.CONSTANT, HJFamily.ADHOC_X):
            return SystemKind.MAGNETIC
        return SystemKind.KINETIC

    @property
    def signed(self) -> bool:
        return self.system == SystemKind.KINETIC


@dataclass(frozen=True, slots=True)
class HJSolution:
    family: HJFamily
    a: TangencyPoint = field(default=INFINITY)
    sign: int = 1
    c: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", HJFamily(self.family))
        object.__setattr__(self, "a", tangency(self.a))
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.sign == -1 and not self.family.signed:
            raise ValueError(f"{self.family} solutions are not symmetric under u -> -u")
        if self.family == HJFamily.GEODESIC_ARCSINH and self.a.is_infinite:
            raise DegenerateParameterError("geodesic_arcsinh needs a finite center a")

    @property
    def kind(self) -> SystemKind:
        return self.family.system

    @property
    def is_solution(self) -> bool:
        return self.family != HJFamily.ADHOC_X

    @property
    def label(self) -> str:
        parts = []
        if self.family in (
            HJFamily.MAGNETIC_ARCTAN,
            HJFamily.GEODESIC_LOG_ENDPOINT,
            HJFamily.GEODESIC_ARCSINH,
        ):
            parts.append(f"a={self.a}")
        if self.family.signed:
            parts.append("sign=" + ("+" if self.sign > 0 else "-"))
        if self.c:
            parts.append(f"c={self.c:g}")
        return f"{self.family}({', '.join(parts)})" if parts else str(self.family)

    def negated(self) -> HJSolution:
        """-u, a solution again for the reversible (kinetic) families."""
        return HJSolution(self.family, self.a, -self.sign, -self.c)

    def with_constant(self, c: float) -> HJSolution:
        return HJSolution(self.family, self.a, self.sign, c)

    def one_form(self) -> OneForm:
        return OneForm(lambda q: gradient(self, q), f"d{self.label}")


def evaluate(u: HJSolution, q: HalfPlanePoint) -> Real:
    x, y = q.x, q.y
    zero = 0.0 * x
    match u.family:
        case HJFamily.CONSTANT:
            value = zero
        case HJFamily.ADHOC_X:
            value = x
        case HJFamily.MAGNETIC_ARCTAN:
            value = zero if u.a.is_infinite else 2.0 * np.arctan((x - u.a.real) / y)
        case HJFamily.GEODESIC_LOG_VERTICAL:
            value = u.sign * np.log(y)
        case HJFamily.GEODESIC_LOG_ENDPOINT:
            if u.a.is_infinite:
                value = u.sign * np.log(y)
            else:
                value = u.sign * (np.log(y) - np.log((x - u.a.real) ** 2 + y**2))
        case HJFamily.GEODESIC_ARCSINH:
            value = u.sign * np.arcsinh((x - u.a.real) / y)
    return value + u.c


def gradient(u: HJSolution, q: HalfPlanePoint) -> Covector:
    x, y = q.x, q.y
    zero = 0.0 * x
    match u.family:
        case HJFamily.CONSTANT:
            return Covector(zero, zero)
        case HJFamily.ADHOC_X:
            return Covector(1.0 + zero, zero)
        case HJFamily.MAGNETIC_ARCTAN:
            if u.a.is_infinite:
                return Covector(zero, zero)
            dx = x - u.a.real
            r2 = dx**2 + y**2
            return Covector(2.0 * y / r2, -2.0 * dx / r2)
        case HJFamily.GEODESIC_LOG_VERTICAL:
            return Covector(zero, u.sign / y)
        case HJFamily.GEODESIC_LOG_ENDPOINT:
            if u.a.is_infinite:
                return Covector(zero, u.sign / y)
            dx = x - u.a.real
            r2 = dx**2 + y**2
            return Covector(u.sign * (-2.0 * dx) / r2, u.sign * (dx**2 - y**2) / (y * r2))
        case HJFamily.GEODESIC_ARCSINH:
            dx = x - u.a.real
            r = np.sqrt(dx**2 + y**2)
            return Covector(u.sign / r, u.sign * (-dx / y) / r)
    raise ValueError(f"unknown family {u.family}")


def adhoc_x() -> HJSolution:
    return HJSolution(HJFamily.ADHOC_X)


def magnetic_catalog(points: tuple[float | None, ...] = (-2.0, 0.0, 3.0, None)) -> list[HJSolution]:
    """The constant solution and u_a for every tangency point in ``points`` (None is infinity)."""
    return [HJSolution(HJFamily.CONSTANT)] + [
        HJSolution(HJFamily.MAGNETIC_ARCTAN, tangency(a)) for a in points
    ]


def kinetic_catalog(points: tuple[float | None, ...] = (-2.0, 0.0, 3.0, None)) -> list[HJSolution]:
    solutions: list[HJSolution] = []
    for sign in (1, -1):
        solutions.append(HJSolution(HJFamily.GEODESIC_LOG_VERTICAL, sign=sign))
        for a in points:
            solutions.append(HJSolution(HJFamily.GEODESIC_LOG_ENDPOINT, tangency(a), sign))
            if a is not None:
                solutions.append(HJSolution(HJFamily.GEODESIC_ARCSINH, tangency(a), sign))
    return solutions
