"""Primitives of the hyperbolic half-plane H = {(x, y) : y > 0}.

The metric is g = (dx^2 + dy^2) / y^2 (curvature -1). Every function here is
pure and works component-wise, so the coordinates may be floats or numpy
arrays of a common shape (vectorised grid sweeps).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Iterator, Union

import numpy as np
from numpy.typing import NDArray

if TYPE_CHECKING:
    from horocycle_flow.env import GridSettings

Real = Union[float, NDArray[np.float64]]

Y_MIN = 1e-9


class HorocycleFlowError(Exception):
    """Root of the package exceptions."""


class BoundaryError(HorocycleFlowError, ValueError):
    """A point sits on (or beyond) the boundary y <= y_min of the half-plane."""


class DegenerateParameterError(HorocycleFlowError, ValueError):
    """A curve parameter lies where the closed-form parametrisation degenerates."""


@dataclass(frozen=True, slots=True)
class HalfPlanePoint:
    x: Real
    y: Real

    def __post_init__(self) -> None:
        y = np.asarray(self.y)
        if not np.all(np.isfinite(np.asarray(self.x))) or not np.all(np.isfinite(y)):
            raise BoundaryError(f"non-finite point ({self.x}, {self.y})")
        if np.any(y <= Y_MIN):
            raise BoundaryError(
                f"y={np.min(y)!r} is not above y_min={Y_MIN}; the point is on the boundary"
            )

    def __iter__(self) -> Iterator[Real]:
        yield self.x
        yield self.y

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.x, self.y], dtype=float)


def _check_finite(kind: str, a: Real, b: Real) -> None:
    if not np.all(np.isfinite(np.asarray(a))) or not np.all(np.isfinite(np.asarray(b))):
        raise ValueError(f"non-finite {kind} ({a}, {b})")


@dataclass(frozen=True, slots=True)
class TangentVector:
    vx: Real
    vy: Real

    def __post_init__(self) -> None:
        _check_finite("tangent vector", self.vx, self.vy)

    def __iter__(self) -> Iterator[Real]:
        yield self.vx
        yield self.vy

    def __add__(self, other: TangentVector) -> TangentVector:
        return TangentVector(self.vx + other.vx, self.vy + other.vy)

    def __sub__(self, other: TangentVector) -> TangentVector:
        return TangentVector(self.vx - other.vx, self.vy - other.vy)

    def __neg__(self) -> TangentVector:
        return TangentVector(-self.vx, -self.vy)

    def __mul__(self, scale: Real) -> TangentVector:
        return TangentVector(self.vx * scale, self.vy * scale)

    __rmul__ = __mul__

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.vx, self.vy], dtype=float)


@dataclass(frozen=True, slots=True)
class Covector:
    px: Real
    py: Real

    def __post_init__(self) -> None:
        _check_finite("covector", self.px, self.py)

    def __iter__(self) -> Iterator[Real]:
        yield self.px
        yield self.py

    def __add__(self, other: Covector) -> Covector:
        return Covector(self.px + other.px, self.py + other.py)

    def __sub__(self, other: Covector) -> Covector:
        return Covector(self.px - other.px, self.py - other.py)

    def __neg__(self) -> Covector:
        return Covector(-self.px, -self.py)

    def __mul__(self, scale: Real) -> Covector:
        return Covector(self.px * scale, self.py * scale)

    __rmul__ = __mul__

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.px, self.py], dtype=float)


@dataclass(frozen=True, slots=True)
class OneForm:
    """A covector field q -> alpha_q with a label used in reports."""

    evaluator: Callable[[HalfPlanePoint], Covector]
    label: str

    def __call__(self, q: HalfPlanePoint) -> Covector:
        return self.evaluator(q)

    def __add__(self, other: OneForm) -> OneForm:
        return OneForm(lambda q: self(q) + other(q), f"{self.label}+{other.label}")

    def __sub__(self, other: OneForm) -> OneForm:
        return OneForm(lambda q: self(q) - other(q), f"{self.label}-{other.label}")

    def scaled(self, factor: float) -> OneForm:
        return OneForm(lambda q: self(q) * factor, f"{factor:g}*{self.label}")


@dataclass(frozen=True, slots=True)
class GridSpec:
    """Rectangular nx x ny grid inside the half-plane."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self) -> None:
        if self.y_min <= Y_MIN:
            raise BoundaryError(f"grid y_min={self.y_min} is outside the half-plane")
        if self.x_min >= self.x_max or self.y_min >= self.y_max:
            raise ValueError("grid ranges must be increasing")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 points per axis")

    @classmethod
    def standard(cls) -> GridSpec:
        return cls(-5.0, 5.0, 0.1, 10.0, 101, 101)

    @classmethod
    def from_settings(cls, grid: GridSettings) -> GridSpec:
        return cls(grid.x_min, grid.x_max, grid.y_min, grid.y_max, grid.nx, grid.ny)

    def points(self) -> HalfPlanePoint:
        xs = np.linspace(self.x_min, self.x_max, self.nx)
        ys = np.linspace(self.y_min, self.y_max, self.ny)
        x, y = np.meshgrid(xs, ys, indexing="ij")
        return HalfPlanePoint(x, y)

    def to_dict(self) -> dict[str, object]:
        return {
            "x": [self.x_min, self.x_max],
            "y": [self.y_min, self.y_max],
            "nx": self.nx,
            "ny": self.ny,
        }


def sample_points(
    n: int,
    rng: np.random.Generator,
    x_range: tuple[float, float] = (-10.0, 10.0),
    y_range: tuple[float, float] = (0.01, 100.0),
) -> HalfPlanePoint:
    """Random points, uniform in x and log-uniform in y."""
    x = rng.uniform(*x_range, size=n)
    y = np.exp(rng.uniform(np.log(y_range[0]), np.log(y_range[1]), size=n))
    return HalfPlanePoint(x, y)


def metric_inner(q: HalfPlanePoint, u: TangentVector, v: TangentVector) -> Real:
    return (u.vx * v.vx + u.vy * v.vy) / q.y**2


def metric_norm(q: HalfPlanePoint, v: TangentVector) -> Real:
    return np.hypot(v.vx, v.vy) / q.y


def dual_norm(q: HalfPlanePoint, p: Covector) -> Real:
    return q.y * np.hypot(p.px, p.py)


def eta(q: HalfPlanePoint) -> Covector:
    """The magnetic potential dx / y."""
    return Covector(1.0 / q.y, 0.0 * q.y)


ETA = OneForm(eta, "eta")


def lorentz_force(u: TangentVector) -> TangentVector:
    # rotation by +90 degrees, independent of the base point
    return TangentVector(-u.vy, u.vx)


def area_form(q: HalfPlanePoint, u: TangentVector, v: TangentVector) -> Real:
    """d(eta)_q(u, v), the hyperbolic area form."""
    return (u.vx * v.vy - u.vy * v.vx) / q.y**2


def christoffel_acceleration(
    q: HalfPlanePoint, v: TangentVector, a: TangentVector
) -> TangentVector:
    """Covariant acceleration nabla_t(gamma') from coordinate velocity and acceleration.

    Christoffel symbols of the half-plane: G^x_xy = G^x_yx = -1/y,
    G^y_xx = 1/y, G^y_yy = -1/y.
    """
    y = q.y
    return TangentVector(
        a.vx - 2.0 * v.vx * v.vy / y,
        a.vy + (v.vx**2 - v.vy**2) / y,
    )
