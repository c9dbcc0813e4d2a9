from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np
from numpy.typing import NDArray

from horocycle_flow.env import GRID_VERSION, Settings, ToleranceSettings
from horocycle_flow.geom import GridSpec, HalfPlanePoint, sample_points
from horocycle_flow.logging import getHorocycleFlowLogger
from horocycle_flow.mechanics import SystemKind

from .catalog import HJSolution, evaluate
from .checks import (
    check_closed,
    check_exact,
    finite_difference_gradient,
    gradient_mismatch,
    graph_level_deviation,
    parallel_graph_invariance,
    residual,
    square_loop,
)
from .pipeline import (
    Check,
    CheckResult,
    PipelineResult,
    SummaryCallback,
    ToleranceCallback,
    run_checks,
)

logger = getHorocycleFlowLogger("hj.verify")

REFERENCE_POINT = (0.0, 1.0)


@dataclass(frozen=True)
class ResidualReport:
    """Per-point values of one verification run and the statistics derived from them."""

    solution: str
    kind: SystemKind
    grid: GridSpec
    residuals: NDArray[np.float64]
    fd_residuals: NDArray[np.float64]
    grad_mismatch: NDArray[np.float64]
    level_deviation: NDArray[np.float64]
    max_curl: float
    loop_integral: float
    reference_residual: float
    invariance_deviation: float | None
    tolerances: ToleranceSettings = field(default_factory=ToleranceSettings)

    @property
    def max_residual(self) -> float:
        return float(np.max(np.abs(self.residuals)))

    @property
    def mean_residual(self) -> float:
        return float(np.mean(np.abs(self.residuals)))

    @property
    def max_fd_residual(self) -> float:
        return float(np.max(np.abs(self.fd_residuals)))

    @property
    def max_grad_mismatch(self) -> float:
        return float(np.max(self.grad_mismatch))

    @property
    def max_level_deviation(self) -> float:
        return float(np.max(np.abs(self.level_deviation)))

    @property
    def passed(self) -> bool:
        tol = self.tolerances
        invariant = (
            self.invariance_deviation is not None
            and self.invariance_deviation < tol.invariance
        )
        return (
            self.max_residual < tol.residual
            and self.max_fd_residual < tol.fd_residual
            and self.max_grad_mismatch < tol.gradient
            and self.max_level_deviation < tol.level
            and self.max_curl < tol.closed
            and abs(self.loop_integral) < tol.exact
            and invariant
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "solution": self.solution,
            "system": str(self.kind),
            "grid": {**self.grid.to_dict(), "version": GRID_VERSION},
            "max_residual": self.max_residual,
            "mean_residual": self.mean_residual,
            "reference_residual": self.reference_residual,
            "max_fd_residual": self.max_fd_residual,
            "max_grad_mismatch": self.max_grad_mismatch,
            "max_level_deviation": self.max_level_deviation,
            "max_curl": self.max_curl,
            "loop_integral": self.loop_integral,
            "invariance_deviation": self.invariance_deviation,
            "pass": self.passed,
        }


class ResidualCheck(Check):
    def __init__(self, kind: SystemKind, u: HJSolution, q: HalfPlanePoint, k: float):
        self.kind, self.u, self.q, self.k = kind, u, q, k

    def __call__(self, results: PipelineResult) -> CheckResult:
        values = residual(self.kind, self.u, self.q, self.k)
        reference = residual(self.kind, self.u, HalfPlanePoint(*REFERENCE_POINT), self.k)
        return {
            "values": values,
            "max_residual": float(np.max(np.abs(values))),
            "reference_residual": float(reference),
        }

    @property
    def name(self) -> str:
        return "residual"


class GradientCheck(Check):
    def __init__(
        self, kind: SystemKind, u: HJSolution, q: HalfPlanePoint, k: float, h_scale: float
    ):
        self.kind, self.u, self.q, self.k, self.h_scale = kind, u, q, k, h_scale

    def __call__(self, results: PipelineResult) -> CheckResult:
        du = finite_difference_gradient(lambda point: evaluate(self.u, point), self.q, self.h_scale)
        fd_values = residual(self.kind, self.u, self.q, self.k, du=du)
        mismatch = gradient_mismatch(self.u, self.q, self.h_scale)
        return {
            "fd_values": fd_values,
            "mismatch": mismatch,
            "max_fd_residual": float(np.max(np.abs(fd_values))),
            "max_grad_mismatch": float(np.max(mismatch)),
        }

    @property
    def name(self) -> str:
        return "gradient"


class ClosedCheck(Check):
    def __init__(self, u: HJSolution, grid: GridSpec, h_scale: float):
        self.u, self.grid, self.h_scale = u, grid, h_scale

    def __call__(self, results: PipelineResult) -> CheckResult:
        return {"max_curl": check_closed(self.u.one_form(), self.grid, self.h_scale)}

    @property
    def name(self) -> str:
        return "closed"


class ExactCheck(Check):
    """Loop integral of du around a square in the middle of the grid."""

    def __init__(self, u: HJSolution, grid: GridSpec):
        self.u, self.grid = u, grid

    def __call__(self, results: PipelineResult) -> CheckResult:
        grid = self.grid
        center = (0.5 * (grid.x_min + grid.x_max), 0.5 * (grid.y_min + grid.y_max))
        half_width = 0.25 * min(grid.x_max - grid.x_min, grid.y_max - grid.y_min)
        return {"loop_integral": check_exact(self.u.one_form(), square_loop(center, half_width))}

    @property
    def name(self) -> str:
        return "exact"


class LevelCheck(Check):
    def __init__(self, kind: SystemKind, u: HJSolution, q: HalfPlanePoint, tol: float):
        self.kind, self.u, self.q, self.tol = kind, u, q, tol

    def __call__(self, results: PipelineResult) -> CheckResult:
        values = graph_level_deviation(self.kind, self.u.one_form(), self.q)
        deviation = float(np.max(np.abs(values)))
        return {"values": values, "max_level_deviation": deviation, "on_level": deviation < self.tol}

    @property
    def name(self) -> str:
        return "level"


class InvarianceCheck(Check):
    """Skipped (deviation ``None``) when the graph is not inside the energy level."""

    def __init__(
        self,
        kind: SystemKind,
        u: HJSolution,
        starts: HalfPlanePoint,
        T: float,
        dt: float,
        max_workers: int | None,
    ):
        self.kind, self.u, self.starts = kind, u, starts
        self.T, self.dt, self.max_workers = T, dt, max_workers

    def __call__(self, results: PipelineResult) -> CheckResult:
        if not results.get("level", {}).get("on_level", False):
            logger.info(f"{self.u.label}: graph is off the energy level, invariance skipped")
            return {"invariance_deviation": None}
        deviation = parallel_graph_invariance(
            self.kind, self.u, self.starts, self.T, self.dt, self.max_workers
        )
        return {"invariance_deviation": deviation}

    @property
    def name(self) -> str:
        return "invariance"


def invariance_starts(
    n: int, rng: np.random.Generator, grid: GridSpec | None = None
) -> HalfPlanePoint:
    """Start points in the central part of the grid, away from the boundary."""
    grid = GridSpec.standard() if grid is None else grid
    width = 0.3 * (grid.x_max - grid.x_min)
    center = 0.5 * (grid.x_min + grid.x_max)
    y_low = max(grid.y_min, 0.5)
    y_high = max(min(grid.y_max, 3.0), 2.0 * y_low)
    return sample_points(n, rng, (center - width, center + width), (y_low, y_high))


def verify_solution(
    u: HJSolution,
    settings: Settings | None = None,
    kind: SystemKind | None = None,
    k: float = 0.5,
    grid: GridSpec | None = None,
    stdout: Callable[[Any], Any] = logger.info,
) -> ResidualReport:
    """Residual, gradient, closedness, exactness, level and invariance checks of ``u`` on a grid."""
    settings = Settings() if settings is None else settings
    kind = u.kind if kind is None else SystemKind(kind)
    grid = GridSpec.from_settings(settings.grid) if grid is None else grid
    q = grid.points()
    starts = invariance_starts(
        settings.invariance_starts, np.random.default_rng(settings.seed), grid
    )

    tol = settings.tolerances

    def within(metric: str, tolerance: float) -> ToleranceCallback:
        return ToleranceCallback(metric, tolerance, stdout)

    checks: list[Check] = [
        ResidualCheck(kind, u, q, k).with_callbacks(within("max_residual", tol.residual)),
        GradientCheck(kind, u, q, k, settings.fd_step).with_callbacks(
            within("max_fd_residual", tol.fd_residual), within("max_grad_mismatch", tol.gradient)
        ),
        ClosedCheck(u, grid, settings.fd_step).with_callbacks(within("max_curl", tol.closed)),
        ExactCheck(u, grid).with_callbacks(within("loop_integral", tol.exact)),
        LevelCheck(kind, u, q, tol.level).with_callbacks(within("max_level_deviation", tol.level)),
        InvarianceCheck(
            kind, u, starts, settings.invariance_T, settings.dt, settings.workers
        ).with_callbacks(within("invariance_deviation", tol.invariance)),
    ]
    results = run_checks(checks, callbacks=[SummaryCallback(stdout)], stdout=logger.debug)

    return ResidualReport(
        solution=u.label,
        kind=kind,
        grid=grid,
        residuals=results["residual"]["values"],
        fd_residuals=results["gradient"]["fd_values"],
        grad_mismatch=results["gradient"]["mismatch"],
        level_deviation=results["level"]["values"],
        max_curl=results["closed"]["max_curl"],
        loop_integral=results["exact"]["loop_integral"],
        reference_residual=results["residual"]["reference_residual"],
        invariance_deviation=results["invariance"]["invariance_deviation"],
        tolerances=settings.tolerances,
    )
