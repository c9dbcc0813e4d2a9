from __future__ import annotations

from typing import Any, Callable

import numpy as np
from tabulate import tabulate

from horocycle_flow.closed_forms import foliation_unit_field
from horocycle_flow.env import Settings
from horocycle_flow.flows import (
    BoundaryEscapeError,
    Bundle,
    VectorField,
    integrate,
    relative_spread,
    sample_periods,
    subcritical_period,
)
from horocycle_flow.geom import GridSpec, HalfPlanePoint
from horocycle_flow.hj import verify_solution
from horocycle_flow.mane import circle_family, estimate_critical_value
from horocycle_flow.mechanics import CotangentState, TangentState

from .config import ExitCode, OutputFormat, RunConfig
from .output import (
    FOLIATION_COLUMNS,
    emit,
    render_csv,
    render_json,
    render_table_json,
    trajectory_table,
)

Diagnostic = Callable[[Any], Any]

PERIOD_START_POINTS = ((0.0, 1.0), (3.0, 0.4))


def _emit_table(config: RunConfig, columns: tuple[str, ...], rows: np.ndarray) -> None:
    if config.format == OutputFormat.JSON:
        emit(render_table_json(columns, rows), config.output)
    else:
        emit(render_csv(columns, rows), config.output)


def cmd_simulate(config: RunConfig, settings: Settings, diagnostic: Diagnostic) -> ExitCode:
    assert config.q0 is not None and config.T is not None
    kind = config.kind
    if config.bundle == Bundle.TANGENT:
        field = VectorField.lagrangian(kind)
        s0: TangentState | CotangentState = TangentState.of(*config.q0, *config.v0)  # type: ignore[misc]
    else:
        field = VectorField.hamiltonian(kind)
        s0 = CotangentState.of(*config.q0, *config.p0)  # type: ignore[misc]

    code = ExitCode.OK
    try:
        trajectory = integrate(field, s0, config.T, config.dt, config.record_every)
    except BoundaryEscapeError as ex:
        diagnostic(f"{ex}; writing the {len(ex.trajectory)} samples computed so far")
        trajectory = ex.trajectory
        code = ExitCode.BOUNDARY_ESCAPE

    columns, rows = trajectory_table(trajectory)
    _emit_table(config, columns, rows)
    diagnostic(
        tabulate(
            [
                ("system", f"{kind}/{config.bundle}"),
                ("samples", len(trajectory)),
                ("final t", trajectory.final_time),
                ("energy drift", trajectory.energy_drift),
                ("momentum drift", trajectory.momentum_drift),
            ],
            tablefmt="psql",
        )
    )
    return code


def cmd_verify(config: RunConfig, settings: Settings, diagnostic: Diagnostic) -> ExitCode:
    u = config.solution()
    settings = settings.model_copy(
        update={
            "dt": config.dt,
            "workers": config.workers,
            "seed": config.seed,
            "grid": config.grid,
            "tolerances": config.tolerances,
        }
    )
    report = verify_solution(u, settings, kind=config.kind, k=config.k, stdout=diagnostic)
    emit(render_json(report.to_dict()), config.output)
    if not report.passed:
        diagnostic(f"verification of {report.solution} failed")
        return ExitCode.VERIFICATION_FAILED
    return ExitCode.OK


def cmd_period(config: RunConfig, settings: Settings, diagnostic: Diagnostic) -> ExitCode:
    points = [HalfPlanePoint(x, y) for x, y in PERIOD_START_POINTS]
    samples = sample_periods(
        config.k,
        points,
        config.samples,
        np.random.default_rng(config.seed),
        dt=config.dt,
        budget=config.budget,
        tol=config.tolerances.period_return,
        max_workers=config.workers,
    )
    spread = relative_spread([sample.period for sample in samples])
    payload = {
        "k": config.k,
        "dt": config.dt,
        "samples": [
            {
                "q0": [sample.q0.x, sample.q0.y],
                "v0": [sample.v0.vx, sample.v0.vy],
                "period": sample.period,
            }
            for sample in samples
        ],
        "max_relative_spread": spread,
        "analytic_period": subcritical_period(config.k),
    }
    emit(render_json(payload), config.output)
    diagnostic(
        tabulate(
            [(i, sample.q0.x, sample.q0.y, sample.period) for i, sample in enumerate(samples)],
            headers=["sample", "x0", "y0", "period"],
            tablefmt="psql",
        )
    )
    if spread >= config.tolerances.period_spread:
        diagnostic(f"period spread {spread:.3e} exceeds {config.tolerances.period_spread}")
        return ExitCode.VERIFICATION_FAILED
    return ExitCode.OK


def cmd_mane(config: RunConfig, settings: Settings, diagnostic: Diagnostic) -> ExitCode:
    mane = config.mane
    curves = circle_family(mane.heights, mane.ratios, mane.speeds, mane.parametrization)
    estimate = estimate_critical_value(
        config.solution(),
        curves,
        GridSpec.from_settings(config.grid),
        nodes=mane.nodes,
        curves_label=f"{mane.parametrization}-speed circles ({len(curves)})",
        max_workers=config.workers,
    )
    emit(render_json(estimate.to_dict()), config.output)
    diagnostic(
        tabulate(
            [(key, value) for key, value in estimate.to_dict().items()],
            tablefmt="psql",
        )
    )
    return ExitCode.OK


def cmd_foliation(config: RunConfig, settings: Settings, diagnostic: Diagnostic) -> ExitCode:
    q = GridSpec.from_settings(config.grid).points()
    v = foliation_unit_field(config.foliation, config.tangency, q, config.direction)
    x, y = np.broadcast_arrays(q.x, q.y)
    vx, vy = np.broadcast_arrays(v.vx, v.vy)
    rows = np.column_stack([x.ravel(), y.ravel(), vx.ravel(), vy.ravel()])
    _emit_table(config, FOLIATION_COLUMNS, rows)
    diagnostic(f"{len(rows)} samples of the {config.foliation} foliation (a={config.tangency})")
    return ExitCode.OK


COMMANDS: dict[str, Callable[[RunConfig, Settings, Diagnostic], ExitCode]] = {
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "period": cmd_period,
    "mane": cmd_mane,
    "foliation": cmd_foliation,
}
