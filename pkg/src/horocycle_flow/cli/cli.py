"""``horocycle-flow`` command line.

Exit codes: 0 success, 2 invalid flags, 3 boundary escape, 4 verification
failure, 5 no return (period detection).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from horocycle_flow import __version__
from horocycle_flow.closed_forms import Foliation
from horocycle_flow.env import Settings, load_settings
from horocycle_flow.flows import BoundaryEscapeError, Bundle, NoReturnError
from horocycle_flow.geom import HorocycleFlowError
from horocycle_flow.logging import register_logger
from horocycle_flow.mechanics import SystemKind
from horocycle_flow.utils import parse_pair

from .commands import COMMANDS
from .config import CANDIDATES, FAMILIES, ExitCode, OutputFormat, RunConfig

PAIR_FLAGS = ("--q0", "--v0", "--p0")


def _sign(text: str) -> int:
    signs = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    if text not in signs:
        raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}")
    return signs[text]


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(",") if part.strip())


def _pair(text: str) -> tuple[float, float]:
    try:
        return parse_pair(text)
    except ValueError as ex:
        raise argparse.ArgumentTypeError(str(ex)) from ex


def _join_pair_values(argv: list[str]) -> list[str]:
    """``--v0 -1,0`` -> ``--v0=-1,0`` so that argparse does not read ``-1,0`` as a flag."""
    joined: list[str] = []
    i = 0
    while i < len(argv):
        if argv[i] in PAIR_FLAGS and i + 1 < len(argv):
            joined.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            joined.append(argv[i])
            i += 1
    return joined


def _add_grid_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--nx", type=int, default=None, help="grid points along x")
    parser.add_argument("--ny", type=int, default=None, help="grid points along y")


def _add_output_flags(parser: argparse.ArgumentParser, table: bool) -> None:
    parser.add_argument("--output", "-o", type=Path, default=None, help="output file (stdout if omitted)")
    if table:
        parser.add_argument(
            "--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="horocycle-flow",
        description="Magnetic (horocycle) and geodesic flows on the hyperbolic half-plane.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=Path, default=None, help="key=value, YAML or JSON settings file")
    parser.add_argument("--log-file", type=Path, default=None, help="write diagnostics to this file")
    parser.add_argument("--workers", type=int, default=None, help="worker threads for parallel sweeps")

    sub = parser.add_subparsers(dest="command", required=True)
    systems = [kind.value for kind in SystemKind]

    simulate = sub.add_parser("simulate", help="integrate one orbit and write its samples")
    simulate.add_argument("--system", choices=systems, default=SystemKind.MAGNETIC.value)
    simulate.add_argument("--bundle", choices=[b.value for b in Bundle], default=Bundle.TANGENT.value)
    simulate.add_argument("--q0", type=_pair, required=True, help="x,y")
    simulate.add_argument("--v0", type=_pair, default=None, help="vx,vy (tangent flows)")
    simulate.add_argument("--p0", type=_pair, default=None, help="px,py (cotangent flows)")
    simulate.add_argument("--T", type=float, required=True)
    simulate.add_argument("--dt", type=float, default=None)
    simulate.add_argument("--record-every", type=int, default=None)
    _add_output_flags(simulate, table=True)

    verify = sub.add_parser("verify", help="check a Hamilton-Jacobi solution and its graph")
    verify.add_argument("--system", choices=systems, default=None)
    verify.add_argument("--family", choices=list(FAMILIES), required=True)
    verify.add_argument("--a", default=None, help="tangency point / center (a real or inf)")
    verify.add_argument("--sign", type=_sign, default=None)
    verify.add_argument("--k", type=float, default=None)
    verify.add_argument("--dt", type=float, default=None)
    _add_grid_flags(verify)
    _add_output_flags(verify, table=False)

    period = sub.add_parser("period", help="periods of subcritical orbits")
    period.add_argument("--k", type=float, required=True)
    period.add_argument("--samples", type=int, default=None)
    period.add_argument("--dt", type=float, default=None)
    period.add_argument("--seed", type=int, default=None)
    _add_output_flags(period, table=False)

    mane = sub.add_parser("mane", help="upper and lower bounds of the critical value")
    mane.add_argument("--candidate", choices=list(CANDIDATES), default=None)
    mane.add_argument("--a", default=None)
    mane.add_argument("--parametrization", choices=["hyperbolic", "euclidean"], default=None)
    mane.add_argument("--ratios", type=_floats, default=None, help="comma-separated radius ratios")
    mane.add_argument("--nodes", type=int, default=None)
    _add_grid_flags(mane)
    _add_output_flags(mane, table=False)

    foliation = sub.add_parser("foliation", help="sample the unit tangent field of a foliation")
    foliation.add_argument("--kind", choices=[f.value for f in Foliation], default=Foliation.HOROCYCLE.value)
    foliation.add_argument("--a", default=None)
    foliation.add_argument("--direction", type=_sign, default=None)
    _add_grid_flags(foliation)
    _add_output_flags(foliation, table=True)

    return parser


def _diagnostic_stream(log_file: Path | None) -> Callable[[Any], Any]:
    if log_file is None:
        return lambda message: print(message, file=sys.stderr)
    logger = register_logger(
        log_file, name="cli", tracing=True, trace_stream=sys.stderr, if_exist="clear"  # type: ignore[arg-type]
    )
    return logger.info


def _run_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    flags = vars(args)
    grid = settings.grid
    if flags.get("nx") is not None or flags.get("ny") is not None:
        grid = grid.model_validate(
            {**grid.model_dump(), **{key: flags[key] for key in ("nx", "ny") if flags.get(key) is not None}}
        )
    mane = settings.mane
    mane_updates = {
        key: flags[key] for key in ("parametrization", "ratios", "nodes") if flags.get(key) is not None
    }
    if mane_updates:
        mane = mane.model_validate({**mane.model_dump(), **mane_updates})

    return RunConfig.from_settings(
        settings,
        command=args.command,
        system=flags.get("system"),
        bundle=flags.get("bundle"),
        family=flags.get("family"),
        a=flags.get("a"),
        sign=flags.get("sign"),
        k=flags.get("k"),
        q0=flags.get("q0"),
        v0=flags.get("v0"),
        p0=flags.get("p0"),
        T=flags.get("T"),
        dt=flags.get("dt"),
        record_every=flags.get("record_every"),
        samples=flags.get("samples"),
        seed=flags.get("seed"),
        candidate=flags.get("candidate"),
        foliation=flags.get("kind"),
        direction=flags.get("direction"),
        grid=grid,
        mane=mane,
        output=flags.get("output"),
        format=flags.get("format"),
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_pair_values(list(sys.argv[1:] if argv is None else argv)))
    diagnostic = _diagnostic_stream(args.log_file)

    try:
        settings = load_settings(args.config, workers=args.workers)
        config = _run_config(args, settings)
    except (ValueError, FileNotFoundError) as ex:
        diagnostic(f"invalid flags: {ex}")
        return ExitCode.INVALID

    try:
        return int(COMMANDS[config.command](config, settings, diagnostic))
    except NoReturnError as ex:
        diagnostic(f"no return: {ex}")
        return ExitCode.NO_RETURN
    except BoundaryEscapeError as ex:
        diagnostic(f"boundary escape: {ex}")
        return ExitCode.BOUNDARY_ESCAPE
    except (ValueError, HorocycleFlowError) as ex:
        diagnostic(f"invalid flags: {ex}")
        return ExitCode.INVALID
