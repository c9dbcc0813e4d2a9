from .cli import build_parser, main
from .commands import (
    COMMANDS,
    cmd_foliation,
    cmd_mane,
    cmd_period,
    cmd_simulate,
    cmd_verify,
)
from .config import CANDIDATES, FAMILIES, ExitCode, OutputFormat, RunConfig
from .output import (
    COTANGENT_COLUMNS,
    FOLIATION_COLUMNS,
    TANGENT_COLUMNS,
    emit,
    render_csv,
    render_json,
    trajectory_table,
)

__all__ = [
    "build_parser",
    "main",
    "COMMANDS",
    "cmd_foliation",
    "cmd_mane",
    "cmd_period",
    "cmd_simulate",
    "cmd_verify",
    "CANDIDATES",
    "FAMILIES",
    "ExitCode",
    "OutputFormat",
    "RunConfig",
    "COTANGENT_COLUMNS",
    "FOLIATION_COLUMNS",
    "TANGENT_COLUMNS",
    "emit",
    "render_csv",
    "render_json",
    "trajectory_table",
]
