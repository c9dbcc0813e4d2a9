from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np
from numpy.typing import NDArray

from horocycle_flow.env import SCHEMA_VERSION
from horocycle_flow.flows import Bundle, Trajectory
from horocycle_flow.utils import atomic_write_text, format_float, to_jsonable

TANGENT_COLUMNS = ("t", "x", "y", "vx", "vy", "E", "px")
COTANGENT_COLUMNS = ("t", "x", "y", "px", "py", "H")
FOLIATION_COLUMNS = ("x", "y", "vx", "vy")


def render_csv(columns: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    lines = [f"# schema_version={SCHEMA_VERSION}", ",".join(columns)]
    lines.extend(",".join(format_float(value) for value in row) for row in rows)
    return "\n".join(lines) + "\n"


def render_json(payload: dict[str, Any]) -> str:
    document = {"schema_version": SCHEMA_VERSION, **to_jsonable(payload)}
    return json.dumps(document, indent=2, sort_keys=True, allow_nan=False) + "\n"


def render_table_json(columns: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    return render_json({"columns": list(columns), "rows": [list(map(float, row)) for row in rows]})


def emit(text: str, output: Path | None) -> None:
    """Atomically writes ``text`` to ``output``, or prints it when there is no output path."""
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        atomic_write_text(output, text)


def trajectory_table(trajectory: Trajectory) -> tuple[tuple[str, ...], NDArray[np.float64]]:
    columns: list[NDArray[np.float64]] = [trajectory.times]
    columns.extend(trajectory.states.T)
    columns.append(trajectory.energy)
    if trajectory.bundle == Bundle.TANGENT:
        columns.append(trajectory.momentum_x)
        names = TANGENT_COLUMNS
    else:
        names = COTANGENT_COLUMNS
    return names, np.column_stack(columns)
