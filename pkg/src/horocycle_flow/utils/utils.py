from __future__ import annotations

import concurrent.futures
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Callable, Sequence, TypeVar

import numpy as np
import tqdm

from horocycle_flow.logging import HOROCYCLE_FLOW_LOGGER

T = TypeVar("T")
R = TypeVar("R")


def chunks(array: list[T], size: int) -> list[list[T]]:
    return [array[x : x + size] for x in range(0, len(array), size)]


def parallel_map(
    fn: Callable[[T], R],
    items: Sequence[T],
    max_workers: int | None = None,
    desc: str | None = None,
) -> list[R]:
    """Runs ``fn`` over ``items`` on a thread pool; results keep the input order.

    The first exception raised by a worker is re-raised after the pool drains.
    ``desc`` switches on a progress bar.
    """
    if max_workers is None:
        max_workers = min(8, os.cpu_count() or 1)

    if max_workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    results: list[Any] = [None] * len(items)
    failure: BaseException | None = None

    with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as executor:
        futures = {executor.submit(fn, item): index for index, item in enumerate(items)}

        with tqdm.tqdm(total=len(futures), desc=desc, disable=desc is None) as pbar:
            for future in concurrent.futures.as_completed(futures):
                try:
                    results[futures[future]] = future.result()
                except Exception as e:
                    HOROCYCLE_FLOW_LOGGER.error(f"Worker failed: {e}")
                    if failure is None:
                        failure = e
                finally:
                    pbar.update(1)

    if failure is not None:
        raise failure
    return results


def format_float(value: float) -> str:
    """17 significant digits: the text parses back to the same double."""
    if math.isnan(value) or math.isinf(value):
        return repr(float(value))
    return f"{float(value):.17g}"


def parse_pair(text: str) -> tuple[float, float]:
    """``"0,1"`` -> ``(0.0, 1.0)``."""
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise ValueError(f"expected two comma-separated numbers, got {text!r}")
    return float(parts[0]), float(parts[1])


def recursive_map(data: Any, func: Callable[[Any], Any]) -> Any:
    if isinstance(data, dict):
        return {recursive_map(k, func): recursive_map(v, func) for k, v in data.items()}
    elif isinstance(data, (list, tuple)):
        return [recursive_map(x, func) for x in data]
    return func(data)


def to_jsonable(data: Any) -> Any:
    """numpy scalars and arrays become plain floats/ints/lists."""

    def _convert(obj: Any) -> Any:
        if isinstance(obj, np.ndarray):
            return to_jsonable(obj.tolist())
        if isinstance(obj, np.generic):
            return obj.item()
        if isinstance(obj, Path):
            return obj.as_posix()
        return obj

    return recursive_map(data, _convert)


def atomic_write_text(path: Path | str, text: str) -> Path:
    """Writes to a temp file next to ``path`` and renames it into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as tmp:
            tmp.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return path
