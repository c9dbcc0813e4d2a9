from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Literal, overload

from dotenv import dotenv_values
from hydra import compose, initialize_config_dir
from omegaconf import OmegaConf
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from tabulate import tabulate

from horocycle_flow.logging import HOROCYCLE_FLOW_LOGGER

_ENV_PREFIX = "HOROCYCLE_FLOW_"
CONFIG_ENV = f"{_ENV_PREFIX}CONFIG"

GRID_VERSION = 1
SCHEMA_VERSION = 1


class GridSettings(BaseModel):
    x_min: float = -5.0
    x_max: float = 5.0
    y_min: float = 0.1
    y_max: float = 10.0
    nx: int = Field(default=101, ge=2)
    ny: int = Field(default=101, ge=2)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_bounds(self) -> GridSettings:
        if self.x_min >= self.x_max or self.y_min >= self.y_max:
            raise ValueError("grid ranges must be increasing")
        if self.y_min <= 0:
            raise ValueError("grid must lie inside the half-plane (y_min > 0)")
        return self


class ToleranceSettings(BaseModel):
    residual: float = 1e-12
    fd_residual: float = 1e-5
    gradient: float = 1e-5
    level: float = 1e-12
    invariance: float = 1e-6
    closed: float = 1e-6
    exact: float = 1e-8
    period_spread: float = 1e-4
    period_return: float = 1e-6

    model_config = ConfigDict(frozen=True)


class ManeSettings(BaseModel):
    heights: tuple[float, ...] = (1.0, 2.0, 4.0)
    ratios: tuple[float, ...] = (
        0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999, 0.9999,
    )
    speeds: tuple[float, ...] = tuple(round(0.1 * i, 1) for i in range(1, 16))
    parametrization: Literal["hyperbolic", "euclidean"] = "hyperbolic"
    nodes: int = Field(default=2048, ge=4)

    model_config = ConfigDict(frozen=True)

    @field_validator("ratios")
    @classmethod
    def check_ratios(cls, ratios: tuple[float, ...]) -> tuple[float, ...]:
        if not ratios or any(not 0.0 < r < 1.0 for r in ratios):
            raise ValueError(f"radius ratios must lie strictly inside (0, 1), got {ratios}")
        return ratios

    @field_validator("heights", "speeds")
    @classmethod
    def check_positive(cls, values: tuple[float, ...]) -> tuple[float, ...]:
        if not values or any(v <= 0 for v in values):
            raise ValueError(f"curve heights and speeds must be positive, got {values}")
        return values


class Settings(BaseModel):
    """Numeric defaults shared by the library and the CLI.

    Values come from the defaults below, then from a config file
    (``.env``/``key=value``, YAML or JSON), then from ``HOROCYCLE_FLOW_*``
    environment variables.
    """

    dt: float = Field(default=1e-3, gt=0)
    fd_step: float = Field(default=1e-6, gt=0)
    invariance_T: float = Field(default=5.0, gt=0)
    invariance_starts: int = Field(default=10, ge=1)
    period_budget: float = Field(default=200.0, gt=0)
    workers: int = Field(default_factory=lambda: min(8, os.cpu_count() or 1), ge=1)
    seed: int = 20160101
    grid_version: int = GRID_VERSION
    schema_version: int = SCHEMA_VERSION
    grid: GridSettings = GridSettings()
    tolerances: ToleranceSettings = ToleranceSettings()
    mane: ManeSettings = ManeSettings()

    model_config = ConfigDict(frozen=True, extra="ignore")

    def describe(self) -> str:
        rows = [(name, value) for name, value in _flatten(self.model_dump()).items()]
        return tabulate(rows, headers=["setting", "value"], tablefmt="psql")


def _flatten(data: dict[str, Any], prefix: str = "") -> dict[str, Any]:
    flat: dict[str, Any] = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        else:
            flat[name] = value
    return flat


def _nest(flat: dict[str, Any]) -> dict[str, Any]:
    """``grid.nx=51`` / ``GRID__NX=51`` style keys become nested dictionaries."""
    nested: dict[str, Any] = {}
    for key, value in flat.items():
        parts = key.lower().replace("__", ".").split(".")
        target = nested
        for part in parts[:-1]:
            target = target.setdefault(part, {})
        target[parts[-1]] = value
    return nested


def _parse_yaml_file(yaml_file_path: Path) -> dict[str, Any]:
    try:
        with initialize_config_dir(
            config_dir=yaml_file_path.parent.absolute().as_posix(),
            job_name="horocycle_flow",
            version_base=None,
        ):
            conf = compose(config_name=yaml_file_path.stem)

        conf_dict: dict[str, Any] = OmegaConf.to_container(conf, resolve=True)  # type: ignore
    except Exception:
        HOROCYCLE_FLOW_LOGGER.error(f"Error parsing {yaml_file_path}")
        return {}
    return conf_dict


def _parse_json_file(json_file_path: Path) -> dict[str, Any]:
    try:
        data = json.loads(json_file_path.read_text())
    except Exception:
        HOROCYCLE_FLOW_LOGGER.error(f"Error parsing {json_file_path}")
        return {}
    return data


def _coerce(variable: Any) -> Any:
    if not isinstance(variable, str):
        return variable
    if variable.lstrip("-").isdigit():
        return int(variable)
    if variable.strip().startswith("[") or variable.strip().startswith("{"):
        try:
            return json.loads(variable.replace("'", '"'))
        except Exception:
            return variable
    if variable.lower() in ("true", "false"):
        return variable.lower() == "true"
    try:
        return float(variable)
    except ValueError:
        return variable


class SourceEnv(dict):
    """Configuration mapping whose missing keys raise a descriptive ``KeyError``."""

    def __getitem__(self, key: str) -> Any:
        try:
            return super().__getitem__(key)
        except KeyError as ex:
            new_ex = KeyError(
                f"Key '{key}' not found in the configuration environment. "
                f"Configuration file: {os.environ.get(CONFIG_ENV, '<none>')}"
            )
            raise new_ex from ex


@overload
def source(env_files: str | Path | list[str | Path]) -> SourceEnv:
    pass


@overload
def source(env_files: str | Path, *, check_only: Literal[True]) -> bool:
    pass


def source(
    env_files: str | Path | list[str | Path],
    *,
    check_only: bool = False,
) -> SourceEnv | bool:
    """
    Reads configuration from ``.env``/``key=value``, YAML and JSON files.

    - ``.env``/``.cfg``/``.conf``/``.ini``-like files are ``key=value`` lines,
      read through ``dotenv_values`` (the process environment is untouched).
    - YAML goes through hydra ``compose``.
    - JSON is read as is.
    Values read from text files are coerced to int/float/bool/JSON.
    """
    data: dict[str, Any] = {}

    def handle_one_file(env_file: str | Path) -> bool:
        path = Path(env_file)
        suffix = path.suffix.lower()

        if not path.exists():
            if check_only:
                return False
            raise FileNotFoundError(f"Config file {path} does not exist")

        if check_only:
            return True

        if suffix in (".yml", ".yaml"):
            data.update(_parse_yaml_file(path))
        elif suffix == ".json":
            data.update(_parse_json_file(path))
        else:
            for key, value in dotenv_values(path).items():
                if value is not None:
                    data[key] = _coerce(value)
        return True

    if isinstance(env_files, (str, Path)):
        if check_only:
            return handle_one_file(env_files)
        handle_one_file(env_files)
    else:
        for env_file in env_files:
            handle_one_file(env_file)

    return SourceEnv(data)


def _environment_overrides() -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    for key, value in os.environ.items():
        if not key.startswith(_ENV_PREFIX) or key in (CONFIG_ENV, "HOROCYCLE_FLOW_LOGGER"):
            continue
        overrides[key[len(_ENV_PREFIX) :]] = _coerce(value)
    return overrides


def load_settings(
    path: str | Path | None = None, **overrides: Any
) -> Settings:
    """Defaults <- config file <- ``HOROCYCLE_FLOW_*`` environment <- keyword overrides."""
    if path is None and (env_path := os.getenv(CONFIG_ENV)) is not None:
        path = env_path

    values: dict[str, Any] = {}
    if path is not None:
        values.update(_nest(dict(source(path))))
        HOROCYCLE_FLOW_LOGGER.info(f"Loaded settings from {path}")

    for key, value in _nest(_environment_overrides()).items():
        if isinstance(value, dict) and isinstance(values.get(key), dict):
            values[key].update(value)
        else:
            values[key] = value

    values.update({k: v for k, v in overrides.items() if v is not None})
    settings = Settings.model_validate(values)
    HOROCYCLE_FLOW_LOGGER.debug("\n" + settings.describe())
    return settings
