from __future__ import annotations

from enum import IntEnum, StrEnum
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from horocycle_flow.closed_forms import Foliation, TangencyPoint
from horocycle_flow.env import GridSettings, ManeSettings, Settings, ToleranceSettings
from horocycle_flow.flows import CRITICAL_LEVEL, Bundle
from horocycle_flow.hj import HJFamily, HJSolution
from horocycle_flow.mechanics import SystemKind


class ExitCode(IntEnum):
    OK = 0
    INVALID = 2
    BOUNDARY_ESCAPE = 3
    VERIFICATION_FAILED = 4
    NO_RETURN = 5


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"


Command = Literal["simulate", "verify", "period", "mane", "foliation"]

FAMILIES: dict[str, HJFamily] = {
    "arctan": HJFamily.MAGNETIC_ARCTAN,
    "constant": HJFamily.CONSTANT,
    "log-vertical": HJFamily.GEODESIC_LOG_VERTICAL,
    "log-endpoint": HJFamily.GEODESIC_LOG_ENDPOINT,
    "arcsinh": HJFamily.GEODESIC_ARCSINH,
    "adhoc-x": HJFamily.ADHOC_X,
}

CANDIDATES = ("arctan", "constant", "adhoc-x")


class RunConfig(BaseModel):
    """Flags of one CLI run, validated before anything is computed."""

    command: Command
    system: SystemKind | None = None
    bundle: Bundle = Bundle.TANGENT
    family: str | None = None
    a: str = "0"
    sign: Literal[1, -1] = 1
    k: float = 0.5
    q0: tuple[float, float] | None = None
    v0: tuple[float, float] | None = None
    p0: tuple[float, float] | None = None
    T: float | None = None
    dt: float = Field(default=1e-3, gt=0)
    record_every: int = Field(default=1, ge=1)
    samples: int = Field(default=5, ge=1)
    budget: float = Field(default=200.0, gt=0)
    seed: int = 0
    candidate: str = "arctan"
    foliation: Foliation = Foliation.HOROCYCLE
    direction: Literal[1, -1] = 1
    workers: int = Field(default=1, ge=1)
    grid: GridSettings = GridSettings()
    tolerances: ToleranceSettings = ToleranceSettings()
    mane: ManeSettings = ManeSettings()
    output: Path | None = None
    format: OutputFormat = OutputFormat.CSV

    model_config = ConfigDict(frozen=True)

    @field_validator("a")
    @classmethod
    def check_tangency(cls, value: str) -> str:
        TangencyPoint.parse(value)
        return value

    @field_validator("family")
    @classmethod
    def check_family(cls, value: str | None) -> str | None:
        if value is not None and value not in FAMILIES:
            raise ValueError(f"unknown family {value!r}; choose from {', '.join(FAMILIES)}")
        return value

    @field_validator("candidate")
    @classmethod
    def check_candidate(cls, value: str) -> str:
        if value not in CANDIDATES:
            raise ValueError(f"unknown candidate {value!r}; choose from {', '.join(CANDIDATES)}")
        return value

    @model_validator(mode="after")
    def check_command(self) -> RunConfig:
        match self.command:
            case "simulate":
                self._check_simulate()
            case "verify":
                if self.family is None:
                    raise ValueError("verify needs --family")
            case "period":
                if not 0.0 < self.k < CRITICAL_LEVEL:
                    raise ValueError(
                        f"k={self.k} is not below the critical level 1/2: "
                        "orbits are periodic only for k < 1/2, the horocycle flow at "
                        "k = 1/2 has no periodic orbits"
                    )
        return self

    def _check_simulate(self) -> None:
        if self.q0 is None:
            raise ValueError("simulate needs --q0")
        if self.q0[1] <= 0:
            raise ValueError(f"q0={self.q0} is not in the upper half-plane")
        if self.T is None or self.T <= 0:
            raise ValueError("simulate needs a positive --T")
        if self.dt > self.T:
            raise ValueError(f"dt={self.dt} is longer than T={self.T}")
        if self.bundle == Bundle.TANGENT and (self.v0 is None or self.p0 is not None):
            raise ValueError("tangent flows start from --v0 (and take no --p0)")
        if self.bundle == Bundle.COTANGENT and (self.p0 is None or self.v0 is not None):
            raise ValueError("cotangent flows start from --p0 (and take no --v0)")

    @property
    def tangency(self) -> TangencyPoint:
        return TangencyPoint.parse(self.a)

    @property
    def kind(self) -> SystemKind:
        if self.system is not None:
            return self.system
        if self.family is not None:
            return FAMILIES[self.family].system
        return SystemKind.MAGNETIC

    def solution(self) -> HJSolution:
        family = FAMILIES[self.family or self.candidate]
        return HJSolution(family, self.tangency, self.sign)

    @classmethod
    def from_settings(cls, settings: Settings, **flags: object) -> RunConfig:
        """Flags not given on the command line (``None``) fall back to ``settings``."""
        defaults: dict[str, object] = {
            "dt": settings.dt,
            "budget": settings.period_budget,
            "seed": settings.seed,
            "workers": settings.workers,
            "grid": settings.grid,
            "tolerances": settings.tolerances,
            "mane": settings.mane,
        }
        defaults.update({key: value for key, value in flags.items() if value is not None})
        return cls.model_validate(defaults)
