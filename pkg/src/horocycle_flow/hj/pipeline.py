from __future__ import annotations

import time
from abc import ABC, abstractmethod
from typing import Any, Callable, Sequence

from tabulate import tabulate

CheckResult = dict[str, Any]
PipelineResult = dict[str, CheckResult]


def _stdout(x):
    return


class Callback(ABC):

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @abstractmethod
    def __call__(self, results: PipelineResult, check_name: str | None) -> None:
        pass


class Check(ABC):

    callbacks: Sequence[Callback] = ()

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @abstractmethod
    def __call__(self, results: PipelineResult) -> CheckResult:
        pass

    def with_callbacks(self, *callbacks: Callback) -> Check:
        """Attaches callbacks that run right after this check."""
        self.callbacks = callbacks
        return self


class SummaryCallback(Callback):
    """Renders every numeric entry of the results as a table."""

    def __init__(self, stdout: Callable[[Any], Any]):
        self.stdout = stdout

    def __call__(self, results: PipelineResult, check_name: str | None) -> None:
        rows = [
            (name, key, value)
            for name, result in results.items()
            for key, value in result.items()
            if isinstance(value, (bool, int, float))
        ]
        self.stdout("\n" + tabulate(rows, headers=["check", "metric", "value"], tablefmt="psql"))

    @property
    def name(self) -> str:
        return "summary"


class ToleranceCallback(Callback):
    """Reports one metric of the check it is attached to against a tolerance."""

    def __init__(self, metric: str, tolerance: float, stdout: Callable[[Any], Any]):
        self.metric, self.tolerance, self.stdout = metric, tolerance, stdout

    def __call__(self, results: PipelineResult, check_name: str | None) -> None:
        if check_name is None:
            raise ValueError(f"{self.name} must be attached to a check")
        value = results[check_name][self.metric]
        if value is None:
            self.stdout(f"{check_name}: {self.metric} skipped")
            return
        status = "ok" if abs(value) < self.tolerance else "FAILED"
        self.stdout(f"{check_name}: {self.metric}={value:.3e} (tol {self.tolerance:g}) {status}")

    @property
    def name(self) -> str:
        return f"tolerance[{self.metric}]"


def run_checks(
    checks: Sequence[Check],
    callbacks: Sequence[Callback] | None = None,
    stdout: Callable[[Any], Any] = _stdout,
) -> PipelineResult:
    """Runs ``checks`` in order; each one sees the results of the previous ones."""

    results: PipelineResult = {}

    for check in checks:

        stdout(f"Do {check.name} check")
        start = time.time()
        results[check.name] = check(results)
        end = time.time()
        stdout(f"{check.name} check duration: {end-start}s")

        for callback in check.callbacks:
            stdout(f"Do {callback.name} callback")
            callback(results, check.name)

    if callbacks:
        stdout("Do final callbacks after all checks")
        for callback in callbacks:
            stdout(f"Do {callback.name} callback")
            start = time.time()
            callback(results, None)
            end = time.time()
            stdout(f"{callback.name} callback duration: {end-start}s")

    return results
