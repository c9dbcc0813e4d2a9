from pathlib import Path

import pytest
from pydantic import ValidationError

from horocycle_flow.env import (
    CONFIG_ENV,
    GridSettings,
    ManeSettings,
    Settings,
    SourceEnv,
    load_settings,
    source,
)


def test_source_reads_json_file(tmp_path: Path) -> None:
    config = tmp_path / "config.json"
    config.write_text('{"dt": 0.01, "seed": 7, "grid": {"nx": 11}}')

    data = source(config)

    assert data["dt"] == 0.01
    assert data["seed"] == 7
    assert data["grid"] == {"nx": 11}


def test_source_coerces_key_value_files(tmp_path: Path) -> None:
    config = tmp_path / "run.env"
    config.write_text("dt=0.002\nworkers=3\ngrid.nx=21\n")

    data = source(config)

    assert data["dt"] == 0.002
    assert data["workers"] == 3
    assert data["grid.nx"] == 21


def test_source_missing_file(tmp_path: Path) -> None:
    with pytest.raises(FileNotFoundError):
        source(tmp_path / "missing.json")

    assert source(tmp_path / "missing.json", check_only=True) is False


def test_source_env_missing_key_has_helpful_message() -> None:
    env = SourceEnv({"EXISTING": "value"})

    with pytest.raises(KeyError) as exc_info:
        _ = env["MISSING"]

    message = str(exc_info.value)
    assert "MISSING" in message
    assert "configuration environment" in message


def test_load_settings_layers(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(CONFIG_ENV, raising=False)
    config = tmp_path / "run.env"
    config.write_text("dt=0.01\ngrid.nx=21\nseed=5\n")
    monkeypatch.setenv("HOROCYCLE_FLOW_SEED", "9")

    settings = load_settings(config, workers=2)

    assert settings.dt == 0.01
    assert settings.grid.nx == 21
    assert settings.grid.ny == GridSettings().ny
    assert settings.seed == 9
    assert settings.workers == 2


def test_load_settings_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(CONFIG_ENV, raising=False)

    settings = load_settings()

    assert settings.dt == 1e-3
    assert settings.tolerances.residual == 1e-12
    assert "grid.nx" in settings.describe()


def test_grid_settings_reject_boundary() -> None:
    with pytest.raises(ValidationError):
        GridSettings(y_min=0.0)
    with pytest.raises(ValidationError):
        GridSettings(x_min=1.0, x_max=-1.0)
    with pytest.raises(ValidationError):
        Settings(dt=0.0)


@pytest.mark.parametrize(
    "overrides",
    [{"ratios": (1.5,)}, {"ratios": (0.0, 0.5)}, {"ratios": ()}, {"heights": (-1.0,)}, {"speeds": (0.0,)}],
)
def test_mane_settings_reject_curves_outside_the_half_plane(overrides: dict) -> None:
    with pytest.raises(ValidationError):
        ManeSettings(**overrides)

    assert ManeSettings(ratios=(0.5, 0.9999)).ratios == (0.5, 0.9999)
