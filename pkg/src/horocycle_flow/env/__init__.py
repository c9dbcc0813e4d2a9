from .env import (
    CONFIG_ENV,
    GRID_VERSION,
    SCHEMA_VERSION,
    GridSettings,
    ManeSettings,
    Settings,
    SourceEnv,
    ToleranceSettings,
    load_settings,
    source,
)

__all__ = [
    "CONFIG_ENV",
    "GRID_VERSION",
    "SCHEMA_VERSION",
    "GridSettings",
    "ManeSettings",
    "Settings",
    "SourceEnv",
    "ToleranceSettings",
    "load_settings",
    "source",
]
