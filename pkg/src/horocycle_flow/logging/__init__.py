from .logging import (
    DEFAULT_FORMATTER,
    DEFAULT_STREAM,
    GATE,
    HOROCYCLE_FLOW_LOGGER,
    HorocycleFlowFilter,
    TracingFileHandler,
    env_flag,
    getHorocycleFlowLogger,
    register_logger,
)

__all__ = [
    "DEFAULT_FORMATTER",
    "DEFAULT_STREAM",
    "GATE",
    "HOROCYCLE_FLOW_LOGGER",
    "HorocycleFlowFilter",
    "TracingFileHandler",
    "env_flag",
    "getHorocycleFlowLogger",
    "register_logger",
]
