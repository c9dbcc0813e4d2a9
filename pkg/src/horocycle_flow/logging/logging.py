from __future__ import annotations

import io
import logging
import os
import sys
from logging import FileHandler, Logger
from pathlib import Path
from typing import Literal, overload

DEFAULT_FORMATTER = logging.Formatter("%(asctime)s %(levelname)s %(name)s %(message)s")
DEFAULT_STREAM = logging.StreamHandler(sys.stderr)
DEFAULT_STREAM.setFormatter(DEFAULT_FORMATTER)

_TRUTHY = ("1", "true", "yes", "on", "y", "t")


def _suffix() -> str:
    return os.environ.get("LOGGING_SUFFIX", "horocycle_flow")


def env_flag(name: str, default: str = "0") -> bool:
    return os.environ.get(name, default).strip().lower() in _TRUTHY


class TracingFileHandler(FileHandler):
    """Writes records to a log file and echoes ``file, line N`` to a stream.

    The CLI attaches it when ``--log-file`` is given so that the diagnostic
    stream points at the exact place in the log where the details live.
    """

    def __init__(
        self,
        trace_stream: io.TextIOBase | None,
        filename: str | os.PathLike[str],
        mode: str = "a",
        encoding: str | None = None,
        delay: bool = False,
        errors: str | None = None,
    ) -> None:
        super().__init__(filename, mode, encoding, delay, errors)
        self.trace_stream = trace_stream if trace_stream is not None else sys.stderr

    def emit(self, record: logging.LogRecord) -> None:
        stream = self.stream
        line = self.get_line(self.baseFilename)
        message = record.msg
        args = record.args

        record.msg = line
        record.args = None
        self.stream = self.trace_stream  # type: ignore[assignment]
        super().emit(record)

        self.stream = stream
        record.msg = message
        record.args = args
        super().emit(record)

    @staticmethod
    def get_line(logger: Logger | str | Path) -> str:
        logging_path: str | Path = ""
        if isinstance(logger, Logger):
            for handler in logger.handlers:
                if isinstance(handler, FileHandler):
                    logging_path = handler.baseFilename
        else:
            logging_path = logger

        try:
            with open(logging_path, "r") as f:
                return f"{logging_path}, line {len(f.readlines()) + 1}"
        except Exception:
            return ""


class HorocycleFlowFilter(logging.Filter):
    """Drops every record unless ``HOROCYCLE_FLOW_LOGGER`` is set.

    It sits on the package handler, which also receives the records that
    propagate up from the module loggers.
    """

    def filter(self, record: logging.LogRecord) -> bool:
        return env_flag("HOROCYCLE_FLOW_LOGGER")


GATE = HorocycleFlowFilter()


@overload
def register_logger(
    path: Path | str,
    *,
    name: str | None = None,
    level: int = logging.DEBUG,
    trace_stream: io.TextIOBase | None = None,
    tracing: bool = False,
    if_exist: Literal["error", "clear", "return"] = "error",
) -> Logger:
    pass


@overload
def register_logger(
    *,
    name: str,
    level: int = logging.DEBUG,
    if_exist: Literal["error", "clear", "return"] = "error",
) -> Logger:
    pass


@overload
def register_logger() -> Logger:
    pass


def register_logger(
    path: Path | str | None = None,
    name: str | None = None,
    level: int = logging.DEBUG,
    trace_stream: io.TextIOBase | None = None,
    tracing: bool = False,
    if_exist: Literal["error", "clear", "return"] = "error",
) -> Logger:

    file_path = Path(path) if path is not None else None
    name = name if name is not None else file_path.stem if file_path is not None else None

    if name is not None:
        naming = f"{_suffix()}.{name}"
        if naming in logging.Logger.manager.loggerDict.keys():
            if if_exist == "return":
                return logging.getLogger(naming)
            if if_exist == "clear":
                existing = logging.getLogger(naming)
                for handler in list(existing.handlers):
                    existing.removeHandler(handler)
                    handler.close()
                logging.Logger.manager.loggerDict.pop(naming)

        assert (
            naming not in logging.Logger.manager.loggerDict.keys()
        ), "The same name of the loggers"
        logger = logging.getLogger(naming)
    else:
        logger = logging.getLogger(_suffix())

    if file_path is not None:
        mode = os.environ.get("LOGGING_FILE_MODE", "w")
        file_path.parent.mkdir(parents=True, exist_ok=True)
        if tracing:
            file_handler: FileHandler = TracingFileHandler(
                trace_stream, file_path.as_posix(), mode=mode
            )
        else:
            file_handler = logging.FileHandler(file_path.as_posix(), mode=mode)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(DEFAULT_FORMATTER)
        logger.addHandler(file_handler)
    elif DEFAULT_STREAM not in logger.handlers:
        DEFAULT_STREAM.addFilter(GATE)
        logger.addHandler(DEFAULT_STREAM)

    logger.setLevel(level)

    return logger


def getHorocycleFlowLogger(name: str) -> Logger:
    return logging.getLogger(f"{_suffix()}.{name}")


HOROCYCLE_FLOW_LOGGER = register_logger()
