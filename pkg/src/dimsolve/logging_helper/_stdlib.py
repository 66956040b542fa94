import datetime
import logging
import os
from pathlib import Path
from typing import Dict, TypeVar

import rich.console
import rich.logging
import rich.style

TLogger = TypeVar("TLogger", bound=logging.Logger)

#: Shared console for log records and bench tables. Bound to standard error so that
#: standard output carries only answers and certificates.
dimsolve_console = rich.console.Console(stderr=True)

log_fmt = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
datetime_fmt = "%Y-%m-%dT%H%M%S%z"

#: Level of the console handler until a command raises it.
DEFAULT_CONSOLE_LEVEL = logging.WARNING

_SEVERITY_STYLES: Dict[int, rich.style.Style] = {
    logging.CRITICAL: rich.style.Style(color="white", bgcolor="red", bold=True),
    logging.ERROR: rich.style.Style(color="white", bgcolor="red"),
}


class _SeverityRichHandler(rich.logging.RichHandler):
    """A ``RichHandler`` that paints ERROR and CRITICAL messages on a red background."""

    def __init__(self, *args, **kwargs):
        kwargs.pop("highlighter", None)
        super().__init__(*args, **kwargs)

    def render_message(self, record, message):  # type: ignore[override]
        """Wraps the message in the style of the highest severity it reaches."""
        for level in sorted(_SEVERITY_STYLES, reverse=True):
            if record.levelno >= level:
                return f"[{_SEVERITY_STYLES[level]}]{message}[/]"
        return message


class _UtcIsoFormatter(logging.Formatter):
    """Stamps records with UTC ISO-8601 times at millisecond precision."""

    def formatTime(self, record, datefmt=None) -> str:
        """Ignores ``datefmt``; file logs always use the same unambiguous stamp."""
        stamp = datetime.datetime.fromtimestamp(record.created, tz=datetime.timezone.utc)
        return stamp.isoformat(timespec="milliseconds")


rich_handler = _SeverityRichHandler(console=dimsolve_console, rich_tracebacks=True, show_time=False)
rich_handler.setLevel(DEFAULT_CONSOLE_LEVEL)


def set_console_level(level: int) -> None:
    """
    Sets the verbosity threshold of the console log handler.

    Only what reaches the terminal changes; file handlers keep their own level.

    Args:
        level: A standard ``logging`` level (e.g. ``logging.INFO``).
    """
    rich_handler.setLevel(level)


def reset_console_level() -> None:
    """Puts the console log handler back to ``DEFAULT_CONSOLE_LEVEL``."""
    rich_handler.setLevel(DEFAULT_CONSOLE_LEVEL)


def add_file_handler(logger: TLogger, output_path: os.PathLike | str, level: int = logging.DEBUG) -> TLogger:
    """
    Attaches a handler writing UTC-stamped records to ``output_path``, truncating the file.

    Args:
        logger: Logger to extend
        output_path: Destination of the log
        level: Threshold of the new handler. Defaults to DEBUG

    Returns:
        TLogger: ``logger``, for chaining
    """
    handler = logging.FileHandler(Path(output_path), encoding="utf-8", mode="w")
    handler.setFormatter(_UtcIsoFormatter(log_fmt))
    handler.setLevel(level)
    logger.addHandler(handler)
    return logger


def close_file_handlers(logger: TLogger) -> TLogger:
    """Closes and detaches every file handler of ``logger``; other handlers stay."""
    for handler in [h for h in logger.handlers if isinstance(h, logging.FileHandler)]:
        handler.close()
        logger.removeHandler(handler)
    return logger
