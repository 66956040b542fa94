from ._stdlib import (
    DEFAULT_CONSOLE_LEVEL,
    add_file_handler,
    close_file_handlers,
    datetime_fmt,
    dimsolve_console,
    log_fmt,
    reset_console_level,
    rich_handler,
    set_console_level,
)

__all__ = [
    "DEFAULT_CONSOLE_LEVEL",
    "add_file_handler",
    "close_file_handlers",
    "rich_handler",
    "reset_console_level",
    "set_console_level",
    "dimsolve_console",
    "datetime_fmt",
    "log_fmt",
]
