# utils.py
# MIT License 2026
import logging
import os
from datetime import datetime
from functools import wraps
from sys import exit
from typing import Callable, Optional

import click
import coloredlogs

from weedmap.exceptions import ConfigError, WeedmapError

LOG_FORMAT = '%(asctime)s - %(levelname)s %(message)s'
LOG_LEVELS = ["debug", "info", "warning", "error"]

logger = logging.getLogger("weedmap")


def install_logger(level: str = "info") -> None:
    """Install the colored console logger used by every command"""
    coloredlogs.install(level=level.upper(), fmt=LOG_FORMAT)


def log_level_option(command: Callable) -> Callable:
    return click.option("--log-level", type=click.Choice(LOG_LEVELS), default="info", show_default=True, help="The granularity of log outputs")(command)


def exit_on_error(command: Callable) -> Callable:
    """Turn the errors of the pipeline into a logged message and the exit code of their family"""
    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except WeedmapError as error:
            logger.error(f"{type(error).__name__}: {error}")
            exit(error.exit_code)
    return wrapper


def to_date(value: Optional[datetime]):
    return value.date() if value is not None else None


def prepare_out_dir(out_dir: Optional[str]) -> str:
    """Create the output directory if needed.

    Throws: `ConfigError` if no directory is given or it cannot be created.
    """
    if out_dir is None:
        raise ConfigError("An output directory is required (--out-dir or out_dir)")
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as error:
        raise ConfigError(f"Cannot create output directory {out_dir}: {error}")
    return out_dir


def write_text(path: str, content: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(content)
    logger.info(f"Wrote {path}")
