"""
Logging configuration using Loguru.

Every module binds its own logger through get_logger(__name__), so console and
file lines carry the short module name. Importing this module installs the
console sink only; the CLI calls setup_logging again to add rotating files.
Worker processes inherit the console sink through their own import.
"""

import sys
from pathlib import Path
from typing import Optional
from loguru import logger


CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{extra[module]}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
    "<level>{message}</level>"
)

FILE_FORMAT = (
    "{time:YYYY-MM-DD HH:mm:ss} | "
    "{level: <8} | "
    "{extra[module]}:{function}:{line} | "
    "{message}"
)


def setup_logging(
    log_level: str = "INFO",
    log_to_file: bool = False,
    log_dir: Optional[Path] = None,
    rotation: str = "10 MB",
    retention: str = "7 days",
    compression: str = "zip",
) -> None:
    """
    Configure loguru with a colored console sink and optional rotating files.

    Calling it again replaces the previous sinks.

    Args:
        log_level: Minimum log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_to_file: Whether to also write app and error log files
        log_dir: Directory for log files (default: ./logs)
        rotation: When to rotate log files
        retention: How long to keep log files
        compression: Compression format for rotated logs
    """
    logger.remove()
    logger.configure(extra={"module": "root"})

    logger.add(
        sys.stderr,
        format=CONSOLE_FORMAT,
        level=log_level,
        colorize=True,
        backtrace=True,
        diagnose=False,
    )

    if not log_to_file:
        return

    log_dir = log_dir or Path("logs")
    log_dir.mkdir(parents=True, exist_ok=True)

    # Run log
    logger.add(
        log_dir / "app_{time:YYYY-MM-DD}.log",
        format=FILE_FORMAT,
        level=log_level,
        rotation=rotation,
        retention=retention,
        compression=compression,
        backtrace=True,
        diagnose=False,
        enqueue=True,
    )

    # Error-only log
    logger.add(
        log_dir / "errors_{time:YYYY-MM-DD}.log",
        format=FILE_FORMAT + "\n{exception}",
        level="ERROR",
        rotation=rotation,
        retention=retention,
        compression=compression,
        backtrace=True,
        diagnose=False,
        enqueue=True,
    )


def get_logger(module_name: str):
    """
    Get a logger bound to a specific module name.

    Args:
        module_name: Name of the module (typically __name__)

    Returns:
        Logger instance bound to the last component of the module name

    Example:
        >>> from config.logging_config import get_logger
        >>> logger = get_logger(__name__)
        >>> logger.info("Simulation finished")
    """
    if "." in module_name:
        module_name = module_name.split(".")[-1]

    return logger.bind(module=module_name)


# Console-only default; file sinks are opt-in
setup_logging()


__all__ = ["logger", "get_logger", "setup_logging"]
