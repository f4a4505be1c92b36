"""Utility functions for p6kit."""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

Number = Union[int, float, str, Fraction]


def setup_logging(level: Union[int, str] = logging.INFO, log_file: Optional[str] = None) -> None:
    """Set up logging configuration.

    Args:
        level: Logging level, as a number or a name such as "DEBUG".
        log_file: Optional file that receives a copy of every record.
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
    handlers: list = [logging.StreamHandler()]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        handlers=handlers,
        force=True,
    )
    logger = logging.getLogger(__name__)
    logger.debug("Logging configured at %s level", logging.getLevelName(level))


def to_fraction(value: Number) -> Fraction:
    """Parse ints, floats and strings like "1/576" into an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**9)
    return Fraction(str(value).strip())


def load_config(path: Union[str, Path]) -> Dict[str, Dict[str, Any]]:
    """Load a YAML configuration file.

    The file may hold ``mwis``, ``eds`` and ``oracle`` sections whose keys
    match the fields of the corresponding config dataclasses.

    Raises:
        ValueError: if the file is not a mapping or names an unknown section.
    """
    with open(path) as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"config file {path} must contain a mapping")
    unknown = set(data) - {"mwis", "eds", "oracle"}
    if unknown:
        raise ValueError(f"unknown config sections: {sorted(unknown)}")
    return {section: dict(values or {}) for section, values in data.items()}


def format_ratio(value: Optional[Fraction]) -> str:
    """Render a rational as "p/q (0.1234)"."""
    if value is None:
        return "n/a"
    return f"{value.numerator}/{value.denominator} ({float(value):.4f})"


def format_duration(seconds: float) -> str:
    """Format duration in seconds as human-readable string.

    Args:
        seconds: Duration in seconds.

    Returns:
        Formatted string (e.g., "2m 30s").
    """
    if seconds < 60:
        return f"{seconds:.1f}s"
    elif seconds < 3600:
        minutes = int(seconds // 60)
        remaining_seconds = seconds % 60
        return f"{minutes}m {remaining_seconds:.1f}s"
    else:
        hours = int(seconds // 3600)
        remaining_minutes = int((seconds % 3600) // 60)
        remaining_seconds = seconds % 60
        return f"{hours}h {remaining_minutes}m {remaining_seconds:.1f}s"
