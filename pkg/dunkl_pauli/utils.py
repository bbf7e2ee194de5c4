"""
Utility functions for configuration, reports and output files.
"""

import asyncio
import importlib
import json
import math
import os
import pkgutil
import re
import tempfile
from functools import wraps
from hashlib import sha256
from typing import Any, Callable

import aiofiles
import numpy as np
import pandas as pd
from pydantic import BaseModel

from . import __version__
from .entities import RunConfig

__all__ = [
    "SCHEMA_VERSION",
    "load_config",
    "config_hash",
    "dumps_report",
    "frame_to_csv",
    "write_content",
    "list_checks",
    "make_sync",
]

SCHEMA_VERSION = "1.0"

_FLOAT = re.compile(r'"\\u0000([^"\\]*)\\u0000"')


def load_config(path: str | None = None, **overrides: Any) -> RunConfig:
    """
    Load a run configuration with defaults < file < overrides precedence.

    Parameters
    ----------
    path : str, optional
        Path to a JSON document holding any subset of `RunConfig` fields.
    overrides : Any
        Top-level fields taking precedence over the file; None values are ignored.

    Returns
    -------
    config : RunConfig
        Validated configuration.

    Raises
    ------
    pydantic.ValidationError
        If any field fails validation.
    json.JSONDecodeError
        If the file is not valid JSON.
    """
    data = {}
    if path is not None:
        with open(path, encoding="utf-8") as file:
            data = json.load(file)
    data.update({key: value for key, value in overrides.items() if value is not None})
    config = RunConfig(**data)
    return config


def config_hash(config: RunConfig) -> str:
    """
    SHA-256 checksum of the canonical JSON form of a configuration.

    Parameters
    ----------
    config : RunConfig
        Configuration to identify.

    Returns
    -------
    str
        Hex digest, identical for identical configurations.
    """
    canonical = json.dumps(config.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
    return sha256(canonical.encode("utf-8")).hexdigest()


def _tag_floats(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return _tag_floats(value.model_dump(mode="python", by_alias=True))
    if isinstance(value, dict):
        return {str(key): _tag_floats(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_tag_floats(item) for item in value]
    if isinstance(value, np.ndarray):
        return [_tag_floats(item) for item in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            return None
        text = format(float(value), ".17g")
        if text.lstrip("-").isdigit():
            text += ".0"
        # sentinels are replaced by bare numbers after serialisation
        return f"\x00{text}\x00"
    return value


def dumps_report(report: dict, config: RunConfig) -> str:
    """
    Serialise a report to deterministic JSON.

    Keys are sorted, floats carry 17 significant digits, non-finite floats
    become null, and the config hash, tool version and schema version are
    embedded.

    Parameters
    ----------
    report : dict
        Report body; may hold pydantic models and numpy values.
    config : RunConfig
        Configuration the report was produced from.

    Returns
    -------
    str
        JSON text ending with a newline.
    """
    body = {
        **report,
        "config_hash": config_hash(config),
        "tool_version": __version__,
        "schema_version": SCHEMA_VERSION,
    }
    text = json.dumps(_tag_floats(body), sort_keys=True, indent=2)
    return _FLOAT.sub(r"\1", text) + "\n"


def frame_to_csv(df: pd.DataFrame) -> str:
    """CSV text with a header row, comma delimiter, LF line endings and round-trip floats."""
    return df.to_csv(index=False, lineterminator="\n")


async def write_content(content: str, file_path: str) -> str:
    """
    Asynchronously and atomically write text to a file.

    The content goes to a temporary file in the target folder that then
    replaces the destination.

    Parameters
    ----------
    content : str
        Text to write.
    file_path : str
        Destination path.

    Returns
    -------
    file_path : str
        The destination path.
    """
    folder_path = os.path.dirname(os.path.abspath(file_path))
    handle, temp_path = tempfile.mkstemp(dir=folder_path, suffix=".tmp")
    os.close(handle)
    try:
        async with aiofiles.open(temp_path, mode="w", encoding="utf-8", newline="\n") as file:
            await file.write(content)
        os.replace(temp_path, file_path)
    finally:
        if os.path.exists(temp_path):
            os.remove(temp_path)
    return file_path


def list_checks() -> list[str]:
    """
    List public package modules under checks subpackage.

    Returns
    -------
    checks : list[str]
        Check modules available.
    """
    package = importlib.import_module(f"{__package__}.checks")
    modules = pkgutil.iter_modules(package.__path__)
    checks = [name for _, name, _ in modules if not name.startswith("_")]
    return checks


def make_sync(func: Callable) -> Callable:
    """
    Run an async click command in its own event loop.

    click has no native coroutine support, see
    https://github.com/pallets/click/issues/2033. Commands are async so that
    checks and oracle diagonalizations can be gathered concurrently.

    Parameters
    ----------
    func : Callable
        Coroutine function implementing a command.

    Returns
    -------
    wrapper : Callable
        Synchronous callable accepted by click.
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        return asyncio.run(func(*args, **kwargs))

    return wrapper
