# config.py

import json
import logging
import os
from typing import Any, Dict

from exceptions import ConfigError, ParseError

logger = logging.getLogger(__name__)

ENGINE_VERSION = "0.3.0"

# User-editable overrides live next to this file
SETTINGS_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "settings.json")

# Boundary matrices with both dimensions at or below this size use the dense SNF path
DENSE_THRESHOLD = 64

# Default materialization depth and homology range for CLI runs
DEFAULT_MAX_DIM = 4
DEFAULT_HOMOLOGY_THROUGH = 3

# Worker threads for level/degree parallel work (env: DOLDTHOM_THREADS)
THREAD_COUNT = 1

# Root log level (env: DOLDTHOM_LOG_LEVEL)
LOG_LEVEL = "INFO"

# Seed for randomized verification suites
RANDOM_SEED = 20240611

# Randomized monoids in the coherence suite: how many, and how large
RANDOM_MONOID_COUNT = 200
RANDOM_MONOID_MAX_SIZE = 6
COHERENCE_MULTISET_SIZE = 5

ENV_OVERRIDES = {
    "THREAD_COUNT": "DOLDTHOM_THREADS",
    "LOG_LEVEL": "DOLDTHOM_LOG_LEVEL",
}

_DEFAULTS: Dict[str, Any] = {
    "DENSE_THRESHOLD": DENSE_THRESHOLD,
    "DEFAULT_MAX_DIM": DEFAULT_MAX_DIM,
    "DEFAULT_HOMOLOGY_THROUGH": DEFAULT_HOMOLOGY_THROUGH,
    "THREAD_COUNT": THREAD_COUNT,
    "LOG_LEVEL": LOG_LEVEL,
    "RANDOM_SEED": RANDOM_SEED,
    "RANDOM_MONOID_COUNT": RANDOM_MONOID_COUNT,
    "RANDOM_MONOID_MAX_SIZE": RANDOM_MONOID_MAX_SIZE,
    "COHERENCE_MULTISET_SIZE": COHERENCE_MULTISET_SIZE,
}


def load_settings(path: str | None = None, environ: Dict[str, str] | None = None) -> Dict[str, Any]:
    """
    Returns the effective settings: module defaults, then settings.json, then
    environment variables. Unknown keys in the file are logged and ignored.
    """
    settings = dict(_DEFAULTS)
    path = path or SETTINGS_FILE
    environ = os.environ if environ is None else environ

    if os.path.exists(path):
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid settings JSON: {e.msg}", path=path, line_number=e.lineno) from e
        if not isinstance(data, dict):
            raise ParseError("settings file must hold a JSON object", path=path)
        for key, value in data.items():
            if key not in settings:
                logger.warning(f"Ignoring unknown settings key '{key}' in {path}")
                continue
            try:
                settings[key] = type(_DEFAULTS[key])(value)
            except (TypeError, ValueError):
                expected = type(_DEFAULTS[key]).__name__
                raise ConfigError(f"{path}: setting {key} must be {expected}, got {value!r}") from None

    for key, env_name in ENV_OVERRIDES.items():
        raw = environ.get(env_name)
        if raw:
            try:
                settings[key] = type(_DEFAULTS[key])(raw)
            except ValueError:
                logger.warning(f"Ignoring malformed {env_name}={raw!r}")

    return settings


def apply_settings(settings: Dict[str, Any]) -> None:
    """Writes the merged settings back onto this module's constants."""
    module_globals = globals()
    for key, value in settings.items():
        module_globals[key] = value
    logger.debug(f"Settings applied: {settings}")
