"""
Runtime bounds and defaults.

Configuration is read from config.py (preferred) or environment variables;
see config.py.example for every key.
"""

from __future__ import annotations

import os
from contextlib import contextmanager


def _load_setting(config_value, env_names, default=None):
    if config_value not in (None, ""):
        return config_value
    for env_name in env_names:
        env_value = os.environ.get(env_name)
        if env_value not in (None, ""):
            return env_value
    return default


def _load_flag(config_value, env_names, default: bool = False) -> bool:
    raw = _load_setting(config_value, env_names, default=None)
    if raw in (None, ""):
        return default
    if isinstance(raw, bool):
        return raw
    return str(raw).strip().lower() in {"1", "true", "yes", "on"}


try:
    import config as _config
except ImportError:
    _config = None


def _config_value(attr: str):
    return getattr(_config, attr, None) if _config else None


MAX_M = int(_load_setting(_config_value("ZK_MAX_M"), ("ZK_MAX_M",), default=20))
KOSZUL_MAX_M = int(_load_setting(_config_value("ZK_KOSZUL_MAX_M"), ("ZK_KOSZUL_MAX_M",), default=10))
FACET_ORDER_CAP = int(
    _load_setting(_config_value("ZK_FACET_ORDER_CAP"), ("ZK_FACET_ORDER_CAP",), default=12)
)
CENSUS_MAX_M = int(_load_setting(_config_value("ZK_CENSUS_MAX_M"), ("ZK_CENSUS_MAX_M",), default=6))
CENSUS_FLAG_MAX_M = int(
    _load_setting(_config_value("ZK_CENSUS_FLAG_MAX_M"), ("ZK_CENSUS_FLAG_MAX_M",), default=8)
)
CENSUS_EXHAUSTIVE_LIMIT = int(
    _load_setting(
        _config_value("ZK_CENSUS_EXHAUSTIVE_LIMIT"), ("ZK_CENSUS_EXHAUSTIVE_LIMIT",), default=40000
    )
)
RINGS = str(_load_setting(_config_value("ZK_RINGS"), ("ZK_RINGS",), default="Q,Fp:2,Fp:3"))
# None => 2m+2 per complex
TRUNCATION = _load_setting(_config_value("ZK_TRUNCATION"), ("ZK_TRUNCATION",), default=None)
TRUNCATION = int(TRUNCATION) if TRUNCATION is not None else None
WORKERS = int(_load_setting(_config_value("ZK_WORKERS"), ("ZK_WORKERS",), default=1))
CACHE_DIR = _load_setting(_config_value("ZK_CACHE_DIR"), ("ZK_CACHE_DIR",), default=None)
WIDE_MASKS = _load_flag(_config_value("ZK_WIDE_MASKS"), ("ZK_WIDE_MASKS",), default=False)

# Single-word masks unless the wide variant is enabled.
MASK_WIDTH = 4096 if WIDE_MASKS else 64

if MAX_M <= 0 or KOSZUL_MAX_M <= 0 or FACET_ORDER_CAP <= 0:
    raise RuntimeError("Size bounds must be positive (ZK_MAX_M, ZK_KOSZUL_MAX_M, ZK_FACET_ORDER_CAP).")

if WORKERS <= 0:
    raise RuntimeError("ZK_WORKERS must be positive.")

BOUND_NAMES = ("MAX_M", "KOSZUL_MAX_M", "FACET_ORDER_CAP")


def current_bounds() -> dict[str, int]:
    return {name: globals()[name] for name in BOUND_NAMES}


def apply_bounds(values: dict[str, int]) -> None:
    unknown = set(values) - set(BOUND_NAMES)
    if unknown:
        raise KeyError(f"not a size bound: {', '.join(sorted(unknown))}")
    if any(v <= 0 for v in values.values()):
        raise ValueError("Size bounds must be positive.")
    globals().update(values)


@contextmanager
def bounds_overridden(**values: int):
    """Temporarily replace size bounds; worker pools started inside inherit them."""
    saved = current_bounds()
    apply_bounds(values)
    try:
        yield
    finally:
        apply_bounds(saved)
