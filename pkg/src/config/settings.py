"""Analysis configuration defaults."""

import os
from typing import Optional, Tuple

from dotenv import load_dotenv


ENV_PREFIX = "STEADY_"


class AnalysisConfig:
    """Default settings for indicator computation and reporting."""
    min_cases: int = 90
    sr_floor: float = 90.0
    cmd_ceiling: float = 0.4
    ciqr_quantiles: Tuple[float, float] = (0.05, 0.95)
    include_failures: bool = True
    sd_multiplier: float = 1.0
    iqr_multiplier: float = 1.5
    machine_decimals: int = 4
    markdown_decimals: int = 2
    healthy_benchmark: str = "EFP"
    failing_benchmark: str = "MP"
    min_correlation_rows: int = 3


def _parse_bool(raw: str) -> bool:
    value = raw.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def _parse_pair(raw: str) -> Tuple[float, float]:
    low, high = (float(part) for part in raw.split(","))
    return low, high


_CONVERTERS = {
    "min_cases": int,
    "sr_floor": float,
    "cmd_ceiling": float,
    "ciqr_quantiles": _parse_pair,
    "include_failures": _parse_bool,
    "sd_multiplier": float,
    "iqr_multiplier": float,
    "healthy_benchmark": str,
    "failing_benchmark": str,
}


def load_defaults(env_file: Optional[str] = None) -> dict:
    """Resolve configuration defaults, applying ``STEADY_*`` overrides.

    An optional ``.env`` file is loaded first; variables already present in
    the process environment take precedence over it.

    Args:
        env_file: Explicit path to a dotenv file (defaults to ``./.env``)

    Returns:
        Dict mapping setting name to its resolved value

    Raises:
        ValueError: If an override cannot be converted to the setting's type
    """
    load_dotenv(env_file, override=False)

    resolved = {}
    for name, convert in _CONVERTERS.items():
        raw = os.getenv(ENV_PREFIX + name.upper())
        if raw is None:
            resolved[name] = getattr(AnalysisConfig, name)
            continue
        try:
            resolved[name] = convert(raw)
        except ValueError as e:
            raise ValueError(f"{ENV_PREFIX}{name.upper()}: {e}") from e
    return resolved
