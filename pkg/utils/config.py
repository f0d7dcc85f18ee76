"""
Environment-driven settings for ecs-bench

Values come from the process environment, optionally seeded from a .env
file in the working directory. CLI flags override them.
"""

import os
from dataclasses import dataclass
from pathlib import Path

from utils.errors import ConfigError


DEFAULT_MAX_COMPARISONS = 2_000_000_000
DEFAULT_WORKERS = 1
DEFAULT_OUTPUT_DIR = "results"
DEFAULT_SEED = 0


@dataclass(frozen=True)
class Settings:
    """Resolved runtime settings"""
    max_comparisons: int = DEFAULT_MAX_COMPARISONS
    workers: int = DEFAULT_WORKERS
    output_dir: Path = Path(DEFAULT_OUTPUT_DIR)
    default_seed: int = DEFAULT_SEED


def _int_from_env(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw.strip().replace("_", ""))
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


def load_settings(use_dotenv: bool = True) -> Settings:
    """
    Build settings from the environment

    Args:
        use_dotenv: Load a .env file first (existing variables win)

    Returns:
        Settings instance

    Raises:
        ConfigError: If a variable is malformed
    """
    if use_dotenv:
        from dotenv import find_dotenv, load_dotenv
        load_dotenv(find_dotenv(usecwd=True))

    output_dir = os.getenv("ECS_OUTPUT_DIR") or DEFAULT_OUTPUT_DIR

    return Settings(
        max_comparisons=_int_from_env("ECS_MAX_COMPARISONS", DEFAULT_MAX_COMPARISONS, 1),
        workers=_int_from_env("ECS_WORKERS", DEFAULT_WORKERS, 1),
        output_dir=Path(output_dir.strip()),
        default_seed=_int_from_env("ECS_DEFAULT_SEED", DEFAULT_SEED, 0),
    )
