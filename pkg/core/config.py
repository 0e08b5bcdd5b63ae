# core/config.py
import os
from typing import Optional

from dotenv import load_dotenv

from core.errors import InvalidConfig

load_dotenv()


def _env_int(name: str, default: int) -> int:
    value: Optional[str] = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise InvalidConfig(f"{name}={value!r} is not an integer") from None


class UncertConfig:
    """Centralized runtime configuration (environment, optionally via .env), read at call time."""

    DEFAULT_SEED = 0
    DEFAULT_LOG_LEVEL = "WARNING"
    DEFAULT_VERIFY_DRAWS = 10000
    DEFAULT_FIB_POINTS = 40000

    @classmethod
    def seed(cls) -> int:
        """Seed used when no --seed flag is given."""
        return _env_int("UNCERT_SEED", cls.DEFAULT_SEED)

    @classmethod
    def log_level(cls) -> str:
        return os.getenv("UNCERT_LOG_LEVEL") or cls.DEFAULT_LOG_LEVEL

    @classmethod
    def verify_draws(cls) -> int:
        return _env_int("UNCERT_VERIFY_DRAWS", cls.DEFAULT_VERIFY_DRAWS)

    @classmethod
    def fib_points(cls) -> int:
        return _env_int("UNCERT_FIB_POINTS", cls.DEFAULT_FIB_POINTS)
