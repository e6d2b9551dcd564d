"""
Runtime configuration
Values come from the environment (optionally a .env file) and may be
overridden per call or by CLI flags
"""
import os
from dataclasses import dataclass, replace
from fractions import Fraction

from errors import ConfigError

# Try to load .env file if python-dotenv is available
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # python-dotenv not installed, will use system env vars

SCHEMA_VERSION = "hcover.report/1"
TOOL_VERSION = "1.0.0"


def _env_int(name, default, minimum=0):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


def _env_fraction(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = Fraction(raw.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{name} must be a rational number, got {raw!r}") from None
    if value <= 0:
        raise ConfigError(f"{name} must be positive, got {raw!r}")
    return value


@dataclass(frozen=True)
class Settings:
    threads: int = 1
    exact_max_t2: int = 24
    exact_max_t3: int = 20
    table_max: int = 22
    optima_cap: int = 10_000
    q_max: int = 4
    oracle_max_n: int = 8
    oracle_max_nodes: int = 10**9
    gap_eps: Fraction = Fraction(1)

    def exact_max(self, t):
        """Exact-profile vertex limit for clique order t"""
        return self.exact_max_t2 if t <= 2 else self.exact_max_t3

    def with_overrides(self, **overrides):
        """Copy with the given non-None fields replaced"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def load_settings():
    """Read settings from the environment"""
    return Settings(
        threads=_env_int("HCOVER_THREADS", 1, minimum=1),
        exact_max_t2=_env_int("HCOVER_EXACT_MAX_T2", 24, minimum=1),
        exact_max_t3=_env_int("HCOVER_EXACT_MAX_T3", 20, minimum=1),
        table_max=_env_int("HCOVER_TABLE_MAX", 22, minimum=1),
        optima_cap=_env_int("HCOVER_OPTIMA_CAP", 10_000, minimum=1),
        q_max=_env_int("HCOVER_Q_MAX", 4, minimum=1),
        oracle_max_n=_env_int("HCOVER_ORACLE_MAX_N", 8, minimum=1),
        oracle_max_nodes=_env_int("HCOVER_ORACLE_MAX_NODES", 10**9, minimum=1),
        gap_eps=_env_fraction("HCOVER_GAP_EPS", Fraction(1)),
    )


SETTINGS = load_settings()
