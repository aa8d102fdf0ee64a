"""
Environment configuration loader for partdist.
Loads configuration from a .env file and provides defaults.
"""

import logging
import os
from pathlib import Path
from typing import List, Optional

logger = logging.getLogger(__name__)

APP_DIR_NAME = 'partdist'

# Hard ceiling for exact-enumeration commands; p(60) is about 9.7e5 partitions.
EXACT_MAX_N_CEILING = 60
SAMPLER_MAX_N_CEILING = 10 ** 6

# platform_utils is loaded lazily to avoid a circular import
_platform_utils = None


def _get_platform_utils():
    """Lazy load platform_utils to avoid circular imports."""
    global _platform_utils
    if _platform_utils is None:
        from . import platform_utils as pu
        _platform_utils = pu
    return _platform_utils


def _env_file_candidates() -> List[Path]:
    return [
        Path.cwd() / '.env',
        Path(__file__).parent.parent.parent / '.env',
        _get_platform_utils().get_user_config_dir(APP_DIR_NAME) / '.env',
    ]


def _load_env_file() -> bool:
    """
    Load the first .env file found.

    Variables already set in the process environment are left untouched.
    """
    for env_path in _env_file_candidates():
        if not env_path.exists():
            continue
        try:
            with open(env_path, 'r', encoding='utf-8') as f:
                for line in f:
                    line = line.strip()
                    if line and not line.startswith('#') and '=' in line:
                        key, _, value = line.partition('=')
                        key = key.strip()
                        value = value.strip().strip('"').strip("'")
                        if key and key not in os.environ:
                            os.environ[key] = value
            return True
        except OSError as e:
            logger.warning(f"Could not read {env_path}: {e}")
    return False


# Load .env file on module import
_load_env_file()


def get_env(key: str, default: Optional[str] = None) -> Optional[str]:
    """Get environment variable with optional default."""
    return os.environ.get(key, default)


def get_env_int(key: str, default: int) -> int:
    """Get environment variable as integer."""
    value = os.environ.get(key)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        return default


def _get_package_version() -> str:
    """Get version from installed package metadata, with fallback."""
    try:
        from importlib.metadata import version
        return version('partdist')
    except Exception:
        return '1.0.0'


class AppConfig:
    """Application configuration from environment variables."""

    # Application settings
    APP_NAME = get_env('APP_NAME', 'partdist')
    APP_VERSION = get_env('APP_VERSION', _get_package_version())
    APP_AUTHOR = get_env('APP_AUTHOR', 'partdist developers')

    # Computation limits
    EXACT_MAX_N = EXACT_MAX_N_CEILING
    SAMPLER_MAX_N = SAMPLER_MAX_N_CEILING
    DEFAULT_WORKERS = max(1, get_env_int('PARTDIST_WORKERS', 1))

    # Logging settings
    LOG_DIRECTORY = get_env('LOG_DIRECTORY', '')
    LOG_LEVEL = get_env('LOG_LEVEL', 'INFO')
    LOG_MAX_AGE_DAYS = get_env_int('LOG_MAX_AGE_DAYS', 30)
    LOG_MAX_FILES = get_env_int('LOG_MAX_FILES', 50)

    @classmethod
    def exact_max_n(cls) -> int:
        """
        Effective n ceiling for exact enumeration.

        PARTDIST_MAX_N is read on every call and may only lower the ceiling.
        """
        raw = os.environ.get('PARTDIST_MAX_N')
        if raw is None:
            return cls.EXACT_MAX_N
        try:
            requested = int(raw)
        except ValueError:
            logger.warning(f"Ignoring PARTDIST_MAX_N={raw!r}: not an integer")
            return cls.EXACT_MAX_N
        if not 1 <= requested <= cls.EXACT_MAX_N:
            logger.warning(f"Ignoring PARTDIST_MAX_N={requested}: must lie in 1..{cls.EXACT_MAX_N}")
            return cls.EXACT_MAX_N
        return requested

    @classmethod
    def get_log_directory(cls) -> Path:
        """Get the configured log directory path (platform-aware)."""
        if cls.LOG_DIRECTORY:
            return Path(cls.LOG_DIRECTORY)
        return _get_platform_utils().get_user_log_dir(APP_DIR_NAME)


# Create singleton instance
config = AppConfig()
