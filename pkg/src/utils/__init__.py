# partdist - Utilities Module
"""
Configuration, logging, validation and platform helpers.
"""

from .config_loader import ConfigLoader
from .logging_config import setup_logging, cleanup_old_logs
from .env_config import config, AppConfig
from .validation import ValidationError, ValidationResult, ParameterValidator
from .platform_utils import (
    get_application_path,
    get_user_config_dir,
    get_user_log_dir,
    get_platform_info,
)

__all__ = [
    'ConfigLoader', 'setup_logging', 'cleanup_old_logs', 'config', 'AppConfig',
    'ValidationError', 'ValidationResult', 'ParameterValidator',
    'get_application_path', 'get_user_config_dir', 'get_user_log_dir', 'get_platform_info',
]
