"""
Configuration loader for partdist.
Loads default CLI option values from a YAML configuration file.
"""

import logging

import yaml
from pathlib import Path
from typing import Dict, Any, Optional

from .platform_utils import get_application_path

logger = logging.getLogger(__name__)


class ConfigLoader:
    """Load and manage configuration from YAML file."""

    DEFAULT_CONFIG_PATHS = [
        'partdist_config.yml',
        'partdist_config.yaml',
        '.partdist_config.yml',
        '.partdist_config.yaml',
    ]

    EXAMPLE_CONFIG_PATHS = [
        'partdist_config.example.yml',
    ]

    # key -> accepted Python type
    RECOGNISED_DEFAULTS = {
        'format': str,
        'workers': int,
        'seed': int,
        'trials': int,
    }

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize the config loader.

        Args:
            config_path: Optional specific path to config file.
        """
        self.config_path = config_path
        self.config_data = {}

    def load_defaults(self) -> Dict[str, Any]:
        """
        Load CLI defaults from the YAML config file.

        Unknown keys and values of the wrong type are skipped with a warning.

        Returns:
            Dictionary of defaults. Empty dict if no config found.
        """
        config_file = self._find_config_file()

        if not config_file:
            return {}

        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            logger.warning(f"Error parsing YAML config: {e}")
            return {}
        except OSError as e:
            logger.warning(f"Error loading config file: {e}")
            return {}

        if not isinstance(data, dict):
            return {}

        section = data.get('defaults') or {}
        defaults = {}
        for key, value in section.items():
            expected = self.RECOGNISED_DEFAULTS.get(key)
            if expected is None:
                logger.warning(f"Ignoring unknown config key: {key}")
            elif isinstance(value, bool) or not isinstance(value, expected):
                logger.warning(f"Ignoring config key {key}: expected {expected.__name__}, got {value!r}")
            else:
                defaults[key] = value

        logger.debug(f"Loaded defaults from {config_file}: {defaults}")
        self.config_data = defaults
        return defaults

    def _find_config_file(self) -> Optional[Path]:
        """
        Find the config file to use.
        Searches cwd, home and the application directory, then falls back
        to the example file.

        Returns:
            Path to config file, or None if not found.
        """
        if self.config_path:
            path = Path(self.config_path)
            if path.exists():
                return path
            logger.warning(f"Config file not found: {self.config_path}")
            return None

        for directory in (Path.cwd(), Path.home(), get_application_path()):
            for filename in self.DEFAULT_CONFIG_PATHS:
                path = directory / filename
                if path.exists():
                    return path

        for filename in self.EXAMPLE_CONFIG_PATHS:
            path = get_application_path() / filename
            if path.exists():
                logger.info(f"Using example config file: {path}")
                return path

        return None
