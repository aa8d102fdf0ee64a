"""
Platform utilities for partdist.
Per-platform user directories, and the runtime facts written at the top of each log.
"""

import os
import platform
import sys
from importlib import metadata
from pathlib import Path
from typing import Dict, Optional

# Libraries whose versions can change sampler streams or quantiles
NUMERIC_PACKAGES = ('numpy', 'scipy', 'sympy', 'PyYAML')


def get_application_path() -> Path:
    """Project root in a source checkout (the directory holding app.py)."""
    return Path(__file__).parent.parent.parent


def _base_dir(kind: str) -> Path:
    """
    Platform base directory for ``kind`` ('config' or 'logs').

    Windows keeps both under %APPDATA%; macOS uses ~/Library/Preferences and
    ~/Library/Logs; elsewhere XDG_CONFIG_HOME / XDG_STATE_HOME with the usual
    fallbacks.
    """
    home = Path.home()
    if sys.platform == 'win32':
        return Path(os.environ.get('APPDATA') or home / 'AppData' / 'Roaming')
    if sys.platform == 'darwin':
        return home / 'Library' / ('Preferences' if kind == 'config' else 'Logs')
    if kind == 'config':
        return Path(os.environ.get('XDG_CONFIG_HOME') or home / '.config')
    return Path(os.environ.get('XDG_STATE_HOME') or home / '.local' / 'state')


def get_user_config_dir(app_name: str = "partdist") -> Path:
    """Directory searched for a per-user ``.env``."""
    return _base_dir('config') / app_name


def get_user_log_dir(app_name: str = "partdist") -> Path:
    """Directory for log files when LOG_DIRECTORY is not set."""
    if sys.platform == 'darwin':
        return _base_dir('logs') / app_name
    return _base_dir('logs') / app_name / 'logs'


def package_version(name: str) -> Optional[str]:
    try:
        return metadata.version(name)
    except metadata.PackageNotFoundError:
        return None


def get_platform_info() -> Dict[str, object]:
    """
    Runtime facts logged once per run.

    Returns:
        System, Python and CPU details plus the installed version (or None)
        of every package in NUMERIC_PACKAGES.
    """
    return {
        'system': platform.system(),
        'machine': platform.machine(),
        'python_version': platform.python_version(),
        'cpu_count': os.cpu_count() or 1,
        'packages': {name: package_version(name) for name in NUMERIC_PACKAGES},
    }
