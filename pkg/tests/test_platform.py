"""
Unit tests for platform utilities.
"""

import os
import sys
import unittest
from pathlib import Path
from unittest import mock

from src.utils.platform_utils import (
    NUMERIC_PACKAGES,
    get_application_path,
    get_platform_info,
    get_user_config_dir,
    get_user_log_dir,
    package_version,
)


class TestDirectories(unittest.TestCase):
    """Config and log directories."""

    def test_application_path_holds_app(self):
        app_path = get_application_path()
        self.assertTrue((app_path / 'app.py').exists())
        self.assertTrue((app_path / 'src' / 'cli.py').exists())

    def test_config_dir_ends_with_app_name(self):
        self.assertEqual(get_user_config_dir('partdist_test').name, 'partdist_test')

    def test_log_dir_differs_from_config_dir(self):
        self.assertNotEqual(get_user_log_dir('partdist_test'), get_user_config_dir('partdist_test'))

    @unittest.skipUnless(sys.platform.startswith('linux'), "XDG paths are Linux only")
    def test_xdg_overrides(self):
        """XDG_CONFIG_HOME and XDG_STATE_HOME are honoured."""
        env = {'XDG_CONFIG_HOME': '/tmp/xdg_config', 'XDG_STATE_HOME': '/tmp/xdg_state'}
        with mock.patch.dict(os.environ, env):
            self.assertEqual(get_user_config_dir('pd'), Path('/tmp/xdg_config/pd'))
            self.assertEqual(get_user_log_dir('pd'), Path('/tmp/xdg_state/pd/logs'))

    @unittest.skipUnless(sys.platform.startswith('linux'), "XDG paths are Linux only")
    def test_xdg_fallbacks(self):
        with mock.patch.dict(os.environ, {}, clear=False):
            os.environ.pop('XDG_CONFIG_HOME', None)
            os.environ.pop('XDG_STATE_HOME', None)
            self.assertEqual(get_user_config_dir('pd'), Path.home() / '.config' / 'pd')
            self.assertEqual(get_user_log_dir('pd'), Path.home() / '.local' / 'state' / 'pd' / 'logs')


class TestPlatformInfo(unittest.TestCase):
    """Runtime facts for the log header."""

    def test_keys(self):
        info = get_platform_info()
        self.assertEqual(set(info), {'system', 'machine', 'python_version', 'cpu_count', 'packages'})
        self.assertGreaterEqual(info['cpu_count'], 1)

    def test_numeric_packages_reported(self):
        """numpy is a runtime dependency, so its version is known."""
        packages = get_platform_info()['packages']
        self.assertEqual(tuple(packages), NUMERIC_PACKAGES)
        self.assertIsNotNone(packages['numpy'])

    def test_missing_package(self):
        self.assertIsNone(package_version('partdist-no-such-package'))

    def test_log_directory_is_platform_aware(self):
        from src.utils.env_config import AppConfig

        with mock.patch.object(AppConfig, 'LOG_DIRECTORY', ''):
            log_dir = AppConfig.get_log_directory()
        self.assertTrue(log_dir.is_absolute())


if __name__ == '__main__':
    unittest.main()
