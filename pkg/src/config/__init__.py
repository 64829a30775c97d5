"""Configuration: settings, presets and run configuration"""

from .loader import ConfigLoader
from .models import BootstrapSettings, OptimizerSettings, PresetsConfig, RunConfig
from .settings import Settings, get_settings, reset_settings
from .validation import ConfigurationError, validate_run_config

__all__ = [
    'ConfigLoader',
    'BootstrapSettings',
    'OptimizerSettings',
    'PresetsConfig',
    'RunConfig',
    'Settings',
    'get_settings',
    'reset_settings',
    'ConfigurationError',
    'validate_run_config',
]
