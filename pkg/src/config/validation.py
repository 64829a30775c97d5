"""Run configuration validation

Cross-checks a RunConfig against the filesystem before any simulation
work starts.

Validates:
- Referenced data files exist
- Output directory is writable
- Free parameters are distinct, known, and have ordered bounds

Raises:
- ConfigurationError: If any validation fails (message ends with a fix hint)
"""

import logging
import os
from pathlib import Path

from ..models.errors import LobcalError
from ..models.params import ModelParams
from .models import RunConfig

logger = logging.getLogger(__name__)


class ConfigurationError(LobcalError):
    """Raised when configuration validation fails"""
    pass


def validate_paths(config: RunConfig) -> None:
    """Check input files and output directory

    Raises:
        ConfigurationError: Missing input file or unwritable output directory
    """
    for label, value in (('bars', config.bars), ('weights', config.weights)):
        if value is not None and not Path(value).is_file():
            raise ConfigurationError(
                f"Invalid run configuration:\n"
                f"  - {label} file not found: {value}\n\n"
                f"Fix: run `lobcal ingest` / `lobcal weights` first or correct the {label} path"
            )

    out = Path(config.output_dir)
    existing = out if out.exists() else next((p for p in out.parents if p.exists()), Path('.'))
    if not os.access(existing, os.W_OK):
        raise ConfigurationError(
            f"Invalid run configuration:\n"
            f"  - output directory not writable: {config.output_dir}\n\n"
            f"Fix: choose a writable output_dir"
        )


def validate_free_params(config: RunConfig) -> None:
    """Check free-parameter names and bounds

    Raises:
        ConfigurationError: Unknown or duplicate names, inverted bounds
    """
    known = set(ModelParams.field_names())
    seen = set()
    for p in config.free_params:
        if p.name not in known:
            raise ConfigurationError(
                f"Invalid free parameter '{p.name}':\n"
                f"  - not a model parameter\n\n"
                f"Fix: use one of {sorted(known)}"
            )
        if p.name in seen:
            raise ConfigurationError(
                f"Invalid free parameter '{p.name}':\n"
                f"  - listed twice\n\n"
                f"Fix: remove the duplicate entry"
            )
        seen.add(p.name)
        if p.lower > p.upper:
            raise ConfigurationError(
                f"Invalid free parameter '{p.name}':\n"
                f"  - lower ({p.lower}) > upper ({p.upper})\n\n"
                f"Fix: swap the bounds"
            )


def validate_run_config(config: RunConfig) -> RunConfig:
    """Validate a run configuration

    Returns:
        The same config, for chaining

    Raises:
        ConfigurationError: If any validation fails
    """
    validate_free_params(config)
    validate_paths(config)
    logger.info(
        f"Run configuration valid: method={config.optimizer.method}, "
        f"free={[p.name for p in config.free_params]}"
    )
    return config
