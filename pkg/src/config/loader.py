"""Configuration loader

Loads parameter presets, parameter files and run configurations from YAML
or JSON and validates them with Pydantic.

Usage:
    loader = ConfigLoader()
    params = loader.load_preset("stylized")
    params = loader.load_params("p.json")
    run = loader.load_run_config("run.yaml")
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Type, TypeVar, Union

import yaml

from ..models.params import ModelParams
from .models import PresetsConfig, RunConfig

logger = logging.getLogger(__name__)

T = TypeVar('T')

PRESETS_FILE = "presets.yaml"


class ConfigLoader:
    """YAML/JSON configuration loader

    Attributes:
        config_dir: Directory holding presets.yaml

    Example:
        loader = ConfigLoader(config_dir="./config")
        params = loader.load_preset("ci")
    """

    def __init__(self, config_dir: Union[str, Path] = "./config"):
        """Initialize config loader

        Args:
            config_dir: Directory containing presets.yaml

        Raises:
            FileNotFoundError: If config directory doesn't exist
        """
        self.config_dir = Path(config_dir)

        if not self.config_dir.exists():
            raise FileNotFoundError(
                f"Config directory not found: {config_dir}"
            )

        logger.debug(f"ConfigLoader initialized: config_dir={self.config_dir}")

    def load_presets(self) -> PresetsConfig:
        """Load and validate presets.yaml

        Raises:
            FileNotFoundError: If presets.yaml not found
            yaml.YAMLError: If YAML syntax invalid
            pydantic.ValidationError: If schema invalid
        """
        return self._load_config(self.config_dir / PRESETS_FILE, PresetsConfig)

    def load_preset(self, name: str) -> ModelParams:
        """Resolve one preset into validated parameters

        Raises:
            KeyError: Unknown preset
            InvalidParametersError: Preset values violate parameter invariants
        """
        return ModelParams.from_mapping(self.load_presets().resolve(name))

    def load_params(self, path: Union[str, Path]) -> ModelParams:
        """Load a parameter file

        A file may be a flat parameter mapping or {"preset": name, ...overrides}.
        """
        data = self._read(Path(path))
        return self._params_from(data)

    def load_run_config(self, path: Union[str, Path]) -> RunConfig:
        """Load and validate a run configuration

        `params` may be inline values, {"preset": name, ...overrides} or a
        path to a parameter file (relative to the run file).
        """
        path = Path(path)
        data = self._read(path)
        params = data.get('params')
        if isinstance(params, str):
            data['params'] = self.load_params(path.parent / params)
        elif isinstance(params, dict):
            data['params'] = self._params_from(params)
        config = RunConfig(**data)
        logger.info(f"Loaded run config: {path.name}")
        return config

    def _params_from(self, data: Dict[str, Any]) -> ModelParams:
        data = dict(data)
        preset = data.pop('preset', None)
        if preset is not None:
            merged = self.load_presets().resolve(preset)
            merged.update(data)
            data = merged
        return ModelParams.from_mapping(data)

    def _read(self, path: Path) -> Dict[str, Any]:
        """Parse a YAML or JSON file into a mapping

        Raises:
            FileNotFoundError: If the file doesn't exist
            ValueError: If the file is empty
        """
        if not path.exists():
            error_msg = f"Config file not found: {path}"
            logger.error(error_msg)
            raise FileNotFoundError(error_msg)

        with open(path, 'r', encoding='utf-8') as f:
            if path.suffix.lower() == '.json':
                data = json.load(f)
            else:
                data = yaml.safe_load(f)

        if data is None:
            error_msg = f"Empty config file: {path.name}"
            logger.error(error_msg)
            raise ValueError(error_msg)
        return data

    def _load_config(self, path: Path, model_class: Type[T]) -> T:
        """Generic config loader with validation

        Raises:
            FileNotFoundError: If config file doesn't exist
            yaml.YAMLError: If YAML parsing fails
            ValueError: If config file is empty
            pydantic.ValidationError: If validation fails
        """
        try:
            data = self._read(path)
            config = model_class(**data)
            logger.debug(f"Loaded config: {path.name}")
            return config
        except yaml.YAMLError as e:
            logger.error(f"YAML syntax error in {path.name}: {e}")
            raise
        except Exception as e:
            logger.error(f"Failed to load {path.name}: {e}")
            raise
