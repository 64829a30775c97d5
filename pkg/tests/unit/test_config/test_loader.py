"""Unit tests for ConfigLoader

Tests preset resolution, parameter files, run configurations and error
handling.
"""

import shutil
from pathlib import Path

import pytest
import yaml
from pydantic import ValidationError

from src.config.loader import ConfigLoader
from src.config.models import PresetsConfig, RunConfig
from src.models.errors import InvalidParametersError
from src.models.params import ModelParams


# Fixtures directory
FIXTURES_DIR = Path(__file__).parent.parent.parent / "fixtures" / "config"
REPO_CONFIG_DIR = Path(__file__).parent.parent.parent.parent / "config"


@pytest.fixture
def loader():
    """ConfigLoader with the fixture presets"""
    return ConfigLoader(config_dir=FIXTURES_DIR)


# ============================================================================
# ConfigLoader Initialization Tests
# ============================================================================

def test_config_loader_init_success():
    """Test ConfigLoader initialization with valid directory"""
    loader = ConfigLoader(config_dir=str(FIXTURES_DIR))
    assert loader.config_dir == FIXTURES_DIR


def test_config_loader_init_directory_not_found():
    """Test ConfigLoader fails with non-existent directory"""
    with pytest.raises(FileNotFoundError) as exc_info:
        ConfigLoader(config_dir="./nonexistent_dir")

    assert "Config directory not found" in str(exc_info.value)


# ============================================================================
# Preset Tests
# ============================================================================

def test_load_presets_success(loader):
    """Test presets.yaml loads into PresetsConfig"""
    presets = loader.load_presets()

    assert isinstance(presets, PresetsConfig)
    assert {"base_set", "child", "grandchild"} <= set(presets.presets)


def test_preset_inheritance(loader):
    """Test `base:` inherits values through several levels"""
    params = loader.load_preset("grandchild")

    assert isinstance(params, ModelParams)
    assert params.N_L == 150
    assert params.delta == pytest.approx(0.0003)
    assert params.T == 50
    assert params.lambda_ == pytest.approx(0.625)


def test_unknown_preset(loader):
    """Test unknown preset names list the available ones"""
    with pytest.raises(KeyError) as exc_info:
        loader.load_preset("missing")

    assert "base_set" in str(exc_info.value)


def test_preset_inheritance_cycle(loader):
    """Test cyclic `base:` chains are rejected"""
    with pytest.raises(ValueError, match="cycle"):
        loader.load_preset("loop_a")


def test_preset_violating_invariants(loader):
    """Test presets are validated as ModelParams"""
    with pytest.raises(InvalidParametersError) as exc_info:
        loader.load_preset("broken")

    assert "gamma_H" in str(exc_info.value)


def test_empty_presets_rejected():
    """Test at least one preset is required"""
    with pytest.raises(ValidationError):
        PresetsConfig(presets={})


def test_shipped_presets_valid():
    """Test every preset shipped in config/ validates"""
    loader = ConfigLoader(config_dir=REPO_CONFIG_DIR)
    names = loader.load_presets().presets

    for name in names:
        assert isinstance(loader.load_preset(name), ModelParams)

    assert loader.load_preset("stylized").N_L == 10000
    assert loader.load_preset("ci").N_L == 1000
    assert loader.load_preset("nm_ta_best").P0 == pytest.approx(238.75)


def test_invalid_yaml_syntax(tmp_path):
    """Test YAML syntax errors propagate"""
    shutil.copy(FIXTURES_DIR / "invalid_yaml.yaml", tmp_path / "presets.yaml")
    loader = ConfigLoader(config_dir=tmp_path)

    with pytest.raises(yaml.YAMLError):
        loader.load_presets()


def test_presets_file_not_found(tmp_path):
    """Test missing presets.yaml"""
    loader = ConfigLoader(config_dir=tmp_path)

    with pytest.raises(FileNotFoundError, match="Config file not found"):
        loader.load_presets()


# ============================================================================
# Parameter File Tests
# ============================================================================

def test_load_params_json_with_preset(loader):
    """Test a JSON parameter file on top of a preset"""
    params = loader.load_params(FIXTURES_DIR / "params.json")

    assert params.N_H == 0
    assert params.lambda_ == pytest.approx(0.5)
    assert params.N_L == 100


def test_load_params_flat_mapping(loader, tmp_path):
    """Test a flat parameter file without preset"""
    path = tmp_path / "flat.json"
    path.write_text(loader.load_preset("base_set").to_json())

    assert loader.load_params(path) == loader.load_preset("base_set")


def test_load_params_empty_file(loader):
    """Test empty files are rejected"""
    with pytest.raises(ValueError, match="Empty config file"):
        loader.load_params(FIXTURES_DIR / "empty.yaml")


def test_zero_drift_accepted(loader):
    """Test delta = 0 is a valid drift-free setting"""
    params = loader.load_preset("base_set").with_updates(delta=0.0)

    assert params.delta == 0.0


def test_negative_drift_rejected(loader):
    """Test negative delta is rejected"""
    with pytest.raises(InvalidParametersError) as exc_info:
        loader.load_preset("base_set").with_updates(delta=-1e-4)

    assert "delta" in str(exc_info.value)


# ============================================================================
# Run Config Tests
# ============================================================================

def test_load_run_config_success(loader):
    """Test run.yaml with inline preset overrides and explicit bounds"""
    config = loader.load_run_config(FIXTURES_DIR / "run.yaml")

    assert isinstance(config, RunConfig)
    assert config.params.N_L == 150
    assert config.params.delta == pytest.approx(0.0002)
    assert [p.name for p in config.free_params] == ["delta", "N_L"]
    assert config.free_params[1].integer
    assert config.free_params[1].upper == 500
    assert config.optimizer.method == "nm_ta"
    assert config.optimizer.iterations == 10
    assert config.seed == 3
    # defaults
    assert config.bootstrap.b == 100
    assert config.bootstrap.n == 10000
    assert config.optimizer.runs == 1


def test_load_run_config_params_file(loader):
    """Test params given as a file path and free params as a comma list"""
    config = loader.load_run_config(FIXTURES_DIR / "run_params_file.yaml")

    assert config.params.N_H == 0
    assert [p.name for p in config.free_params] == ["delta", "sigma_z"]
    assert config.free_params[0].upper == pytest.approx(0.1)
    assert config.optimizer.method == "ga"
    assert config.bootstrap.b == 20


def test_run_config_unknown_free_parameter(loader):
    """Test unknown free-parameter names fail validation"""
    params = loader.load_preset("base_set")

    with pytest.raises(Exception) as exc_info:
        RunConfig(params=params, free_params=["gamma"], bars="bars.csv")

    assert "gamma" in str(exc_info.value)


def test_run_config_duplicate_free_parameter(loader):
    """Test duplicate free-parameter names fail validation"""
    params = loader.load_preset("base_set")

    with pytest.raises(ValidationError, match="distinct"):
        RunConfig(params=params, free_params=["delta", "delta"], bars="bars.csv")


def test_run_config_requires_free_parameter(loader):
    """Test an empty free set is rejected"""
    params = loader.load_preset("base_set")

    with pytest.raises(ValidationError):
        RunConfig(params=params, free_params=[], bars="bars.csv")


def test_run_config_unknown_method(loader):
    """Test only nm_ta and ga are accepted"""
    params = loader.load_preset("base_set")

    with pytest.raises(ValidationError):
        RunConfig(params=params, free_params=["delta"], bars="bars.csv", optimizer={"method": "pso"})
