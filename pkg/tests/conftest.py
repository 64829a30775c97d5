"""
Pytest Configuration and Fixtures
Shared fixtures for all tests
"""

from pathlib import Path

import numpy as np
import pytest

from src.config.loader import ConfigLoader
from src.config.settings import reset_settings
from src.metrics import reset_evaluation_stats
from src.models.params import ModelParams


CONFIG_DIR = Path(__file__).parent.parent / "config"
FIXTURES_DIR = Path(__file__).parent / "fixtures"

# Published weight matrix of one week of minute mid prices; diagonal order
# mean, std_dev, kurtosis, ks_stat, hurst
PUBLISHED_WEIGHTS = np.array([
    [5.0346e4, -1.2885e4, -736.6343, 3.0220e3, 391.2534],
    [-1.2885e4, 7.8957e5, 2.5435e3, -341.4378, -6.1999e3],
    [-736.6343, 2.5435e3, 28.7473, -88.4746, 17.2640],
    [3.0220e3, -341.4378, -88.4746, 723.4611, 56.7301],
    [391.2534, -6.1999e3, 17.2640, 56.7301, 2.3549e3],
])
PUBLISHED_CONDITION_NUMBER = 1.2772e5


@pytest.fixture(autouse=True)
def clean_state():
    """Fresh settings and in-process counters for every test"""
    reset_settings()
    reset_evaluation_stats()
    yield
    reset_settings()


@pytest.fixture(scope="session")
def config_loader():
    return ConfigLoader(config_dir=CONFIG_DIR)


@pytest.fixture(scope="session")
def stylized_params(config_loader) -> ModelParams:
    """Reference parameter set (T=1200, N_L=10000, N_H=100)"""
    return config_loader.load_preset("stylized")


@pytest.fixture(scope="session")
def ci_params(config_loader) -> ModelParams:
    """Reduced set for CI-sized statistical checks"""
    return config_loader.load_preset("ci")


@pytest.fixture(scope="session")
def small_params(stylized_params) -> ModelParams:
    """Seconds-fast parameter set for unit tests"""
    return stylized_params.with_updates(T=120, N_L=200, N_H=10)


@pytest.fixture(scope="session")
def reference_log_prices() -> np.ndarray:
    """Gaussian random walk in log price, 300 minutes around 100"""
    rng = np.random.default_rng(2024)
    return np.log(100.0) + np.cumsum(rng.normal(0.0, 1e-3, 300))


@pytest.fixture
def published_weights() -> np.ndarray:
    return PUBLISHED_WEIGHTS.copy()
