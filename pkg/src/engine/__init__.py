"""
Simulation Engine

Session loop, seed derivation and the replication harness.
"""

from .replications import replication_seeds, run_replications, simulate_many
from .seeds import derive_seed, hash_theta, spawn_streams
from .simulation import MarketSimulation, SimulationResult, run_simulation

__all__ = [
    'MarketSimulation',
    'SimulationResult',
    'run_simulation',
    'run_replications',
    'replication_seeds',
    'simulate_many',
    'derive_seed',
    'hash_theta',
    'spawn_streams',
]
