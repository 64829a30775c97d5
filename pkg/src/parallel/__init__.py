"""
Master-worker evaluation pool
"""

from .pool import WorkerPool, default_workers

__all__ = ['WorkerPool', 'default_workers']
