"""
Command-line interface
"""

from .commands import cli, main

__all__ = ['cli', 'main']
