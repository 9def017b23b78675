"""
Command-line interface for classtrace.
"""

from .main import app, main, run

__all__ = ["app", "main", "run"]
