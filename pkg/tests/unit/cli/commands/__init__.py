"""
CLI commands unit tests package.
"""

__all__ = []
