"""
CLI unit tests package.
"""

__all__ = []
