"""
Unit tests package.
"""

__all__ = []
