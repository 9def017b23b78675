"""
Core unit tests package.
"""

__all__ = []
