"""
Integration tests package.
"""

__all__ = []
