"""
Exporters module unit tests package.
"""

__all__ = []
