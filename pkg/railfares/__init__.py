"""Minimum rail fares, OD matrices and budget accessibility metrics."""

__version__ = "0.1.0"
