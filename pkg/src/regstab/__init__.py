"""Regularity stabilization for powers of graded m-primary ideals."""

__version__ = "0.1.0"
