"""Exact computations with generic 2 x 2 matrices and Gelfand-Kirillov dimension."""

__version__ = "0.1.0"
