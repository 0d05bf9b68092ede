"""Exact-arithmetic toolkit for the category of finite-dimensional Hilbert spaces and contractions."""

__version__ = "0.1.0"
