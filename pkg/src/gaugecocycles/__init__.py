"""Exact computations for covariant central extensions of gauge Lie algebras over the circle."""

__version__ = "0.1.0"
