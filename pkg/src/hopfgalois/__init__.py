"""Exact Hopf-Galois structures on finite separable extensions."""

__version__ = "0.1.0"
