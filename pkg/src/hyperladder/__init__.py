"""Exact verification of hypercomplex ladder operators for the Heisenberg-symplectic group."""

__version__ = "0.1.0"
