"""Exact-arithmetic kernel for Lie subalgebra pairs: Fedosov-style
resolutions, contractions, homotopy transfer, and verification tooling."""

__version__ = "0.1.0"
