"""Finite symmetric operads and the structures built from them."""

__version__ = "0.1.0"
