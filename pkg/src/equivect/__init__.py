"""Equivariant line and vector bundle invariants over the two-sphere."""

__version__ = "0.1.0"
