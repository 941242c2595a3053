"""Rotation groups of tight orientable rotary polytopes: construction, verification and census."""

__version__ = "0.1.0"
