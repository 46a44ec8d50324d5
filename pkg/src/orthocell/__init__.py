"""Exact combinatorics of orthocells and T-stable products of projective lines in G/B."""

from .rootsys import CartanType, Root, RootSystem, build_root_system
from .weyl import PreconditionError, WeylElement

__version__ = "0.1.0"

__all__ = [
    "CartanType",
    "PreconditionError",
    "Root",
    "RootSystem",
    "WeylElement",
    "build_root_system",
]
