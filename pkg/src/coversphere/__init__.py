"""Combinatorial engine for boundary spheres of polyhedral universal covers."""

__version__ = "0.1.0"
