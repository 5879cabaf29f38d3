"""Exact engine for general ranks between representations of quivers with potentials."""

__version__ = "0.1.0"
