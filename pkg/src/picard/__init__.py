"""Exact verification of the totally geodesic surface obstructions for five Picard-group covers."""

__version__ = "0.1.0"
