"""Intersection cohomology of moduli spaces of vector bundles on curves."""

__version__ = "1.0.0"
