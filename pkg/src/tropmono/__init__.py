"""Exact tropical-geometric tools for monodromy of Newton nondegenerate germs."""

__version__ = "0.1.0"
