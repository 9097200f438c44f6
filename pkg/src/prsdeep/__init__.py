"""Projective Reed-Solomon codes and their deep holes."""

__version__ = "0.1.0"
