"""Exact verification toolkit for baxterized R-matrices, boundary K-matrices
and open integrable chains."""

__version__ = "0.1.0"
