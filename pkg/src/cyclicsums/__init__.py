"""Comparative indices, cyclic sums, Kashiwara indices and focal points for Lagrangian frame chains."""

__version__ = "0.1.0"
