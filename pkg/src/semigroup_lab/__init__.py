"""Semigroup Lab: exact computations for semigroup dynamical systems and their dilations."""

__version__ = "0.1.0"
