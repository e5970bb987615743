"""Exact computation of Lie algebras generated by Lefschetz operators."""

__version__ = "0.1.0"
