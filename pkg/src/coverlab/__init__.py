"""Proper-union covers of abelian groups, lattices and rings."""

__version__ = "0.1.0"
