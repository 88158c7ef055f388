"""Boundary extensions of non-ultralocal linear Poisson algebras."""

__version__ = "0.1.0"
