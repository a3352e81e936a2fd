"""Kostant pictures, MV-polynomials and the cluster algebra on C[N] in type A."""

__version__ = "0.1.0"
