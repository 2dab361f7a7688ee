"""Exact verification tools for graded PI-algebras and sheaves of them on finite spaces."""

__version__ = "0.1.0"
