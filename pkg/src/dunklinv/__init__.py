"""Exact Dunkl operators, the c-deformed bilinear form and canonical
invariants for symmetric and dihedral reflection groups."""

__version__ = "0.1.0"
