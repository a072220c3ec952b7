"""Computable core of a surface-based Yang-Mills construction.

Lie-algebra invariants, Minkowski surface integrals, surface-state Hilbert
spaces with field operators, the Bargmann sector, mass-gap tables and
cluster-decay checks.
"""

__version__ = "0.1.0"
