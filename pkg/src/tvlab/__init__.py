"""Finite checkable constructions around r-fold intersection obstructions.

Subpackages cover simplicial complexes and deleted products, exact integer
homology, exact-rational convex geometry (Radon/Tverberg), PL maps with
intersection cocycles, symmetric-group and Sylow machinery, and the
equivariant null-cohomology decision, all glued together by a CLI.
"""

__version__ = "0.1.0"
