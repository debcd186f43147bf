"""Exact computations with finite-dimensional algebras, bimodules and their duals.

Scalars live in ``QQ`` (``fractions.Fraction``) or ``GF(p)``; nothing is floating point.
"""

from qfalg.algebra import AlgMap, FDAlgebra, check_algebra
from qfalg.bimodule import Bimodule, BimoduleMap, dual, hom_space, regular, tensor_over
from qfalg.exactla import GF, QQ, Rng

__version__ = "0.1.0"

__all__ = ["AlgMap", "Bimodule", "BimoduleMap", "FDAlgebra", "GF", "QQ", "Rng", "check_algebra",
           "dual", "hom_space", "regular", "tensor_over"]
