"""Exact weight 11 and weight 13 Euler characteristics of moduli spaces of
curves M_{g,n}, with the high-precision constants governing their growth."""

from .cohomology import basis_genus1, char_h13, dim_h13, excess
from .genfun import GenfunContext, chi11_equivariant, chi11_scalar, chi13_equivariant, extract
from .numtheory import Partition, Rational, bernoulli, mobius, n_min
from .series import USeries, WPoly
from .symfunc import SchurExpansion, SymFunc, p_to_schur, schur_to_p

__version__ = "0.1.0"

__all__ = [
    "GenfunContext",
    "Partition",
    "Rational",
    "SchurExpansion",
    "SymFunc",
    "USeries",
    "WPoly",
    "basis_genus1",
    "bernoulli",
    "char_h13",
    "chi11_equivariant",
    "chi11_scalar",
    "chi13_equivariant",
    "dim_h13",
    "excess",
    "extract",
    "mobius",
    "n_min",
    "p_to_schur",
    "schur_to_p",
]
