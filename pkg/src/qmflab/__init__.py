"""Period polynomials, Dedekind symbols and quantum modular forms with Hecke operators."""

from .dedekind import builtin_F, builtin_G, reconstruct
from .exactnum import Mat2Z, Zeta24
from .polyspace import HomPoly, basis_U, basis_W

__version__ = "0.1.0"

__all__ = ["HomPoly", "Mat2Z", "Zeta24", "basis_U", "basis_W", "builtin_F", "builtin_G", "reconstruct"]
