"""Exact computations on quantum matrix algebras and quantum Grassmannians."""

from .exactmath import RatFunc
from .ncalg import NCPoly

__all__ = ["RatFunc", "NCPoly"]
__version__ = "0.1.0"
