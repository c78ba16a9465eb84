"""
qinv: exact state sums and surgery invariants of 3-manifolds with G-structure.

Starting from a spherical G-fusion category C given by its F-symbols, the
engine builds the relative center Z_G(C) with its crossing and G-braiding,
evaluates knotted nets, and computes the state sum of a skeleton and the
surgery invariant of a framed link, in exact cyclotomic arithmetic.
"""

__version__ = "1.0.0"

from .config import RunConfig, settings
from .exceptions import QinvException, format_exception_for_cli

__all__ = [
    "RunConfig",
    "settings",
    "QinvException",
    "format_exception_for_cli",
]
