"""Exact arithmetic: cyclotomic scalars, matrices and idempotent splitting."""

from qinv.algebra.matrix import LinearSolution, Mat, SplittingTriple, solve_linear, split_idempotent
from qinv.algebra.scalar import Scalar, parse_scalar

__all__ = [
    "LinearSolution",
    "Mat",
    "Scalar",
    "SplittingTriple",
    "parse_scalar",
    "solve_linear",
    "split_idempotent",
]
