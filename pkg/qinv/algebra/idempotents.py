"""
Primitive idempotents of split semisimple algebras over Q(zeta_N).

The algebra is given abstractly (a K-basis plus product, sum and scaling),
so the same routine decomposes any endomorphism algebra the center builds.

Method: inside a corner eAe pick a random element z, compute the rational
characteristic polynomial of left multiplication by z, factor its
squarefree part over Q with sympy and build the CRT idempotents as
polynomials in z. Recurse until every corner is one-dimensional. A corner of
dimension > 1 that never splits means the algebra does not split over the
field.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Generic, Optional, TypeVar

import sympy

from qinv.algebra.matrix import Mat, independent_subset, solve_linear
from qinv.algebra.scalar import Scalar, field_degree
from qinv.exceptions import AlgebraError, FieldTooSmallError

logger = logging.getLogger(__name__)

T = TypeVar("T")

_X = sympy.Symbol("x")


@dataclass
class AlgebraView(Generic[T]):
    """Finite-dimensional K-algebra seen through callables."""

    name: str
    basis: list[T]
    mul: Callable[[T, T], T]
    add: Callable[[T, T], T]
    scale: Callable[[T, Scalar], T]
    coordinates: Callable[[T], list[Scalar]]
    conductor: int

    def combine(self, coeffs: list[Scalar], elements: list[T]) -> T:
        total = self.scale(elements[0], coeffs[0])
        for c, x in zip(coeffs[1:], elements[1:]):
            if not c.is_zero():
                total = self.add(total, self.scale(x, c))
        return total


class _Corner(Generic[T]):
    """The corner algebra eAe with a basis and coordinates."""

    def __init__(self, algebra: AlgebraView[T], e: T):
        self.algebra = algebra
        self.e = e
        spanning = [algebra.mul(algebra.mul(e, b), e) for b in algebra.basis]
        columns = [Mat.column(algebra.coordinates(x), algebra.conductor) for x in spanning]
        keep = independent_subset(columns)
        self.basis = [spanning[i] for i in keep]
        self._matrix = (
            Mat.hstack([columns[i] for i in keep], columns[0].rows, algebra.conductor)
            if keep
            else None
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, x: T) -> list[Scalar]:
        vec = Mat.column(self.algebra.coordinates(x), self.algebra.conductor)
        sol = solve_linear(self._matrix, vec)
        if not sol.consistent:
            raise AlgebraError(f"Élément hors du coin e A e de {self.algebra.name}.")
        return [sol.particular[i, 0] for i in range(self.dim)]


def _rational_block(c: Scalar, conductor: int) -> list[list[Fraction]]:
    """Matrix of multiplication by c on the power basis of Q(zeta_N)."""
    d = field_degree(conductor)
    c = c.lift(conductor) if c.conductor != conductor else c
    cols = [(c * Scalar.zeta(conductor, k)).coeffs for k in range(d)]
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def _charpoly(left: list[list[Scalar]], conductor: int) -> sympy.Poly:
    d = field_degree(conductor)
    n = len(left)
    big = [[sympy.Integer(0)] * (n * d) for _ in range(n * d)]
    for i in range(n):
        for j in range(n):
            if left[i][j].is_zero():
                continue
            block = _rational_block(left[i][j], conductor)
            for a in range(d):
                for b in range(d):
                    v = block[a][b]
                    if v:
                        big[i * d + a][j * d + b] = sympy.Rational(v.numerator, v.denominator)
    poly = sympy.Matrix(big).charpoly(_X)
    return sympy.Poly(poly.as_expr(), _X, domain=sympy.QQ)


def _evaluate(poly: sympy.Poly, z: T, corner: _Corner[T]) -> T:
    algebra = corner.algebra
    result: Optional[T] = None
    for coeff in poly.all_coeffs():
        value = sympy.Rational(coeff)
        c = Scalar.rational(Fraction(int(value.p), int(value.q)), algebra.conductor)
        term = algebra.scale(corner.e, c)
        result = term if result is None else algebra.add(algebra.mul(result, z), term)
    return result


def _try_split(corner: _Corner[T], rng: random.Random) -> list[T]:
    algebra = corner.algebra
    n = algebra.conductor
    d = field_degree(n)
    coeffs = []
    for _ in range(corner.dim):
        c = Scalar.zero(n)
        for k in range(d):
            c = c + Scalar.zeta(n, k) * rng.randint(-3, 3)
        coeffs.append(c)
    if all(c.is_zero() for c in coeffs):
        return [corner.e]
    z = algebra.combine(coeffs, corner.basis)
    columns = [corner.coords(algebra.mul(z, s)) for s in corner.basis]
    left = [[columns[j][i] for j in range(corner.dim)] for i in range(corner.dim)]
    m = sympy.sqf_part(_charpoly(left, n)).monic()
    _, factors = sympy.factor_list(m)
    if len(factors) <= 1:
        return [corner.e]
    parts = []
    for h, _mult in factors:
        h = sympy.Poly(h, _X, domain=sympy.QQ).monic()
        g = sympy.quo(m, h)
        u = sympy.invert(g, h)
        weight = sympy.rem(sympy.Poly(u, _X, domain=sympy.QQ) * g, m)
        parts.append(_evaluate(weight, z, corner))
    return parts


def primitive_idempotents(
    algebra: AlgebraView[T],
    unit: T,
    rng: random.Random,
    tries: int = 8,
) -> list[T]:
    """Complete set of orthogonal primitive idempotents summing to unit."""
    pending = [unit]
    result: list[T] = []
    while pending:
        e = pending.pop(0)
        corner = _Corner(algebra, e)
        if corner.dim == 0:
            continue
        if corner.dim == 1:
            result.append(e)
            continue
        for attempt in range(tries):
            parts = _try_split(corner, rng)
            if len(parts) > 1:
                logger.debug("split corner of dim %d into %d parts (try %d)", corner.dim, len(parts), attempt)
                pending[:0] = parts
                break
        else:
            raise FieldTooSmallError(algebra.name, algebra.conductor)
    return result
