"""
Exact scalars in cyclotomic fields Q(zeta_N).

Purpose:
- Every number the engine produces (F-symbols, traces, invariants) is a
  Scalar: an element of Q(zeta_N) stored as rational coefficients on the
  power basis 1, z, ..., z^(d-1) with d = deg Phi_N.
- Arithmetic between different conductors lifts both operands to the lcm.

Notes:
- Equality is exact. Hashing uses the normalized trace, which does not
  change when a scalar is lifted to a larger conductor, so equal scalars of
  different conductors hash alike.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import sympy
from sympy.functions.combinatorial.numbers import mobius, totient

from qinv.exceptions import DivisionByZeroError, ScalarParseError

Number = Union[int, Fraction, "Scalar"]

_X = sympy.Symbol("x")


# =====================================================================
# FIELD TABLES
# =====================================================================


@lru_cache(maxsize=None)
def _phi_coeffs(conductor: int) -> tuple[int, ...]:
    """Coefficients of Phi_N, lowest degree first (monic)."""
    poly = sympy.Poly(sympy.cyclotomic_poly(conductor, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def field_degree(conductor: int) -> int:
    return len(_phi_coeffs(conductor)) - 1


@lru_cache(maxsize=None)
def _trace_weight(conductor: int, k: int) -> Fraction:
    """Normalized trace of zeta_N^k: mu(n)/phi(n) with n = N/gcd(k, N)."""
    n = conductor // math.gcd(k, conductor)
    return Fraction(int(mobius(n)), int(totient(n)))


def _reduce(poly: list[Fraction], conductor: int) -> tuple[Fraction, ...]:
    """Remainder of poly modulo Phi_N, padded to the field degree."""
    phi = _phi_coeffs(conductor)
    d = len(phi) - 1
    work = list(poly)
    for top in range(len(work) - 1, d - 1, -1):
        c = work[top]
        if c:
            shift = top - d
            for i, p in enumerate(phi):
                if p:
                    work[shift + i] -= c * p
    work = work[:d]
    work.extend([Fraction(0)] * (d - len(work)))
    return tuple(work)


# =====================================================================
# SCALAR
# =====================================================================


class Scalar:
    """Element of Q(zeta_N); immutable."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Union[int, Fraction]], conductor: int = 1):
        if conductor < 1:
            raise ScalarParseError(f"Conducteur invalide : {conductor}")
        raw = [Fraction(c) for c in coeffs]
        d = field_degree(conductor)
        if len(raw) > d:
            self.coeffs = _reduce(raw, conductor)
        else:
            self.coeffs = tuple(raw) + (Fraction(0),) * (d - len(raw))
        self.conductor = conductor
        self._hash = None

    # ---------- constructors ----------

    @classmethod
    def rational(cls, value: Union[int, Fraction], conductor: int = 1) -> "Scalar":
        return cls([Fraction(value)], conductor)

    @classmethod
    def zero(cls, conductor: int = 1) -> "Scalar":
        return cls([], conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> "Scalar":
        return cls([1], conductor)

    @classmethod
    def zeta(cls, conductor: int, power: int = 1) -> "Scalar":
        """zeta_N^power, for any integer power."""
        k = power % conductor
        poly = [Fraction(0)] * (k + 1)
        poly[k] = Fraction(1)
        return cls(_reduce(poly, conductor), conductor)

    @staticmethod
    def coerce(value: Number, conductor: int = 1) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar.rational(value, conductor)
        raise TypeError(f"cannot coerce {type(value).__name__} to Scalar")

    # ---------- structure ----------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_one(self) -> bool:
        return self.is_rational() and self.coeffs[0] == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def lift(self, conductor: int) -> "Scalar":
        """Same number viewed in Q(zeta_M); requires N | M."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"cannot lift conductor {self.conductor} to {conductor}")
        step = conductor // self.conductor
        if self.is_rational():
            return Scalar([self.coeffs[0]], conductor)
        poly = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for k, c in enumerate(self.coeffs):
            poly[k * step] = c
        return Scalar(_reduce(poly, conductor), conductor)

    def _align(self, other: Number) -> tuple["Scalar", "Scalar"]:
        other = Scalar.coerce(other, self.conductor)
        if other.conductor == self.conductor:
            return self, other
        if other.is_rational() and other.conductor != self.conductor:
            return self, Scalar([other.coeffs[0]], self.conductor)
        if self.is_rational():
            return Scalar([self.coeffs[0]], other.conductor), other
        m = self.conductor * other.conductor // math.gcd(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    # ---------- arithmetic ----------

    def __add__(self, other: Number) -> "Scalar":
        a, b = self._align(other)
        return Scalar([x + y for x, y in zip(a.coeffs, b.coeffs)], a.conductor)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar([-c for c in self.coeffs], self.conductor)

    def __sub__(self, other: Number) -> "Scalar":
        a, b = self._align(other)
        return Scalar([x - y for x, y in zip(a.coeffs, b.coeffs)], a.conductor)

    def __rsub__(self, other: Number) -> "Scalar":
        return Scalar.coerce(other, self.conductor) - self

    def __mul__(self, other: Number) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            return Scalar([c * other for c in self.coeffs], self.conductor)
        a, b = self._align(other)
        if b.is_rational():
            k = b.coeffs[0]
            return Scalar([c * k for c in a.coeffs], a.conductor)
        if a.is_rational():
            k = a.coeffs[0]
            return Scalar([c * k for c in b.coeffs], a.conductor)
        poly = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        poly[i + j] += x * y
        return Scalar(_reduce(poly, a.conductor), a.conductor)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZeroError("Inversion du scalaire nul.")
        if self.is_rational():
            return Scalar([1 / self.coeffs[0]], self.conductor)
        modulus = sympy.Poly(list(reversed(_phi_coeffs(self.conductor))), _X, domain=sympy.QQ)
        value = sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)],
            _X,
            domain=sympy.QQ,
        )
        inv = sympy.invert(value, modulus)
        coeffs = [_to_fraction(c) for c in reversed(inv.all_coeffs())]
        return Scalar(coeffs, self.conductor)

    def __truediv__(self, other: Number) -> "Scalar":
        other = Scalar.coerce(other, self.conductor)
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> "Scalar":
        return Scalar.coerce(other, self.conductor) * self.inverse()

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Scalar.one(self.conductor)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "Scalar":
        """Complex conjugation, zeta -> zeta^(N-1)."""
        n = self.conductor
        if n <= 2 or self.is_rational():
            return self
        poly = [Fraction(0)] * n
        for k, c in enumerate(self.coeffs):
            poly[(-k) % n] += c
        return Scalar(_reduce(poly, n), n)

    def normalized_trace(self) -> Fraction:
        return sum(
            (c * _trace_weight(self.conductor, k) for k, c in enumerate(self.coeffs) if c),
            Fraction(0),
        )

    # ---------- comparison ----------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.conductor == other.conductor:
            return self.coeffs == other.coeffs
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    def __ne__(self, other: object) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.normalized_trace())
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # ---------- text ----------

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            text = str(c)
            if k == 1:
                text += "*z"
            elif k > 1:
                text += f"*z^{k}"
            terms.append(text)
        body = " + ".join(terms) if terms else "0"
        return f"{body} (mod {self.conductor})"

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    @classmethod
    def parse(cls, text: str, conductor: int | None = None) -> "Scalar":
        """Read the canonical text form; a bare rational is accepted too."""
        return parse_scalar(text, conductor)


def _to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


_MOD_RE = re.compile(r"^(?P<body>.*?)\s*\(mod\s+(?P<n>\d+)\)\s*$")
_TERM_RE = re.compile(r"^(?P<c>[+-]?\d+(?:/\d+)?)(?:\*z(?:\^(?P<k>\d+))?)?$")


def parse_scalar(text: str, conductor: int | None = None) -> Scalar:
    if not isinstance(text, str):
        if isinstance(text, (int, Fraction)):
            return Scalar.rational(text, conductor or 1)
        raise ScalarParseError(f"Scalaire illisible : {text!r}")
    raw = text.strip()
    match = _MOD_RE.match(raw)
    if match:
        body = match.group("body")
        declared = int(match.group("n"))
        if declared < 1:
            raise ScalarParseError(f"Conducteur invalide dans {text!r}")
    else:
        body = raw
        declared = conductor or 1
    body = body.strip()
    if not body:
        raise ScalarParseError(f"Scalaire vide : {text!r}")
    if body == "0":
        value = Scalar.zero(declared)
    else:
        poly: dict[int, Fraction] = {}
        for term in body.split(" + "):
            term_match = _TERM_RE.match(term.strip())
            if not term_match:
                raise ScalarParseError(f"Terme illisible {term!r} dans {text!r}")
            try:
                coeff = Fraction(term_match.group("c"))
            except ZeroDivisionError:
                raise ScalarParseError(f"Dénominateur nul dans {text!r}")
            if "*z" in term:
                k = int(term_match.group("k") or 1)
            else:
                k = 0
            poly[k] = poly.get(k, Fraction(0)) + coeff
        top = max(poly) if poly else 0
        coeffs = [poly.get(k, Fraction(0)) for k in range(top + 1)]
        if top >= declared and declared > 1:
            raise ScalarParseError(f"Puissance de z hors de [0, {declared}) dans {text!r}")
        value = Scalar(coeffs, declared)
    if conductor is not None and conductor != value.conductor:
        if conductor % value.conductor:
            raise ScalarParseError(
                f"Le conducteur {value.conductor} ne divise pas {conductor} ({text!r})"
            )
        value = value.lift(conductor)
    return value


def scalar_sum(values: Sequence[Scalar], conductor: int = 1) -> Scalar:
    """Sum in the given order."""
    total = Scalar.zero(conductor)
    for v in values:
        total = total + v
    return total


def scalar_product(values: Sequence[Scalar], conductor: int = 1) -> Scalar:
    total = Scalar.one(conductor)
    for v in values:
        total = total * v
    return total
