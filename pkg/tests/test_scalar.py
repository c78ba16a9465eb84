import warnings
from fractions import Fraction

import pytest

from qinv.algebra.scalar import Scalar, _trace_weight, parse_scalar
from qinv.exceptions import DivisionByZeroError, ScalarParseError


def test_zeta_powers_wrap():
    z = Scalar.zeta(5)
    assert z ** 5 == 1
    assert Scalar.zeta(5, 7) == Scalar.zeta(5, 2)
    assert Scalar.zeta(5, -1) == z.inverse()


def test_cyclotomic_relation():
    z = Scalar.zeta(5)
    total = Scalar.zero(5)
    for k in range(5):
        total = total + z ** k
    assert total.is_zero()


def test_golden_ratio():
    z = Scalar.zeta(5)
    phi = 1 + z + z ** 4
    assert phi * phi == phi + 1
    assert phi.inverse() == phi - 1


def random_scalar(n, rng):
    return Scalar([Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)], n)


@pytest.mark.parametrize("n", [3, 4, 5, 7, 8, 12])
def test_inverse(n, rng):
    for _ in range(50):
        x = random_scalar(n, rng)
        if x.is_zero():
            continue
        assert x * x.inverse() == 1


@pytest.mark.parametrize("n", [4, 5, 12])
def test_field_laws(n, rng):
    for _ in range(50):
        x, y, w = (random_scalar(n, rng) for _ in range(3))
        assert x * (y + w) == x * y + x * w
        assert (x * y) * w == x * (y * w)
        assert (x * y).conjugate() == x.conjugate() * y.conjugate()
        assert (x - x).is_zero()


def test_trace_weights_without_deprecations():
    _trace_weight.cache_clear()
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert _trace_weight(5, 1) == Fraction(-1, 4)
        assert _trace_weight(12, 1) == 0
        assert _trace_weight(6, 3) == -1
        assert _trace_weight(7, 0) == 1


def test_division_by_zero():
    with pytest.raises(DivisionByZeroError):
        Scalar.zero(3).inverse()


def test_mixed_conductors_lift_to_lcm():
    i = Scalar.zeta(4)
    w = Scalar.zeta(3)
    prod = i * w
    assert prod.conductor == 12
    assert prod == Scalar.zeta(12, 3 + 4)
    assert Scalar.zeta(6, 2) == w
    assert hash(Scalar.zeta(6, 2)) == hash(w)


def test_rational_equality_and_hash():
    half = Scalar.rational(Fraction(1, 2), 5)
    assert half == Fraction(1, 2)
    assert hash(half) == hash(Fraction(1, 2))


def test_conjugate():
    z = Scalar.zeta(8)
    assert z.conjugate() == z.inverse()
    assert (z + z.conjugate()).conjugate() == z + z.conjugate()


def test_text_form():
    z = Scalar.zeta(5)
    x = Fraction(1, 2) - 3 * z ** 2
    text = str(x)
    assert text == "1/2 + -3*z^2 (mod 5)"
    assert parse_scalar(text) == x
    assert str(Scalar.zero(7)) == "0 (mod 7)"
    assert str(Scalar.zeta(3)) == "1*z (mod 3)"


def test_parse_bare_rational_and_lift():
    assert parse_scalar("-2/3", 5) == Fraction(-2, 3)
    assert parse_scalar("1*z (mod 3)", 6) == Scalar.zeta(3)


@pytest.mark.parametrize("bad", ["", "1 +", "x (mod 3)", "1/0 (mod 3)", "1*z^9 (mod 3)"])
def test_parse_errors(bad):
    with pytest.raises(ScalarParseError):
        parse_scalar(bad)
