from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gravanom.scalars import GaussianRational, I, ONE, PI, PiScalar, ZERO, pi_power, sum_pi

from strategies import gaussian, nonzero_gaussian, small_q


def as_pair(g):
    return Fraction(g.to_pair()[0]), Fraction(g.to_pair()[1])


@given(small_q, small_q, small_q, small_q)
def test_product_matches_fraction_oracle(a, b, c, d):
    # (a + bi)(c + di) computed independently with Fraction
    p = GaussianRational(a, b) * GaussianRational(c, d)
    assert as_pair(p) == (a * c - b * d, a * d + b * c)


@given(nonzero_gaussian)
def test_inverse(x):
    assert x * x.inverse() == ONE
    assert (ONE / x) * x == ONE


@given(gaussian, gaussian, gaussian)
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(gaussian)
def test_conjugate_is_involution_and_norm_real(x):
    assert x.conjugate().conjugate() == x
    assert (x * x.conjugate()).is_real()


def test_i_squared():
    assert I * I == -ONE
    assert str(GaussianRational(Fraction(1, 2), -1)) == "(1/2-i)"


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_coercion_from_int_and_fraction():
    assert GaussianRational(3) == 3
    assert GaussianRational(Fraction(1, 3)) * 3 == ONE
    assert complex(GaussianRational(1, 2)) == 1 + 2j


def test_pi_scalar_formatting_and_approx():
    v = pi_power(2, -8)
    assert str(v) == "-8*pi^2"
    assert abs(v.approx() + 8 * 3.141592653589793 ** 2) < 1e-12
    assert str(PiScalar()) == "0"
    assert str(pi_power(2, GaussianRational(0, 4))) == "4*i*pi^2"


@given(st.dictionaries(st.integers(0, 3), gaussian, max_size=3),
       st.dictionaries(st.integers(0, 3), gaussian, max_size=3))
def test_pi_scalar_ring(a, b):
    x, y = PiScalar(a), PiScalar(b)
    assert x + y == y + x
    assert x * y == y * x
    assert x - x == PiScalar()
    assert abs((x * y).approx() - x.approx() * y.approx()) < 1e-6 * (1 + abs(x.approx() * y.approx()))


def test_sum_pi():
    assert sum_pi([PI, PI, pi_power(0, 1)]) == PiScalar({1: 2, 0: 1})
