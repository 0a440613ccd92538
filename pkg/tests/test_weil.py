import random

import pytest
import sympy
from hypothesis import given, strategies as st

from gravanom.scalars import GaussianRational
from gravanom.sexpr import dumps_weil, loads_weil
from gravanom.weil import (Omega, WeilElement, WeilError, chern_class, contraction, d_weil,
                           is_so_basic, omega, pontrjagin_class, random_weil, so_basis, transgression)


def sum_(items, n):
    out = WeilElement.zero(n)
    for x in items:
        out = out + x
    return out


def to_sympy(a: WeilElement):
    """Curvature-only element as a commutative sympy polynomial."""
    n = a.n
    sym = sympy.symbols(f"O0:{n * n}")
    expr = 0
    for (omegas, Omegas), c in a.terms.items():
        assert not omegas
        term = sympy.Rational(str(c.to_pair()[0]))
        for x in Omegas:
            term *= sym[x]
        expr += term
    return sympy.expand(expr), sym


@pytest.mark.parametrize("n", [1, 2, 3])
def test_chern_classes_match_determinant_oracle(n):
    t = sympy.Symbol("t")
    _, sym = to_sympy(WeilElement.zero(n))
    M = sympy.Matrix(n, n, lambda i, j: sym[i * n + j])
    char = sympy.expand((sympy.eye(n) + t * M).det())
    for k in range(1, n + 1):
        got, _ = to_sympy(chern_class(k, n))
        assert sympy.expand(got - char.coeff(t, k)) == 0


def test_d_weil_examples():
    n = 3
    assert d_weil(omega(n, 1, 2)) == Omega(n, 1, 2) - sum_((omega(n, 1, k) * omega(n, k, 2) for k in (1, 2, 3)), n)
    assert d_weil(Omega(n, 1, 1)) == sum_((Omega(n, 1, k) * omega(n, k, 1) - omega(n, 1, k) * Omega(n, k, 1)
                                           for k in (1, 2, 3)), n)
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            assert d_weil(d_weil(omega(n, i, j))).is_zero()
            assert d_weil(d_weil(Omega(n, i, j))).is_zero()


def test_chern_examples():
    n = 3
    assert chern_class(1, n) == sum_((Omega(n, i, i) for i in (1, 2, 3)), n)
    tr = chern_class(1, n)
    trsq = sum_((Omega(n, i, j) * Omega(n, j, i) for i in (1, 2, 3) for j in (1, 2, 3)), n)
    assert chern_class(2, n) == (tr * tr - trsq).scale(GaussianRational(1) / 2)
    with pytest.raises(WeilError):
        chern_class(4, 3)


def test_pontrjagin():
    assert pontrjagin_class(1, 3) == chern_class(2, 3)
    assert d_weil(pontrjagin_class(1, 3)).is_zero()
    with pytest.raises(WeilError):
        pontrjagin_class(2, 3)


@given(st.integers(0, 2 ** 32), st.integers(1, 3), st.integers(0, 5))
def test_d_squared_random(seed, n, deg):
    a = random_weil(random.Random(seed), n, deg)
    assert d_weil(d_weil(a)).is_zero()


@given(st.integers(0, 2 ** 32), st.integers(1, 3), st.integers(0, 3), st.integers(0, 3))
def test_leibniz(seed, n, p, q):
    rng = random.Random(seed)
    a, b = random_weil(rng, n, p), random_weil(rng, n, q)
    sign = -1 if p % 2 else 1
    assert d_weil(a * b) == d_weil(a) * b + (a * d_weil(b)).scale(sign)


def test_truncation():
    n = 2
    three = Omega(n, 1, 1) * Omega(n, 2, 2) * Omega(n, 1, 2)
    assert three.is_zero()
    assert not (Omega(n, 1, 1) * Omega(n, 2, 2)).is_zero()
    # d never resurrects a truncated monomial: d of an Omega^2 * omega term stays at Omega-count 2
    a = Omega(n, 1, 1) * Omega(n, 2, 2) * omega(n, 1, 2)
    assert all(len(k[1]) <= n for k in d_weil(a).terms)


@pytest.mark.parametrize("k", [1, 3])
@pytest.mark.parametrize("relative", [True, False])
def test_transgression(k, relative):
    u = transgression(k, 3, relative=relative)
    assert u.degrees() == {2 * k - 1}
    assert d_weil(u) == chern_class(k, 3)


def test_transgression_one_is_trace():
    assert transgression(1, 3) == sum_((omega(3, i, i) for i in (1, 2, 3)), 3)


def test_transgression_errors():
    with pytest.raises(WeilError):
        transgression(2, 3)
    with pytest.raises(WeilError):
        transgression(5, 3)


def test_basicness():
    assert is_so_basic(chern_class(2, 3))[0]
    assert is_so_basic(transgression(3, 3))[0]
    assert not is_so_basic(transgression(3, 3, relative=False))[0]
    ok, (A, kind, residual) = is_so_basic(omega(3, 1, 2))
    assert not ok and kind == "contraction" and not residual.is_zero()
    assert A.is_antisymmetric()
    tr = transgression(1, 3)
    assert all(contraction(A, tr).is_zero() for A in so_basis(3))


def test_weil_sexpr_roundtrip():
    a = transgression(3, 3)
    assert loads_weil(dumps_weil(a)) == a
