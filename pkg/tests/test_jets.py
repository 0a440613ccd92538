import random

import pytest

from gravanom.forms import DiffForm
from gravanom.jets import (JetChart, JetError, chern_weil, full_jet, holo_jet, p1_identity_check, preset,
                           so2_basic_check)
from gravanom.sexpr import dumps_chart, loads_chart
from gravanom.weil import Omega, WeilError, d_weil, omega, pontrjagin_class, random_weil


@pytest.fixture(scope="module")
def h():
    return holo_jet()


def test_n1_resolved_formulas():
    j = JetChart(1, inverse="resolved")
    ch = j.chart
    y, y2, x = (DiffForm.generator(ch, n) for n in ("y1_1", "y1_11", "x1"))
    yi = DiffForm.generator(ch, "y1_1", -1)
    assert j.theta(1) == yi * x.d()
    assert j.theta_conn(1, 1) == y.d() * yi - y2 * yi * yi * x.d()
    R = j.curvature(1, 1)
    assert R == j.theta_conn(1, 1).d()
    assert j.kill_base(R).is_zero()


def test_n1_free_inverse_resolves():
    free, res = JetChart(1), JetChart(1, inverse="resolved")
    sub = free.resolution()
    assert sub(free.theta_conn(1, 1)) == res.theta_conn(1, 1)
    assert sub(free.curvature(1, 1)) == res.curvature(1, 1)


def test_holo_theta_examples(h):
    ch = h.chart
    g = lambda n: DiffForm.generator(ch, n)
    Yzz, Yzt = h.inv("z", "z"), h.inv("z", "t")
    assert h.theta("z") == Yzz * g("z").d() + Yzt * g("t").d()
    expected = Yzz * g("yz_z").d() - g("yz_zz") * Yzz * (Yzz * g("z").d() + Yzt * g("t").d()) \
        - g("yz_zt") * Yzz * g("t").d()
    assert h.theta_conn("z", "z") == expected
    assert h.theta_conn("z", "z").d().d().is_zero()


def test_holo_curvature_survey(h):
    assert h.curvature("z", "zbar").is_zero()
    assert all(h.curvature("t", j).is_zero() for j in h.labels)
    for i, j in (("z", "z"), ("z", "t"), ("zbar", "zbar"), ("zbar", "t")):
        R = h.curvature(i, j)
        assert not R.is_zero()
        assert h.kill_base(R).is_zero()


def test_p1_identity(h):
    assert all(p1_identity_check(h).values())
    Rzz, Rbb = h.curvature("z", "z"), h.curvature("zbar", "zbar")
    assert chern_weil(pontrjagin_class(1, 3), h) == Rzz * Rbb


def test_so2_basic(h):
    assert all(so2_basic_check(h).values())


def test_kronecker_full_chart():
    f = full_jet(2)
    for i in (1, 2):
        for k in (1, 2):
            assert f.kronecker_residual(i, k).is_zero()


def test_chern_weil_generators_and_commutation_n2():
    f = full_jet(2)
    for i in (1, 2):
        for j in (1, 2):
            assert chern_weil(omega(2, i, j), f) == f.theta_conn(i, j)
            assert chern_weil(Omega(2, i, j), f) == f.curvature(i, j)
            assert chern_weil(d_weil(omega(2, i, j)), f) == f.theta_conn(i, j).d()
            assert chern_weil(d_weil(Omega(2, i, j)), f) == f.curvature(i, j).d()


def test_chern_weil_random_elements_n2():
    f = full_jet(2)
    rng = random.Random(5)
    for _ in range(4):
        a = random_weil(rng, 2, rng.randint(1, 3), terms=2)
        assert chern_weil(d_weil(a), f) == chern_weil(a, f).d()


def test_restriction_to_holo(h):
    f = full_jet(3)
    res = h.restriction(f)
    assert res(f.theta(1)) == h.theta("z")
    assert res(f.theta_conn(1, 1)) == h.theta_conn("z", "z")


def test_errors(h):
    with pytest.raises(JetError):
        JetChart(0)
    with pytest.raises(JetError):
        JetChart(2, order=3)
    with pytest.raises(JetError):
        JetChart(1, order=1).theta_conn(1, 1)
    with pytest.raises((JetError, KeyError, ValueError)):
        full_jet(2).theta(3)
    with pytest.raises((WeilError, JetError, ValueError)):
        chern_weil(omega(2, 1, 1), h)


def test_presets_and_serialization():
    assert preset("holo-jet") is holo_jet()
    assert preset("full-jet(2,2)").n == 2
    with pytest.raises(JetError):
        preset("nope")
    ch = JetChart(1).chart
    assert dumps_chart(loads_chart(dumps_chart(ch))) == dumps_chart(ch)
