import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from gravanom.equivariant import (IDENTITY, EquivariantError, Group, GroupCochain,
                                  connection_form, connection_rule, cochain_product, covariant_derivative,
                                  d_cochain, delta_simplicial, diffeo_preset,
                                  equivariant_curvature, exactness_homotopy_check, flat_metric, from_group_cochain,
                                  fubini_study, ghost_field, ghost_identity_check, group_coboundary, homotopy_check,
                                  inversion, inversion_group, metric_preset, p1_cocycle, p1_group_cochain,
                                  parse_word, reduce_word, rotation, theorem4_check, to_group_cochain, unit_rule,
                                  word_str, base_only, TotalCochain)
from gravanom.forms import DiffForm, interior_product, log_derivative
from gravanom.jets import holo_jet
from gravanom.scalars import GaussianRational
from gravanom.sampling import random_rule, random_word
from gravanom.sexpr import ParseError, dumps_diffeo, loads_diffeo

G1, G2 = parse_word("g1"), parse_word("g2")
I = GaussianRational(0, 1)


@pytest.fixture(scope="module")
def h():
    return holo_jet()


@pytest.fixture(scope="module")
def G():
    return inversion_group(1, 0)


@pytest.fixture(scope="module")
def G21():
    return inversion_group(2, -1)


def gens(ch, *names):
    return [DiffForm.generator(ch, n) for n in names]


# diffeomorphisms and words ---------------------------------------------------

def test_inversion_is_involution(h):
    g = inversion(3, system=h)
    z, w = gens(h.chart, "z", "w")
    assert g.forward == DiffForm.generator(h.chart, "w", 3) * DiffForm.generator(h.chart, "z", -1)
    G = Group([g], h)
    assert G.act(z, ((g.name, 1), (g.name, 1))) == z
    assert G.z_image(((g.name, -1),)) == g.forward


def test_bad_inverse_rejected(h):
    z, w = gens(h.chart, "z", "w")
    from gravanom.equivariant import Diffeo
    with pytest.raises(EquivariantError, match="inverse"):
        Diffeo("bad", w * z, w * z, h)


def test_antiholomorphic_generator_rejected(h):
    from gravanom.equivariant import Diffeo
    zb = DiffForm.generator(h.chart, "zbar")
    with pytest.raises(EquivariantError, match="z, t, w"):
        Diffeo("conj", zb, zb, h)


def test_prolongation_is_monoid_morphism(G21):
    h = G21.system
    probes = [h.y("z", "z"), h.y2("z", "z", "z"), h.y("z", "t"), h.theta_conn("z", "z")]
    for u, v in product(G21.words(1), repeat=2):
        for a in probes:
            assert G21.act(G21.act(a, u), v) == G21.act(a, G21.mul(u, v))
    for u in G21.words(2):
        for a in probes:
            assert G21.act(a, G21.mul(u, G21.inverse(u))) == a


def test_rotation_prolongation(h):
    G = Group([rotation(system=h)], h)
    y = h.y("z", "z")
    w = DiffForm.generator(h.chart, "w")
    assert G.act(y, parse_word("rotation")) == w * y


def test_word_algebra(G):
    assert reduce_word([("g1", 1), ("g2", 1), ("g2", -1)]) == G1
    assert parse_word("g1*g2^-1") == (("g1", 1), ("g2", -1))
    assert parse_word("1") == IDENTITY
    assert word_str(parse_word("g2^-1*g1")) == "g2^-1*g1"
    assert G.mul(G1, G.inverse(G1)) == IDENTITY
    assert len(G.words(2)) == 1 + 4 + 12
    with pytest.raises(EquivariantError, match="unknown group generator"):
        G.act(DiffForm.zero(G.chart), parse_word("g3"))


def test_diffeo_presets_and_sexpr(h):
    g = diffeo_preset("inversion(-2)", h)
    assert g.forward == DiffForm.generator(h.chart, "w", -2) * DiffForm.generator(h.chart, "z", -1)
    r = diffeo_preset("rotation", h)
    assert r.forward == DiffForm.generator(h.chart, "w") * DiffForm.generator(h.chart, "z")
    back = loads_diffeo(dumps_diffeo(r), h)
    assert back.forward == r.forward and back.inverse == r.inverse
    with pytest.raises(EquivariantError):
        diffeo_preset("shear", h)
    with pytest.raises(ParseError):
        loads_diffeo("(diffeo g (forward (form holo-jet (den))))", h)


# the bicomplex --------------------------------------------------------------

def test_delta_of_one_form_example(G, h):
    om = connection_rule(flat_metric(h), G)
    d_om = delta_simplicial(om)
    for g0, g1 in product(G.words(1), repeat=2):
        assert d_om(g0, g1) == -om(g1) + om(g0)


def test_delta_of_constant_function_vanishes(G):
    one = unit_rule(G)
    assert delta_simplicial(one)(G1, G2).is_zero()


def test_product_sign_example(G):
    u, v = random_rule(1, G, 1, 1), random_rule(2, G, 1, 1)
    t = (G1, G2, G.mul(G1, G2))
    assert cochain_product(u, v)(*t) == -(u(t[0], t[1]) * v(t[1], t[2]))


def test_unit_product(G):
    u = random_rule(3, G, 1, 2)
    one = unit_rule(G)
    for t in product(G.words(1), repeat=2):
        assert (one * u)(*t) == u(*t)


@settings(max_examples=8)
@given(st.integers(0, 10**6))
def test_bicomplex_identities(seed):
    G = inversion_group(1, 0)
    rng = random.Random(seed)
    n, m = rng.randint(0, 1), rng.randint(0, 1)
    u = random_rule(seed, G, n, m)
    t1 = tuple(random_word(rng, G, 2) for _ in range(n + 3))
    t0 = t1[:n + 2]
    assert delta_simplicial(delta_simplicial(u))(*t1).is_zero()
    assert d_cochain(d_cochain(u))(*t1[:n + 1]).is_zero()
    dd = d_cochain(delta_simplicial(u))(*t0) + delta_simplicial(d_cochain(u))(*t0)
    assert dd.is_zero()


@settings(max_examples=6)
@given(st.integers(0, 10**6))
def test_product_associative(seed):
    G = inversion_group(2, -1)
    rng = random.Random(seed)
    bds = [(rng.randint(0, 1), rng.randint(0, 1)) for _ in range(3)]
    u, v, w = (random_rule(seed + k, G, n, m) for k, (n, m) in enumerate(bds))
    N = sum(n for n, _ in bds)
    t = tuple(random_word(rng, G, 1) for _ in range(N + 1))
    assert ((u * v) * w)(*t) == (u * (v * w))(*t)


@settings(max_examples=6)
@given(st.integers(0, 10**6))
def test_total_leibniz(seed):
    G = inversion_group(1, 0)
    rng = random.Random(seed)
    (a, b), (c, e) = [(rng.randint(0, 1), rng.randint(0, 1)) for _ in range(2)]
    U = TotalCochain(G, {(a, b): random_rule(seed, G, a, b)})
    V = TotalCochain(G, {(c, e): random_rule(seed + 1, G, c, e)})
    lhs = (U * V).D()
    rhs = U.D() * V + U.scale(-1 if (a + b) & 1 else 1) * V.D()
    for n, m in set(lhs.parts) | set(rhs.parts):
        t = tuple(random_word(rng, G, 1) for _ in range(n + 1))
        assert lhs.component(n, m)(*t) == rhs.component(n, m)(*t)


def test_rules_are_equivariant(G21):
    rules = [random_rule(5, G21, 1, 1), connection_rule(fubini_study(), G21)]
    rules += list(equivariant_curvature(connection_rule(fubini_study(), G21)))
    P = p1_cocycle(flat_metric(), G21)
    rules.append(P.component(2, 2))
    rng = random.Random(7)
    for u in rules:
        for _ in range(3):
            t = tuple(random_word(rng, G21, 1) for _ in range(u.n + 1))
            g = random_word(rng, G21, 1)
            assert u(*(G21.mul(x, g) for x in t)) == G21.act(u(*t), g)


# group cochains ------------------------------------------------------------

def test_group_cochain_conversion_examples(G):
    u = random_rule(11, G, 2, 1)
    f = to_group_cochain(u)
    assert f(G1, G2) == u(G.mul(G1, G2), G2, IDENTITY)
    assert f(IDENTITY, IDENTITY) == u(IDENTITY, IDENTITY, IDENTITY)
    v = random_rule(12, G, 1, 1)
    assert to_group_cochain(v)(G1) == v(G1, IDENTITY)


def test_round_trip(G21):
    from gravanom.sampling import random_group_cochain
    rng = random.Random(3)
    f = random_group_cochain(4, G21, 2, 1)
    g = to_group_cochain(from_group_cochain(f))
    u = random_rule(4, G21, 1, 2)
    u2 = from_group_cochain(to_group_cochain(u))
    for _ in range(5):
        gs = tuple(random_word(rng, G21, 2) for _ in range(2))
        assert g(*gs) == f(*gs)
        assert u2(*gs) == u(*gs)


@pytest.mark.parametrize("m", [1, 2])
def test_coboundary_matches_delta(G, m):
    u = random_rule(21, G, 1, m)
    lhs = to_group_cochain(delta_simplicial(u))
    rhs = group_coboundary(to_group_cochain(u))
    sign = -1 if m & 1 else 1
    for gs in product(G.words(1), repeat=2):
        assert lhs(*gs) == rhs(*gs).scale(sign)


def test_group_cochain_arity(G):
    f = GroupCochain(G, 1, 0, lambda gs: DiffForm.constant(G.chart, 1))
    with pytest.raises(EquivariantError):
        f(G1, G2)
    with pytest.raises(EquivariantError):
        unit_rule(G)(G1, G2)


# connection and curvature ----------------------------------------------------

def test_flat_connection_at_identity(h, G):
    om = connection_rule(flat_metric(h), G)
    assert om(IDENTITY) == h.inv("z", "z") * h.y("z", "z").d()


def test_fs_connection_at_identity(h, G):
    z, zb = gens(h.chart, "z", "zbar")
    q = DiffForm.irreducible(h.chart, "q", -1)
    expected = h.inv("z", "z") * h.y("z", "z").d() - z.d() * zb * q.scale(2)
    assert connection_rule(fubini_study(h), G)(IDENTITY) == expected


@pytest.mark.parametrize("metric", ["flat", "fubini-study"])
def test_connection_pullback_formula(h, G21, metric):
    rho = metric_preset(metric, h)
    om = connection_rule(rho, G21)
    base = h.inv("z", "z") * h.y("z", "z").d()
    for g in (G1, G2):
        Zp = G21.z_image(g).partial("z")
        assert om(g) == base + log_derivative(Zp) + G21.act(rho.partial_log, g)


def test_curvature_flat_example(h):
    for n in (1, 2, -3):
        G = Group([inversion(n, "g", h)], h)
        O1, O0 = equivariant_curvature(connection_rule(flat_metric(h), G))
        z, t = gens(h.chart, "z", "t")
        expected = t.d().scale(GaussianRational(0, n)) - z.d() * DiffForm.generator(h.chart, "z", -1).scale(2)
        assert O1(parse_word("g"), IDENTITY) == expected
        for g in G.words(2):
            assert O0(g).is_zero()


def test_curvature_fs_identity(h, G):
    O1, O0 = equivariant_curvature(connection_rule(fubini_study(h), G))
    z, zb = gens(h.chart, "z", "zbar")
    assert O0(IDENTITY) == (z.d() * zb.d() * DiffForm.irreducible(h.chart, "q", -2)).scale(2)
    assert O0(IDENTITY) == -fubini_study(h).curvature


@pytest.mark.parametrize("metric", ["flat", "fubini-study"])
def test_curvature_components_formulas_and_base(G21, metric):
    rho = metric_preset(metric)
    O1, O0 = equivariant_curvature(connection_rule(rho, G21))
    dl = lambda g: log_derivative(G21.z_image(g).partial("z")) if g else DiffForm.zero(G21.chart)
    for g0, g1 in product(G21.words(1), repeat=2):
        expected = dl(g0) - dl(g1) + G21.act(rho.partial_log, g0) - G21.act(rho.partial_log, g1)
        assert O1(g0, g1) == expected
        assert base_only(O1(g0, g1))
    for g0 in G21.words(2):
        assert O0(g0) == -G21.act(rho.curvature, g0)
        assert base_only(O0(g0))


def test_metric_curvature_oracle(h):
    for rho in (flat_metric(h), fubini_study(h)):
        assert rho.curvature == rho.curvature_oracle()
    with pytest.raises(EquivariantError):
        metric_preset("round", h)
    with pytest.raises(EquivariantError):
        from gravanom.equivariant import Metric
        Metric("bad", DiffForm.generator(h.chart, "t"), h)


# the p1 cocycle -------------------------------------------------------------

def test_flat_p1_only_22(G21):
    P = p1_cocycle(flat_metric(), G21)
    for t in product(G21.words(1), repeat=2):
        assert P.component(1, 3)(*t).is_zero()
    assert P.component(0, 4)(G1).is_zero()
    O1, _ = equivariant_curvature(connection_rule(flat_metric(), G21))
    for t in product(G21.words(1), repeat=3):
        assert P.component(2, 2)(*t) == O1(t[0], t[1]) * O1(t[1], t[2])


@pytest.mark.parametrize("n1,n2", [(1, 0), (2, -1), (3, 3), (0, 4)])
def test_p1_group_cochain_value(h, n1, n2):
    G = inversion_group(n1, n2, h)
    f = p1_group_cochain(flat_metric(h), G)
    z, t = gens(h.chart, "z", "t")
    expected = (t.d() * z.d() * DiffForm.generator(h.chart, "z", -1)).scale(GaussianRational(0, -2 * (n1 - n2)))
    assert f(G1, G2) == expected
    dlog1 = log_derivative(G.z_image(G1).partial("z"))
    dlog2 = log_derivative(G.z_image(G2).partial("z"))
    assert f(G1, G2) == G.act(dlog1, G2) * dlog2


@pytest.mark.parametrize("metric", ["flat", "fubini-study"])
def test_theorem4_short_words(G, metric):
    res = theorem4_check(metric_preset(metric), G, max_len=1)
    assert all(failed == 0 for _, failed in res.values())
    assert sum(c for c, _ in res.values()) > 0


@pytest.mark.parametrize("metric", ["flat", "fubini-study"])
def test_homotopy_identity(metric):
    G = inversion_group(1, -1)
    assert exactness_homotopy_check(metric_preset(metric), G, max_len=1)
    res = homotopy_check(metric_preset(metric), G, max_len=1)
    assert set(res) >= {(2, 2), (1, 3), (0, 4)}


def test_omega_minus_theta_basic(h):
    for rho in (flat_metric(h), fubini_study(h)):
        a = connection_form(rho) - h.theta_conn("z", "z")
        assert interior_product(h.rotation_field(), a).is_zero()


# ghost decomposition ---------------------------------------------------------

def test_ghost_rotation(h):
    G = Group([rotation(system=h)], h)
    r = parse_word("rotation")
    z, t = gens(h.chart, "z", "t")
    xi = ghost_field(G, r)
    assert xi == (t.d() * z).scale(I)
    assert ghost_field(G, IDENTITY).is_zero()
    fs = fubini_study(h)
    zb = DiffForm.generator(h.chart, "zbar")
    one = DiffForm.constant(h.chart, 1)
    expected = (t.d() * (one - z * zb) * DiffForm.irreducible(h.chart, "q", -1)).scale(I)
    assert covariant_derivative(xi, fs) == expected
    assert ghost_identity_check(G, r, fs)
    assert ghost_identity_check(G, r, flat_metric(h))


def test_ghost_inverse_and_rejects(h):
    G = Group([rotation(system=h)], h)
    assert ghost_identity_check(G, parse_word("rotation^-1"), fubini_study(h))
    with pytest.raises(EquivariantError, match="dt"):
        covariant_derivative(DiffForm.one_form(h.chart, "dz"), flat_metric(h))
