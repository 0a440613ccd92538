import cmath
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from gravanom import homology as hom
from gravanom.equivariant import (GroupCochain, flat_metric, group_coboundary, inversion_group, p1_cocycle,
                                  p1_group_cochain, parse_word)
from gravanom.forms import DiffForm
from gravanom.homology import (ChainElement, HomologyError, NotLaurent, ParamChain, WindingError, boundary,
                               build_cycle, circle_factor, cylinder, delta_homology, integrate,
                               integrate_numeric, pair, pair_total, param_chart,
                               partial_homology, pushforward, torus, winding_number)
from gravanom.jets import holo_jet
from gravanom.sampling import random_base_form, random_chain_element, random_group_cochain, random_word
from gravanom.scalars import GaussianRational, PiScalar

G1, G2 = parse_word("g1"), parse_word("g2")
I = GaussianRational(0, 1)


@pytest.fixture(scope="module")
def G():
    return inversion_group(1, 0)


@pytest.fixture(scope="module")
def ch():
    return holo_jet().chart


def base(ch):
    g = lambda n, e=1: DiffForm.generator(ch, n, e)
    d = lambda n: DiffForm.one_form(ch, n)
    return g, d


def unit_circle():
    factors = (circle_factor("phi"),)
    pc = param_chart(factors)
    u = DiffForm.generator(pc, "u_phi")
    one, zero = DiffForm.constant(pc, 1), DiffForm.zero(pc)
    return ParamChain(factors, {"z": u, "zbar": u.invert(), "t": zero, "w": one}, name="S")


def pi2(c) -> PiScalar:
    return PiScalar({2: c})


# chains ----------------------------------------------------------------------

def test_embedding_validation():
    factors = (circle_factor("phi"),)
    pc = param_chart(factors)
    u = DiffForm.generator(pc, "u_phi")
    one, zero = DiffForm.constant(pc, 1), DiffForm.zero(pc)
    with pytest.raises(HomologyError, match="conj"):
        ParamChain(factors, {"z": u, "zbar": u, "t": zero, "w": one})
    with pytest.raises(HomologyError, match="dw"):
        ParamChain(factors, {"z": u, "zbar": u.invert(), "t": zero, "w": u})
    with pytest.raises(HomologyError, match="must assign"):
        ParamChain(factors, {"z": u, "zbar": u.invert(), "t": zero})
    assert unit_circle().dim == 1 and cylinder().dim == 3


def test_cylinder_boundary():
    C = cylinder()
    faces = boundary(C)
    assert [s for s, _ in faces] == [-1, 1]
    (s_top, top), (s_bot, bot) = faces
    T = torus()
    assert top.embedding["z"].evaluate({"u_phi": 1j})[()] == 1j
    assert str(top.embedding["z"]) == str(T.embedding["z"])
    assert bot.embedding["z"].is_zero() and bot.is_degenerate()
    assert not top.is_degenerate()
    assert boundary(T) == [] and boundary(top) == []


def test_point_chain_boundary():
    pc = param_chart(())
    zero, one = DiffForm.zero(pc), DiffForm.constant(pc, 1)
    pt = ParamChain((), {"z": zero, "zbar": zero, "t": zero, "w": one})
    assert pt.dim == 0 and boundary(pt) == []


def test_pushforward_examples(G):
    T = torus()
    assert pushforward(G, (), T) == T
    gT = pushforward(G, G1, T)
    emb = gT.composed_embedding(G)
    pc = T.chart
    assert emb["z"] == DiffForm.generator(pc, "u_t") * DiffForm.generator(pc, "u_phi", -1)
    G3 = inversion_group(3, 0)
    emb3 = pushforward(G3, G1, T).composed_embedding(G3)
    assert emb3["z"] == DiffForm.generator(pc, "u_t", 3) * DiffForm.generator(pc, "u_phi", -1)


def test_pushforward_composition(G):
    C = cylinder()
    a = pushforward(G, G.mul(G1, G2), C)
    b = pushforward(G, G1, pushforward(G, G2, C))
    assert a == b
    assert a.composed_embedding(G) == b.composed_embedding(G)


def test_chain_element_like_terms():
    C = cylinder()
    e = ChainElement.term((G1,), C, 2) + ChainElement.term((G1,), C, -2)
    assert e.is_zero()
    e = ChainElement.term((G1,), C) + ChainElement.term((G1,), C)
    assert e.terms == {((G1,), C): 2}
    assert (3 * e).terms[((G1,), C)] == 6


# boundary maps -----------------------------------------------------------------

def _dC():
    out = ChainElement()
    for s, f in boundary(cylinder()):
        out = out + ChainElement.term((), f, s)
    return out


def _tensor(ws, e):
    return ChainElement({(tuple(ws) + w, c): v for (w, c), v in e.terms.items()})


def test_delta_examples(G):
    C, dC = cylinder(), _dC()
    e = _tensor((G1, G2), dC)
    pushed = ChainElement({((G1,), pushforward(G, G2, c)): v for (_, c), v in dC.terms.items()})
    expected = _tensor((G2,), dC) - _tensor((G.mul(G1, G2),), dC) + pushed
    assert delta_homology(G, e) == expected
    assert delta_homology(G, ChainElement.term((G1,), C)) == \
        ChainElement.term((), C) - ChainElement.term((), pushforward(G, G1, C))
    assert delta_homology(G, delta_homology(G, ChainElement.term((G1, G2), C))).is_zero()


def test_partial_examples(G):
    C, dC = cylinder(), _dC()
    assert partial_homology(ChainElement.term((G1, G2), C)) == _tensor((G1, G2), dC)
    assert partial_homology(ChainElement.term((G1,), C)) == -_tensor((G1,), dC)
    e = ChainElement.term((G1, G2), C)
    assert (partial_homology(delta_homology(G, e)) + delta_homology(G, partial_homology(e))).is_zero()


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_chain_complex_identities(seed):
    G = inversion_group(2, -1)
    rng = random.Random(seed)
    e = random_chain_element(rng, G, [cylinder(), torus()])
    assert partial_homology(partial_homology(e)).is_zero()
    assert delta_homology(G, delta_homology(G, e)).is_zero()
    mix = partial_homology(delta_homology(G, e)) + delta_homology(G, partial_homology(e))
    assert mix.is_zero()


# exact integration ----------------------------------------------------------

def test_integrate_residues(ch):
    g, d = base(ch)
    dlog = d("dz") * g("z", -1)
    assert integrate(dlog, unit_circle()) == PiScalar({1: 2 * I})
    assert integrate(d("dt") * dlog, torus()) == pi2(4 * I)
    assert integrate(d("dt") * d("dz") * g("z", 2), torus()) == PiScalar()


@pytest.mark.parametrize("n1,n2", [(1, 0), (2, -1), (0, 3)])
def test_integrate_boundary_value(ch, n1, n2):
    g, d = base(ch)
    form = (d("dt") * d("dz") * g("z", -1)).scale(GaussianRational(0, -2 * (n1 - n2)))
    total = sum((integrate(form, f) * s for s, f in boundary(cylinder())), PiScalar())
    # orientation (t, x, y): the outer face enters with sign -1
    assert total == pi2(-8 * (n1 - n2))
    assert integrate(form, torus()) == pi2(8 * (n1 - n2))


def test_integrate_interval_polynomial(ch):
    g, d = base(ch)
    vol = d("dt") * d("dz") * d("dzbar")
    # dz^dzbar = -2i dx^dy; the unit disk has area pi, the circle in t adds 2 pi
    assert integrate(vol, cylinder()) == pi2(-4 * I)
    assert integrate(vol * g("z") * g("zbar"), cylinder()) == pi2(-2 * I)


def test_integrate_errors(ch):
    g, d = base(ch)
    with pytest.raises(HomologyError, match="degree"):
        integrate(d("dz"), torus())
    with pytest.raises(NotLaurent):
        integrate(d("dt") * d("dz") * d("dzbar") * DiffForm.irreducible(ch, "q", -1), cylinder())
    with pytest.raises(HomologyError, match="Group"):
        integrate(d("dt") * d("dz"), torus().with_word(G1))


def test_degenerate_face_integrates_to_zero(ch):
    g, d = base(ch)
    bot = boundary(cylinder())[1][1]
    a = d("dt") * d("dz") * g("z", -1)
    assert integrate(a, bot) == PiScalar()
    assert integrate_numeric(a, bot, 16).value == 0


# numeric oracle ------------------------------------------------------------------

def test_numeric_torus_residue(ch):
    g, d = base(ch)
    r = integrate_numeric(d("dt") * d("dz") * g("z", -1), torus(), 256)
    exact = 4j * math.pi ** 2
    assert abs(r.value - exact) <= 1e-9 * abs(exact)
    assert r.error < 1e-6


def test_numeric_exact_zero(ch):
    g, d = base(ch)
    r = integrate_numeric(d("dt") * d("dz") * g("z", 3), torus(), 256)
    assert abs(r.value) < 1e-12


def test_numeric_pairing_integrand():
    G = inversion_group(1, 0)
    f = p1_group_cochain(flat_metric(G.system), G)
    c = build_cycle(G)
    num = pair(f, c, exact=False, samples=256)
    exact = pair(f, c).approx()
    assert abs(num - exact) <= 1e-6 * abs(exact)
    assert abs(abs(exact) - 8 * math.pi ** 2) < 1e-9


def test_numeric_with_group_word(ch):
    G = inversion_group(2, 0)
    g, d = base(ch)
    a = d("dt") * d("dz") * g("z", -1)
    T = pushforward(G, G1, torus())
    assert integrate(a, T, G) == pi2(-4 * I)
    r = integrate_numeric(a, T, 128, G)
    assert abs(r.value - (-4j * math.pi ** 2)) < 1e-8


@settings(max_examples=6)
@given(st.integers(0, 10**6))
def test_stokes_on_cylinder(seed):
    ch = holo_jet().chart
    a = random_base_form(random.Random(seed), ch, 2, q_power=0)
    lhs = integrate(a.d(), cylinder())
    rhs = sum((integrate(a, f) * s for s, f in boundary(cylinder())), PiScalar())
    assert lhs == rhs


def test_exact_vs_numeric_random(ch):
    rng = random.Random(5)
    for _ in range(3):
        a = random_base_form(rng, ch, 3, q_power=0)
        exact = integrate(a, cylinder()).approx()
        num = integrate_numeric(a, cylinder(), 48).value
        assert abs(num - exact) <= 1e-6 * max(abs(exact), 1.0)


# pairing -------------------------------------------------------------------------

@pytest.mark.parametrize("n1,n2", [(1, 0), (2, -1), (3, 3), (0, 0)])
def test_pairing_values(n1, n2):
    G = inversion_group(n1, n2)
    c = build_cycle(G)
    P = p1_cocycle(flat_metric(G.system), G)
    v = pair_total(P, c)
    assert v == pi2(-8 * (n1 - n2))
    assert pair(p1_group_cochain(flat_metric(G.system), G), c) == v


def test_pairing_duality(G):
    T = torus()
    rng = random.Random(9)
    for k in range(3):
        f = random_group_cochain(k, G, 1, 2)
        e = ChainElement.term((random_word(rng, G, 2), random_word(rng, G, 2)), T)
        assert pair(group_coboundary(f), e) == pair(f, delta_homology(G, e))


def test_pairing_linear(G):
    p = p1_group_cochain(flat_metric(G.system), G)
    f = random_group_cochain(3, G, 2, 2)
    c = build_cycle(G)
    both = GroupCochain(G, 2, 2, lambda gs: p(*gs) * 2 - f(*gs))
    assert pair(both, c + c) == (pair(p, c) * 2 - pair(f, c)) * 2


def test_pairing_ignores_other_bidegrees(G):
    f = random_group_cochain(1, G, 2, 2)
    e = ChainElement.term((G1,), cylinder())
    assert pair(f, e) == PiScalar()


# the cycle ------------------------------------------------------------------------

@pytest.mark.parametrize("n1,n2", [(1, 0), (2, -1), (0, 0)])
def test_cycle_relations(n1, n2):
    G = inversion_group(n1, n2)
    rel = hom.cycle_relations(G, n1, n2)
    assert set(rel) == {"g1*dC = -dC", "g2*dC = -dC", "g1*g2*C = C (weak)",
                        "g1*g2*C = C (reparameterized)", "(d + delta) c = 0 (weak)"}
    for name, failures in rel.items():
        assert failures == [], name


def test_cycle_reparameterization_needed():
    G = inversion_group(2, -1)
    C = cylinder()
    gg = pushforward(G, G.mul(G1, G2), C)
    emb = gg.composed_embedding(G)
    pc = C.chart
    assert emb["z"] == C.embedding["z"] * DiffForm.generator(pc, "u_t", 3)
    assert emb["z"] != C.embedding["z"]


def test_cycle_shape(G):
    c = build_cycle(G)
    assert c.bidegrees() == {(2, 2), (1, 3)}
    assert c.terms[((G1,), cylinder())] == -1
    assert c.terms[((G2,), cylinder())] == 1


# winding ---------------------------------------------------------------------------

def loop(k, n=200, r=1.0):
    return [r * cmath.exp(1j * k * 2 * math.pi * j / n) for j in range(n)]


def test_winding_examples():
    assert winding_number(loop(2)) == 2
    assert winding_number([3 + 1j] * 10) == 0
    assert winding_number(loop(-3)) == -3


@settings(max_examples=30)
@given(st.integers(-6, 6), st.integers(-6, 6))
def test_winding_additive(a, b):
    prod = [x * y for x, y in zip(loop(a), loop(b))]
    assert winding_number(prod) == a + b


def test_winding_errors():
    with pytest.raises(WindingError, match="zero"):
        winding_number([1, 0, 1j])
    with pytest.raises(WindingError, match="3 samples"):
        winding_number([1, 1j])
    with pytest.raises(WindingError, match="sampling"):
        winding_number(loop(2, n=6))


def test_read_samples(tmp_path):
    p = tmp_path / "loop.txt"
    p.write_text("# unit circle\n" + "\n".join(f"{z.real}, {z.imag}" for z in loop(1, 40)) + "\n")
    assert winding_number(hom.read_samples(str(p))) == 1
    p.write_text("1 2 3\n")
    with pytest.raises(WindingError, match="line 1"):
        hom.read_samples(str(p))
