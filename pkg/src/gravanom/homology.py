"""Parameterized chains, the homology bicomplex, and exact/numeric integration.

A :class:`ParamChain` is a product of circle and interval factors with an
embedding into M = S^1 x Sigma (images of z, zbar, t, w in the parameter
chart) plus a formally recorded group word: the chain ``g C`` integrates
``a o g`` over ``C``. The parameter box is oriented by its factor order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np
import sympy

from .chart import Chart, circle, coordinate
from .forms import DiffForm, Substitution
from .equivariant import IDENTITY, Group, GroupCochain, Word, word_str
from .scalars import GaussianRational, PiScalar

BASE_SYMBOLS = ("z", "zbar", "t", "w")


class HomologyError(ValueError):
    pass


class NotLaurent(HomologyError):
    """Integrand outside the exact residue / polynomial system."""


Factor = Tuple  # ("circle", name) | ("interval", name, lo, hi)


def circle_factor(name: str) -> Factor:
    return ("circle", name)


def interval_factor(name: str, lo=0, hi=1) -> Factor:
    return ("interval", name, Fraction(lo), Fraction(hi))


@lru_cache(maxsize=None)
def param_chart(factors: Tuple[Factor, ...], irreducibles: Tuple[Tuple[str, Tuple], ...] = ()) -> Chart:
    """Chart of parameter symbols: one coordinate per factor, u_<name> per circle."""
    gens = [coordinate(f[1]) for f in factors]
    gens += [circle(f"u_{f[1]}", f[1]) for f in factors if f[0] == "circle"]
    intervals = [f[1] for f in factors if f[0] == "interval"]
    irr = [(n, dict(p)) for n, p in irreducibles]
    return Chart("param[" + ",".join(f[1] for f in factors) + "]", gens,
                 invertible=intervals, irreducibles=irr, real=[f[1] for f in factors])


class ParamChain:
    """Oriented parameterized chain ``word . (embedding of the factor box)``."""

    def __init__(self, factors: Sequence[Factor], embedding: Mapping[str, DiffForm], *,
                 irreducibles: Sequence[Tuple[str, Mapping]] = (), word: Word = IDENTITY, name: str = ""):
        self.factors = tuple(factors)
        names = [f[1] for f in self.factors]
        if len(set(names)) != len(names):
            raise HomologyError("duplicate factor names")
        for f in self.factors:
            if f[0] not in ("circle", "interval"):
                raise HomologyError(f"unknown factor kind {f[0]!r}")
        self.irreducibles = tuple((n, tuple(sorted(dict(p).items()))) for n, p in irreducibles)
        self.chart = param_chart(self.factors, self.irreducibles)
        emb = {}
        for k in ("z", "zbar", "t", "w"):
            if k not in embedding:
                raise HomologyError(f"embedding must assign {k!r}")
            v = embedding[k]
            if v.chart != self.chart:
                v = Substitution(v.chart, self.chart, {})(v)
            if v.degrees() - {0}:
                raise HomologyError(f"embedding image of {k!r} must be a 0-form")
            emb[k] = v
        if emb["zbar"] != emb["z"].conjugate():
            raise HomologyError("embedding must satisfy zbar = conj(z)")
        if emb["w"].d() != emb["t"].d() * emb["w"] * GaussianRational(0, 1):
            raise HomologyError("embedding must satisfy dw = i w dt")
        self.embedding = emb
        self.word = tuple(word)
        self.name = name
        self._key = (self.factors, self.irreducibles, tuple((k, emb[k]) for k in BASE_SYMBOLS), self.word)

    @property
    def dim(self) -> int:
        return len(self.factors)

    def __eq__(self, other):
        return isinstance(other, ParamChain) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        pre = "" if not self.word else word_str(self.word) + "."
        emb = ", ".join(f"{k}={self.embedding[k]}" for k in ("z", "t"))
        return f"{pre}{self.name or 'chain'}[{' x '.join(f[1] for f in self.factors)}; {emb}]"

    def with_word(self, word: Word) -> "ParamChain":
        return ParamChain(self.factors, self.embedding, irreducibles=[(n, dict(p)) for n, p in self.irreducibles],
                          word=word, name=self.name)

    def is_degenerate(self) -> bool:
        """True when some parameter does not enter the embedding.

        Such a chain has rank below its dimension, so every top-degree form
        pulls back to zero; a diffeomorphism word does not change this.
        """
        used = set()
        for k in ("z", "t"):
            used |= self.embedding[k].symbols()
        for f in self.factors:
            if f[1] not in used and f"u_{f[1]}" not in used:
                return True
        return False

    def source_substitution(self, source: Chart) -> Substitution:
        """Raw embedding as a substitution from a chart containing the base symbols."""
        images = {}
        for g in source.generators:
            if g.name in self.embedding:
                images[g.name] = self.embedding[g.name]
            else:
                images[g.name] = DiffForm.zero(self.chart)
        return Substitution(source, self.chart, images)

    def composed_embedding(self, group: Group) -> Dict[str, DiffForm]:
        """Images of the base symbols under word o embedding."""
        sub = self.source_substitution(group.chart)
        out = {}
        for k in BASE_SYMBOLS:
            x = group.act(DiffForm.generator(group.chart, k), self.word)
            out[k] = sub(x)
        return out


def boundary(ch: ParamChain) -> List[Tuple[int, ParamChain]]:
    """Faces of the parameter box: sum_k (-1)^k (upper_k - lower_k) over interval factors."""
    out = []
    for k, f in enumerate(ch.factors):
        if f[0] != "interval":
            continue
        rest = ch.factors[:k] + ch.factors[k + 1:]
        irr = tuple((n, p) for n, p in ch.irreducibles
                    if all(sym != f[1] for m, _ in p for sym, _ in m))
        face_chart = param_chart(rest, irr)
        for bound, s in ((f[3], 1), (f[2], -1)):
            images = {g.name: DiffForm.generator(face_chart, g.name)
                      for g in ch.chart.generators if g.name != f[1]}
            images[f[1]] = DiffForm.constant(face_chart, GaussianRational(bound))
            sub = Substitution(ch.chart, face_chart, images)
            emb = {key: sub(v) for key, v in ch.embedding.items()}
            face = ParamChain(rest, emb, irreducibles=[(n, dict(p)) for n, p in irr],
                              word=ch.word, name=f"{ch.name}|{f[1]}={bound}")
            out.append((s * (-1 if k & 1 else 1), face))
    return out


def pushforward(group: Group, g: Word, ch: ParamChain) -> ParamChain:
    """Left action g C: the effective map becomes g o (current map)."""
    g = group.check(g)
    out = ch.with_word(group.mul(g, ch.word))
    if not out.is_degenerate():
        out.composed_embedding(group)  # raises if the composition leaves the coefficient system
    return out


def reparameterize(ch: ParamChain, images: Mapping[str, DiffForm]) -> ParamChain:
    """Apply a parameter substitution (e.g. u_phi -> u_phi u_t^k) to the raw embedding."""
    sub = Substitution(ch.chart, ch.chart, images)
    emb = {k: sub(v) for k, v in ch.embedding.items()}
    return ParamChain(ch.factors, emb, irreducibles=[(n, dict(p)) for n, p in ch.irreducibles],
                      word=ch.word, name=ch.name)


# ---------------------------------------------------------------------------
# presets


def cylinder() -> ParamChain:
    """Solid cylinder |z| <= 1 with parameters (t, r, phi), oriented as (t, x, y)."""
    factors = (circle_factor("t"), interval_factor("r", 0, 1), circle_factor("phi"))
    irr = [("1+r^2", {(): 1, (("r", 2),): 1})]
    chp = param_chart(factors, tuple((n, tuple(sorted(p.items()))) for n, p in irr))
    g = lambda n, e=1: DiffForm.generator(chp, n, e)
    emb = {"z": g("r") * g("u_phi"), "zbar": g("r") * g("u_phi", -1), "t": g("t"), "w": g("u_t")}
    return ParamChain(factors, emb, irreducibles=irr, name="C")


def torus() -> ParamChain:
    """Torus |z| = 1 with parameters (t, phi)."""
    factors = (circle_factor("t"), circle_factor("phi"))
    chp = param_chart(factors)
    g = lambda n, e=1: DiffForm.generator(chp, n, e)
    emb = {"z": g("u_phi"), "zbar": g("u_phi", -1), "t": g("t"), "w": g("u_t")}
    return ParamChain(factors, emb, name="T")


def chain_preset(name: str) -> ParamChain:
    if name == "cylinder":
        return cylinder()
    if name == "torus":
        return torus()
    raise HomologyError(f"unknown chain preset {name!r}")


# ---------------------------------------------------------------------------
# chain elements


ChainKey = Tuple[Tuple[Word, ...], ParamChain]


class ChainElement:
    """Integer combination of terms g1 (x) ... (x) gn (x) chain."""

    def __init__(self, terms: Mapping[ChainKey, int] | None = None):
        clean: Dict[ChainKey, int] = {}
        for k, v in (terms or {}).items():
            if v:
                clean[k] = clean.get(k, 0) + v
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def term(cls, words: Sequence[Word], chain: ParamChain, coeff: int = 1) -> "ChainElement":
        return cls({(tuple(words), chain): coeff})

    def __add__(self, other: "ChainElement") -> "ChainElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return ChainElement(out)

    def __neg__(self):
        return ChainElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c: int):
        return ChainElement({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, ChainElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def bidegrees(self) -> set:
        return {(len(w), c.dim) for w, c in self.terms}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (ws, c), v in self.terms.items():
            pre = "".join(word_str(w) + " (x) " for w in ws)
            parts.append(f"{v}*[{pre}{c!r}]")
        return " + ".join(parts)


def partial_homology(e: ChainElement) -> ChainElement:
    """d(g1 (x) ... (x) gn (x) C) = (-1)^n g1 (x) ... (x) gn (x) dC."""
    out: Dict[ChainKey, int] = {}
    for (ws, c), v in e.terms.items():
        sign = -1 if len(ws) & 1 else 1
        for s, face in boundary(c):
            key = (ws, face)
            out[key] = out.get(key, 0) + sign * s * v
    return ChainElement(out)


def delta_homology(group: Group, e: ChainElement) -> ChainElement:
    """g2(x)..(x)C + sum_{i<n} (-1)^i ..(x) g_i g_{i+1} (x).. + (-1)^n g1(x)..(x)g_{n-1}(x) g_n C."""
    out: Dict[ChainKey, int] = {}

    def add(ws, c, v):
        key = (tuple(ws), c)
        out[key] = out.get(key, 0) + v

    for (ws, c), v in e.terms.items():
        n = len(ws)
        if n == 0:
            continue
        add(ws[1:], c, v)
        for i in range(n - 1):
            merged = ws[:i] + (group.mul(ws[i], ws[i + 1]),) + ws[i + 2:]
            add(merged, c, v if (i + 1) % 2 == 0 else -v)
        add(ws[:-1], pushforward(group, ws[-1], c), v if n % 2 == 0 else -v)
    return ChainElement(out)


def total_boundary(group: Group, e: ChainElement) -> ChainElement:
    return partial_homology(e) + delta_homology(group, e)


def build_cycle(group: Group, base: ParamChain | None = None) -> ChainElement:
    """c = g1 (x) g2 (x) dC + (g2 - g1 - g1 g2) (x) C."""
    C = base or cylinder()
    g1, g2 = (("g1", 1),), (("g2", 1),)
    out = ChainElement()
    for s, face in boundary(C):
        out = out + ChainElement.term((g1, g2), face, s)
    out = out + ChainElement.term((g2,), C) - ChainElement.term((g1,), C) \
        - ChainElement.term((group.mul(g1, g2),), C)
    return out


# ---------------------------------------------------------------------------
# exact integration


def _pullback_to_box(a: DiffForm, ch: ParamChain, group: Group | None) -> DiffForm:
    if ch.word:
        if group is None:
            raise HomologyError("chain carries a group word; a Group is required to integrate")
        a = group.act(a, ch.word)
    extra = a.symbols() - set(ch.embedding)
    if extra:
        raise HomologyError(f"integrand involves non-base symbols {sorted(extra)}")
    return ch.source_substitution(a.chart)(a)


def _r_integral(expr, var, lo, hi):
    res = sympy.integrate(expr, (var, lo, hi))
    if res.has(sympy.oo, -sympy.oo, sympy.zoo, sympy.nan) or res.has(sympy.Integral):
        raise NotLaurent(f"integrand {expr} is not integrable on [{lo}, {hi}]")
    return res


def _to_pi_scalar(expr) -> PiScalar:
    expr = sympy.nsimplify(sympy.expand(expr), rational=True) if expr.has(sympy.Float) else sympy.expand(expr)
    if expr.free_symbols or expr.has(sympy.log) or expr.has(sympy.atan):
        raise NotLaurent(f"value {expr} is not a polynomial in pi over Q(i)")
    poly = sympy.Poly(expr, sympy.pi)
    out = {}
    for (k,), c in poly.terms():
        re, im = sympy.re(c), sympy.im(c)
        if not (re.is_Rational and im.is_Rational):
            raise NotLaurent(f"coefficient {c} is not a Gaussian rational")
        out[k] = GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))
    return PiScalar(out)


def integrate(a: DiffForm, ch: ParamChain, group: Group | None = None) -> PiScalar:
    """Exact integral of a top-degree form over a parameterized chain."""
    return _to_pi_scalar(integrate_symbolic(a, ch, group))


def integrate_symbolic(a: DiffForm, ch: ParamChain, group: Group | None = None):
    """The exact integral as a sympy number (may involve logarithms)."""
    if not a.is_zero() and a.degree != ch.dim:
        raise HomologyError(f"form degree {a.degree} does not match chain dimension {ch.dim}")
    if ch.is_degenerate():
        return sympy.Integer(0)
    b = _pullback_to_box(a, ch, group)
    if b.is_zero():
        return sympy.Integer(0)
    pc = ch.chart
    names = ["d" + f[1] for f in ch.factors]
    coeff = b.component(*names)
    if coeff.is_zero():
        return sympy.Integer(0)
    circles = {pc.gen(f"u_{f[1]}") for f in ch.factors if f[0] == "circle"}
    angles = {pc.gen(f[1]) for f in ch.factors if f[0] == "circle"}
    for k, _ in coeff.den:
        if any(i in circles or i in angles for m in pc.irreducibles[k] for i, _ in m):
            raise NotLaurent("denominator depends on a circle parameter")
    syms = {f[1]: sympy.Symbol(f[1], real=True) for f in ch.factors if f[0] == "interval"}
    num = 0
    for m, c in coeff.terms[()].items():
        idx = {i for i, _ in m}
        if idx & angles:
            raise NotLaurent("integrand depends on an angle coordinate non-periodically")
        if idx & circles:
            continue  # nonzero Fourier modes integrate to zero
        term = sympy.Rational(int(c.re.numerator), int(c.re.denominator)) + \
            sympy.I * sympy.Rational(int(c.im.numerator), int(c.im.denominator))
        for i, e in m:
            term *= syms[pc.generators[i].name] ** e
        num += term
    den = 1
    for k, e in coeff.den:
        p = 0
        for m, c in pc.irreducibles[k].items():
            t = sympy.Rational(int(c.re.numerator), int(c.re.denominator))
            for i, ee in m:
                t *= syms[pc.generators[i].name] ** ee
            p += t
        den *= p ** e
    expr = sympy.together(num / den)
    for f in ch.factors:
        if f[0] == "interval":
            expr = _r_integral(expr, syms[f[1]], sympy.Rational(f[2].numerator, f[2].denominator),
                               sympy.Rational(f[3].numerator, f[3].denominator))
    n_circles = sum(1 for f in ch.factors if f[0] == "circle")
    return sympy.expand(expr * (2 * sympy.pi) ** n_circles)


# ---------------------------------------------------------------------------
# numeric oracle


@dataclass
class NumericResult:
    value: complex
    error: float
    samples: int

    def __complex__(self):
        return complex(self.value)


def _point_map(ch: ParamChain, group: Group | None, params: Dict[str, np.ndarray]):
    vals = {}
    for f in ch.factors:
        vals[f[1]] = params[f[1]]
        if f[0] == "circle":
            vals[f"u_{f[1]}"] = np.exp(1j * params[f[1]])
    z = ch.embedding["z"].evaluate(vals).get((), 0) + 0 * params[ch.factors[0][1]]
    t = ch.embedding["t"].evaluate(vals).get((), 0) + 0 * params[ch.factors[0][1]]
    t = np.real(t)
    for name, e in reversed(ch.word):
        g = group.generators[name]
        Z = g.forward if e == 1 else g.inverse
        z = Z.evaluate({"z": z, "t": t, "w": np.exp(1j * t)})[()]
    return z, t


# eighth-order central difference weights for offsets 1..4
_STENCIL = (4 / 5, -1 / 5, 4 / 105, -1 / 280)
_H_CIRCLE = 1e-2


def integrate_numeric(a: DiffForm, ch: ParamChain, samples: int = 256, group: Group | None = None,
                      estimate_error: bool = True) -> NumericResult:
    """Product quadrature: trapezoid on circles, Gauss-Legendre on intervals.

    Tangent vectors come from eighth-order central differences of the point
    map; the integrand is evaluated numerically in (z, zbar, t).
    """
    if ch.word and group is None:
        raise HomologyError("chain carries a group word; a Group is required to integrate")
    if not a.is_zero() and a.degree != ch.dim:
        raise HomologyError(f"form degree {a.degree} does not match chain dimension {ch.dim}")

    def run(N: int) -> complex:
        if a.is_zero() or ch.is_degenerate():
            return 0j
        nodes, weights = [], []
        for f in ch.factors:
            if f[0] == "circle":
                nodes.append(np.arange(N) * (2 * np.pi / N))
                weights.append(np.full(N, 2 * np.pi / N))
            else:
                x, wts = np.polynomial.legendre.leggauss(N)
                lo, hi = float(f[2]), float(f[3])
                nodes.append(0.5 * (hi - lo) * x + 0.5 * (hi + lo))
                weights.append(0.5 * (hi - lo) * wts)
        grids = np.meshgrid(*nodes, indexing="ij")
        wgrid = np.ones_like(grids[0])
        for k, wk in enumerate(np.meshgrid(*weights, indexing="ij")):
            wgrid = wgrid * wk
        names = [f[1] for f in ch.factors]
        base = dict(zip(names, grids))
        z0, t0 = _point_map(ch, group, base)
        tangents = []
        for k, f in enumerate(ch.factors):
            nm = f[1]
            if f[0] == "circle":
                h = np.full_like(base[nm], _H_CIRCLE)
            else:
                # keep the stencil inside the box: embeddings may be singular at an endpoint
                gap = np.minimum(base[nm] - float(f[2]), float(f[3]) - base[nm])
                h = np.minimum(_H_CIRCLE, gap / 5)
            dz = np.zeros_like(z0, dtype=complex)
            dt = np.zeros_like(t0, dtype=float)
            for j, c in enumerate(_STENCIL, 1):
                p, m = dict(base), dict(base)
                p[nm] = base[nm] + j * h
                m[nm] = base[nm] - j * h
                zp, tp = _point_map(ch, group, p)
                zm, tm = _point_map(ch, group, m)
                dz = dz + c * (zp - zm)
                dt = dt + c * (tp - tm)
            dz, dt = dz / h, dt / h
            tangents.append({"dz": dz, "dzbar": np.conj(dz), "dt": dt})
        coeffs = a.evaluate({"z": z0, "zbar": np.conj(z0), "t": t0, "w": np.exp(1j * t0)})
        total = np.zeros_like(z0, dtype=complex)
        dim = len(names)
        for wedge_names, c in coeffs.items():
            if any(x not in ("dz", "dzbar", "dt") for x in wedge_names):
                raise HomologyError(f"numeric integration needs base 1-forms, got {wedge_names}")
            mat = np.empty(z0.shape + (dim, dim), dtype=complex)
            for i, x in enumerate(wedge_names):
                for k in range(dim):
                    mat[..., i, k] = tangents[k][x]
            total = total + c * np.linalg.det(mat)
        return complex(np.sum(total * wgrid))

    val = run(samples)
    err = abs(val - run(max(samples // 2, 2))) if estimate_error else float("nan")
    return NumericResult(val, err, samples)


# ---------------------------------------------------------------------------
# pairing


def pair(u: GroupCochain, e: ChainElement, exact: bool = True, samples: int = 256):
    """Sum over terms of matching bidegree of coefficient * integral of u(words)."""
    total = PiScalar() if exact else 0j
    for (ws, c), v in sorted(e.terms.items(), key=lambda kv: repr(kv[0])):
        if len(ws) != u.n or c.dim != u.m:
            continue
        form = u(*ws)
        if exact:
            total = total + integrate(form, c, u.group) * v
        else:
            total = total + v * integrate_numeric(form, c, samples, u.group, estimate_error=False).value
    return total


def pair_total(u, e: ChainElement, exact: bool = True, samples: int = 256):
    """Pair every component of a total cochain (homogeneous form) with ``e``."""
    from .equivariant import to_group_cochain

    total = PiScalar() if exact else 0j
    for key in sorted(u.parts):
        total = total + pair(to_group_cochain(u.parts[key]), e, exact, samples)
    return total


def weak_pairings(group: Group, e: ChainElement, basis: Mapping[int, Sequence[Tuple[str, DiffForm]]]):
    """Pair every word-tuple component of ``e`` against test forms of matching degree.

    Returns a list of (words, test-form name, exact value).
    """
    groups: Dict[Tuple[Word, ...], List[Tuple[ParamChain, int]]] = {}
    for (ws, c), v in e.terms.items():
        groups.setdefault(ws, []).append((c, v))
    out = []
    for ws in sorted(groups, key=lambda w: (len(w), repr(w))):
        items = groups[ws]
        dims = {c.dim for c, _ in items}
        for dim in sorted(dims):
            for name, form in basis.get(dim, ()):
                val = PiScalar()
                for c, v in items:
                    if c.dim == dim:
                        val = val + integrate(form, c, group) * v
                out.append((ws, dim, name, val))
    return out


def test_basis(chart: Chart) -> Dict[int, List[Tuple[str, DiffForm]]]:
    """Test forms: five 2-forms and a family of 3-forms smooth on the sphere."""
    g = lambda n, e=1: DiffForm.generator(chart, n, e)
    d = lambda n: DiffForm.one_form(chart, n)
    q = lambda e: DiffForm.irreducible(chart, "q", e)
    z, zb = g("z"), g("zbar")
    dz, dzb, dt = d("dz"), d("dzbar"), d("dt")
    two = [
        ("dt^dz/z", dt * dz * z.invert()),
        ("dt^dzbar/zbar", dt * dzb * zb.invert()),
        ("dz^dzbar/(1+z zbar)^2", dz * dzb * q(-2)),
        ("dt^(z dzbar - zbar dz)/(1+z zbar)", dt * (z * dzb - zb * dz) * q(-1)),
        ("dt^dz zbar", dt * dz * zb),
    ]
    vol = dt * dz * dzb * q(-2)
    w = g("w")
    three = [
        ("dt^dz^dzbar/(1+z zbar)^2", vol),
        ("w dt^dz^dzbar/(1+z zbar)^2", vol * w),
        ("z zbar dt^dz^dzbar/(1+z zbar)^3", vol * z * zb * q(-1)),
        ("z w^-1 dt^dz^dzbar/(1+z zbar)^3", vol * z * g("w", -1) * q(-1)),
        ("dt^dz^dzbar/(1+z zbar)^4", vol * q(-2)),
    ]
    return {2: two, 3: three}


# ---------------------------------------------------------------------------
# winding number


class WindingError(ValueError):
    pass


def winding_number(samples: Sequence[complex], max_step: float = math.pi / 2) -> int:
    """Total argument change of a closed sampled loop divided by 2 pi.

    Consecutive samples (including last -> first) must differ in argument by
    less than ``max_step`` so the principal-branch increments are reliable.
    """
    z = np.asarray(samples, dtype=complex)
    if z.ndim != 1 or z.size < 3:
        raise WindingError("need at least 3 samples")
    if np.any(z == 0):
        raise WindingError("loop passes through zero")
    ratios = np.roll(z, -1) / z
    steps = np.angle(ratios)
    if np.any(np.abs(steps) >= max_step):
        k = int(np.argmax(np.abs(steps)))
        raise WindingError(f"inadequate sampling: argument step {steps[k]:.3f} at sample {k}")
    total = float(np.sum(steps)) / (2 * math.pi)
    return int(round(total))


def read_samples(path: str) -> List[complex]:
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.replace(",", " ").split()
            if len(parts) != 2:
                raise WindingError(f"line {lineno}: expected 're, im', got {line!r}")
            try:
                out.append(complex(float(parts[0]), float(parts[1])))
            except ValueError:
                raise WindingError(f"line {lineno}: cannot parse {line!r}") from None
    return out


# ---------------------------------------------------------------------------
# cycle relations


def weak_zero(group: Group, e: ChainElement, basis=None) -> List[Tuple[Tuple[Word, ...], int, str, PiScalar]]:
    """Nonzero pairings of ``e`` against the test basis (empty list means weakly zero)."""
    basis = basis or test_basis(group.chart)
    return [x for x in weak_pairings(group, e, basis) if x[3] != PiScalar()]


def shear_reparameterization(ch: ParamChain, k: int) -> Dict[str, DiffForm]:
    """u_phi -> u_phi u_t^k, i.e. phi -> phi + k t (orientation preserving)."""
    pc = ch.chart
    g = lambda n, e=1: DiffForm.generator(pc, n, e)
    return {"u_phi": g("u_phi") * g("u_t", k), "phi": g("phi") + g("t") * k}


def cycle_relations(group: Group, n1: int, n2: int, base: ParamChain | None = None) -> Dict[str, list]:
    """Failures of the relations g_i dC = -dC, g1 g2 C = C and (d + delta) c = 0.

    Each entry is empty when the relation holds. The exact relation compares
    the composed embedding of g1 g2 C, after the shear phi -> phi - (n1-n2) t,
    with the embedding of C.
    """
    C = base or cylinder()
    g1, g2 = (("g1", 1),), (("g2", 1),)
    dC = ChainElement()
    for s, face in boundary(C):
        dC = dC + ChainElement.term((), face, s)
    out: Dict[str, list] = {}
    for name, g in (("g1", g1), ("g2", g2)):
        pushed = ChainElement({((), pushforward(group, g, c)): v for (_, c), v in dC.terms.items()})
        out[f"{name}*dC = -dC"] = weak_zero(group, pushed + dC)
    gg = pushforward(group, group.mul(g1, g2), C)
    out["g1*g2*C = C (weak)"] = weak_zero(group, ChainElement.term((), gg) - ChainElement.term((), C))
    emb = gg.composed_embedding(group)
    sub = Substitution(C.chart, C.chart, shear_reparameterization(C, -(n1 - n2)))
    out["g1*g2*C = C (reparameterized)"] = [
        (k, str(sub(emb[k])), str(C.embedding[k])) for k in BASE_SYMBOLS if sub(emb[k]) != C.embedding[k]]
    out["(d + delta) c = 0 (weak)"] = weak_zero(group, total_boundary(group, build_cycle(group, C)))
    return out
