"""Equivariant cochains on the holomorphic jet chart.

Group elements are reduced words over declared generator diffeomorphisms.
``form o g`` is pullback by the order-2 prolongation of ``g``; for a product
``uv`` we have ``form o (uv) = (form o u) o v``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .forms import DiffForm, FormError, Substitution, log_derivative, wedge
from .jets import _HOLO_Y1, _HOLO_Y2, HoloJetChart, holo_jet

Word = Tuple[Tuple[str, int], ...]
IDENTITY: Word = ()


class EquivariantError(ValueError):
    pass


# ---------------------------------------------------------------------------
# diffeomorphisms and prolongation


def _check_holomorphic(Z: DiffForm, what: str) -> None:
    if Z.degrees() - {0}:
        raise EquivariantError(f"{what} must be a 0-form")
    bad = Z.symbols() - {"z", "t", "w"}
    if bad:
        raise EquivariantError(f"{what} may only involve z, t, w (conformal, base-only); found {sorted(bad)}")


def prolongation(system: HoloJetChart, Z: DiffForm, name: str = "") -> Substitution:
    """Substitution acting on base and jet symbols for z -> Z(z, t)."""
    ch = system.chart
    Zbar = Z.conjugate()
    g = {"z": Z, "zbar": Zbar, "t": DiffForm.generator(ch, "t")}
    dg = {mu: g[mu].d() for mu in g}

    def first(mu, nu):
        return dg[mu].component("d" + nu)

    second_cache: Dict = {}

    def second(mu, nu, lam):
        key = (mu, nu, lam)
        if key not in second_cache:
            second_cache[key] = first(mu, nu).d().component("d" + lam)
        return second_cache[key]

    labels = system.labels

    def img1(mu, i):
        return DiffForm.sum([first(mu, nu) * system.y(nu, i) for nu in labels], ch)

    def img2(mu, i, j):
        parts = [first(mu, nu) * system.y2(nu, i, j) for nu in labels]
        for nu in labels:
            for lam in labels:
                a, b = system.y(nu, i), system.y(lam, j)
                if a.is_zero() or b.is_zero():
                    continue
                parts.append(second(mu, nu, lam) * a * b)
        return DiffForm.sum(parts, ch)

    images = {"z": Z, "zbar": Zbar}
    for (mu, i), sym in _HOLO_Y1.items():
        images[sym] = img1(mu, i)
    for (mu, i, j), sym in _HOLO_Y2.items():
        images[sym] = img2(mu, i, j)
    # the holomorphic subbundle must be preserved
    for mu in labels:
        for i in labels:
            if (mu, i) not in _HOLO_Y1 and img1(mu, i) != system.y(mu, i):
                raise EquivariantError(f"{name or 'diffeomorphism'} does not preserve the jet y^{mu}_{i}")
    return Substitution(ch, ch, images, name=name)


class Diffeo:
    """Generator diffeomorphism z -> Z(z, w), zbar -> conj(Z), t -> t."""

    def __init__(self, name: str, forward: DiffForm, inverse: DiffForm, system: HoloJetChart | None = None):
        self.system = system or holo_jet()
        self.name = name
        _check_holomorphic(forward, f"forward map of {name!r}")
        _check_holomorphic(inverse, f"inverse map of {name!r}")
        self.forward = forward
        self.inverse = inverse
        ch = self.system.chart
        z = DiffForm.generator(ch, "z")
        fwd_base = Substitution(ch, ch, {"z": forward, "zbar": forward.conjugate()})
        inv_base = Substitution(ch, ch, {"z": inverse, "zbar": inverse.conjugate()})
        if fwd_base(inverse) != z or inv_base(forward) != z:
            raise EquivariantError(f"declared inverse of {name!r} is not a two-sided inverse")
        self.prolonged = prolongation(self.system, forward, name)
        self.prolonged_inverse = prolongation(self.system, inverse, name + "^-1")

    def __repr__(self):
        return f"Diffeo({self.name!r}: z -> {self.forward})"


def inversion(n: int, name: str | None = None, system: HoloJetChart | None = None) -> Diffeo:
    """z -> w^n / z (an involution)."""
    system = system or holo_jet()
    ch = system.chart
    Z = DiffForm.generator(ch, "w", n) * DiffForm.generator(ch, "z", -1) if n else DiffForm.generator(ch, "z", -1)
    return Diffeo(name or f"inversion({n})", Z, Z, system)


def rotation(name: str = "rotation", system: HoloJetChart | None = None) -> Diffeo:
    """z -> w z, the loop of rotations."""
    system = system or holo_jet()
    ch = system.chart
    z, w = DiffForm.generator(ch, "z"), DiffForm.generator(ch, "w")
    return Diffeo(name, w * z, z * DiffForm.generator(ch, "w", -1), system)


def diffeo_preset(name: str, system: HoloJetChart | None = None) -> Diffeo:
    """Presets ``inversion(n)`` and ``rotation``."""
    import re

    m = re.fullmatch(r"\s*inversion\(\s*(-?\d+)\s*\)\s*", name)
    if m:
        return inversion(int(m.group(1)), system=system)
    if name.strip() == "rotation":
        return rotation(system=system)
    raise EquivariantError(f"unknown diffeomorphism preset {name!r}")


# ---------------------------------------------------------------------------
# group words


def reduce_word(word: Iterable[Tuple[str, int]]) -> Word:
    out: List[Tuple[str, int]] = []
    for name, e in word:
        if e not in (1, -1):
            raise EquivariantError(f"word exponents must be +-1, got {e}")
        if out and out[-1] == (name, -e):
            out.pop()
        else:
            out.append((name, e))
    return tuple(out)


def word_str(word: Word) -> str:
    if not word:
        return "1"
    return "*".join(n if e == 1 else f"{n}^-1" for n, e in word)


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return IDENTITY
    out = []
    for part in text.split("*"):
        part = part.strip()
        if part.endswith("^-1"):
            out.append((part[:-3], -1))
        else:
            out.append((part, 1))
    return reduce_word(out)


class Group:
    """Finitely generated group of conformal diffeomorphisms acting on forms."""

    def __init__(self, generators: Sequence[Diffeo], system: HoloJetChart | None = None):
        self.system = system or (generators[0].system if generators else holo_jet())
        self.generators = {g.name: g for g in generators}
        if len(self.generators) != len(generators):
            raise EquivariantError("duplicate generator names")
        self._subs: Dict[Word, Substitution] = {}

    @property
    def chart(self):
        return self.system.chart

    def check(self, word: Word) -> Word:
        for n, _ in word:
            if n not in self.generators:
                raise EquivariantError(f"unknown group generator {n!r}")
        return reduce_word(word)

    def mul(self, *words: Word) -> Word:
        return reduce_word(x for w in words for x in w)

    def inverse(self, word: Word) -> Word:
        return tuple((n, -e) for n, e in reversed(word))

    def words(self, max_len: int) -> List[Word]:
        letters = [(n, e) for n in self.generators for e in (1, -1)]
        out = [IDENTITY]
        frontier = [IDENTITY]
        for _ in range(max_len):
            nxt = []
            for w in frontier:
                for a in letters:
                    if w and w[-1] == (a[0], -a[1]):
                        continue
                    nxt.append(w + (a,))
            out += nxt
            frontier = nxt
        return out

    def substitution(self, word: Word) -> Substitution:
        word = self.check(word)
        if word not in self._subs:
            if not word:
                sub = Substitution(self.chart, self.chart, {})
            elif len(word) == 1:
                n, e = word[0]
                g = self.generators[n]
                sub = g.prolonged if e == 1 else g.prolonged_inverse
            else:
                sub = self.substitution(word[:1]).then(self.substitution(word[1:]))
            self._subs[word] = sub
        return self._subs[word]

    def act(self, form: DiffForm, word: Word) -> DiffForm:
        """``form o g``: pullback by the prolongation of ``g``."""
        word = self.check(word)
        if not word:
            return form
        return self.substitution(word)(form)

    def z_image(self, word: Word) -> DiffForm:
        return self.act(DiffForm.generator(self.chart, "z"), word)


def inversion_group(n1: int, n2: int, system: HoloJetChart | None = None) -> Group:
    """Generators g1: z -> w^n1/z and g2: z -> w^n2/z."""
    system = system or holo_jet()
    return Group([inversion(n1, "g1", system), inversion(n2, "g2", system)], system)


# ---------------------------------------------------------------------------
# homogeneous cochains


class CochainRule:
    """Equivariant map from (n+1)-tuples of words to m-forms."""

    def __init__(self, group: Group, n: int, m: int, fn: Callable[[Tuple[Word, ...]], DiffForm],
                 name: str = "", cache: bool = True):
        self.group, self.n, self.m, self.fn, self.name = group, n, m, fn, name
        self._cache: Optional[Dict] = {} if cache else None

    @property
    def bidegree(self) -> Tuple[int, int]:
        return self.n, self.m

    def __call__(self, *words: Word) -> DiffForm:
        if len(words) != self.n + 1:
            raise EquivariantError(f"rule {self.name or '?'} of bidegree {self.bidegree} "
                                   f"takes {self.n + 1} group elements, got {len(words)}")
        key = tuple(self.group.check(w) for w in words)
        if self._cache is None:
            return self.fn(key)
        if key not in self._cache:
            out = self.fn(key)
            if not out.is_zero() and out.degree != self.m:
                raise EquivariantError(f"rule {self.name} produced degree {out.degree}, expected {self.m}")
            self._cache[key] = out
        return self._cache[key]

    def evaluate(self, words: Sequence[Word]) -> DiffForm:
        return self(*words)

    # algebra ------------------------------------------------------------
    def _same(self, other: "CochainRule"):
        if self.bidegree != other.bidegree:
            raise EquivariantError(f"bidegree mismatch {self.bidegree} vs {other.bidegree}")

    def __add__(self, other: "CochainRule") -> "CochainRule":
        self._same(other)
        return CochainRule(self.group, self.n, self.m, lambda t: self(*t) + other(*t),
                           f"({self.name}+{other.name})")

    def __neg__(self) -> "CochainRule":
        return CochainRule(self.group, self.n, self.m, lambda t: -self(*t), f"-{self.name}")

    def __sub__(self, other: "CochainRule") -> "CochainRule":
        return self + (-other)

    def scale(self, c) -> "CochainRule":
        return CochainRule(self.group, self.n, self.m, lambda t: self(*t).scale(c), f"{c}*{self.name}")

    def __mul__(self, other: "CochainRule") -> "CochainRule":
        return cochain_product(self, other)


def constant_rule(group: Group, form: DiffForm, name: str = "") -> CochainRule:
    """0-cochain g0 -> form o g0 (the inclusion of forms into C^{0,m})."""
    m = form.degree
    return CochainRule(group, 0, m, lambda t: group.act(form, t[0]), name or "form")


def unit_rule(group: Group) -> CochainRule:
    return constant_rule(group, DiffForm.constant(group.chart, 1), "1")


def zero_rule(group: Group, n: int, m: int) -> CochainRule:
    z = DiffForm.zero(group.chart)
    return CochainRule(group, n, m, lambda t: z, "0")


def delta_simplicial(u: CochainRule, cache: bool = True) -> CochainRule:
    sign_m = -1 if u.m & 1 else 1

    def fn(t):
        parts = []
        for i in range(len(t)):
            v = u(*(t[:i] + t[i + 1:]))
            parts.append(v if (i & 1) == 0 else -v)
        s = DiffForm.sum(parts, u.group.chart)
        return s if sign_m > 0 else -s

    return CochainRule(u.group, u.n + 1, u.m, fn, f"delta({u.name})", cache)


def d_cochain(u: CochainRule, cache: bool = True) -> CochainRule:
    return CochainRule(u.group, u.n, u.m + 1, lambda t: u(*t).d(), f"d({u.name})", cache)


def cochain_product(u: CochainRule, v: CochainRule, cache: bool = True) -> CochainRule:
    sign = -1 if (u.n * v.m) & 1 else 1
    n = u.n

    def fn(t):
        a = u(*t[:n + 1])
        if a.is_zero():
            return a
        out = wedge(a, v(*t[n:]))
        return out if sign > 0 else -out

    return CochainRule(u.group, u.n + v.n, u.m + v.m, fn, f"({u.name}.{v.name})", cache)


class TotalCochain:
    """Finite sum of rules of various bidegrees."""

    def __init__(self, group: Group, parts: Mapping[Tuple[int, int], CochainRule] | None = None):
        self.group = group
        self.parts: Dict[Tuple[int, int], CochainRule] = dict(parts or {})

    def component(self, n: int, m: int) -> CochainRule:
        return self.parts.get((n, m)) or zero_rule(self.group, n, m)

    def __add__(self, other: "TotalCochain") -> "TotalCochain":
        out = dict(self.parts)
        for k, r in other.parts.items():
            out[k] = out[k] + r if k in out else r
        return TotalCochain(self.group, out)

    def __neg__(self):
        return TotalCochain(self.group, {k: -r for k, r in self.parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TotalCochain":
        return TotalCochain(self.group, {k: r.scale(c) for k, r in self.parts.items()})

    def __mul__(self, other: "TotalCochain") -> "TotalCochain":
        out: Dict[Tuple[int, int], CochainRule] = {}
        for (n, m), u in sorted(self.parts.items()):
            for (p, q), v in sorted(other.parts.items()):
                r = cochain_product(u, v)
                k = (n + p, m + q)
                out[k] = out[k] + r if k in out else r
        return TotalCochain(self.group, out)

    def D(self, cache: bool = True) -> "TotalCochain":
        """Total differential d + delta."""
        out: Dict[Tuple[int, int], CochainRule] = {}
        for (n, m), u in sorted(self.parts.items()):
            for r in (d_cochain(u, cache), delta_simplicial(u, cache)):
                k = r.bidegree
                out[k] = out[k] + r if k in out else r
        return TotalCochain(self.group, out)

    def bidegrees(self) -> List[Tuple[int, int]]:
        return sorted(self.parts)


# ---------------------------------------------------------------------------
# inhomogeneous group cochains


class GroupCochain:
    def __init__(self, group: Group, n: int, m: int, fn: Callable[[Tuple[Word, ...]], DiffForm], name: str = ""):
        self.group, self.n, self.m, self.fn, self.name = group, n, m, fn, name

    def __call__(self, *words: Word) -> DiffForm:
        if len(words) != self.n:
            raise EquivariantError(f"group cochain {self.name} takes {self.n} elements, got {len(words)}")
        return self.fn(tuple(self.group.check(w) for w in words))


def to_group_cochain(u: CochainRule) -> GroupCochain:
    """f(g1,...,gn) = u(g1...gn, g2...gn, ..., gn, 1)."""
    G = u.group

    def fn(gs):
        tup = tuple(G.mul(*gs[i:]) for i in range(len(gs))) + (IDENTITY,)
        return u(*tup)

    return GroupCochain(G, u.n, u.m, fn, f"grp({u.name})")


def from_group_cochain(f: GroupCochain) -> CochainRule:
    """u(h0,...,hn) = f(h0 h1^-1, ..., h_{n-1} hn^-1) o hn."""
    G = f.group

    def fn(hs):
        gs = tuple(G.mul(hs[i], G.inverse(hs[i + 1])) for i in range(len(hs) - 1))
        return G.act(f(*gs), hs[-1])

    return CochainRule(G, f.n, f.m, fn, f"hom({f.name})")


def group_coboundary(f: GroupCochain) -> GroupCochain:
    """Inhomogeneous coboundary, last term (-1)^(n+1) f(g1..gn) o g_{n+1}."""
    G, n = f.group, f.n

    def fn(gs):
        parts = [f(*gs[1:])]
        for i in range(n):
            merged = gs[:i] + (G.mul(gs[i], gs[i + 1]),) + gs[i + 2:]
            v = f(*merged)
            parts.append(-v if (i + 1) & 1 else v)
        last = G.act(f(*gs[:n]), gs[n])
        parts.append(-last if (n + 1) & 1 else last)
        return DiffForm.sum(parts, G.chart)

    return GroupCochain(G, n + 1, f.m, fn, f"delta({f.name})")


# ---------------------------------------------------------------------------
# metrics, connection, curvature


class Metric:
    """Kaehler metric rho(z, zbar) dz (x) dzbar with rational rho."""

    def __init__(self, name: str, rho: DiffForm, system: HoloJetChart | None = None):
        self.system = system or holo_jet()
        self.name = name
        if rho.degrees() - {0} or rho.is_zero():
            raise EquivariantError("metric density must be a nonzero 0-form")
        bad = rho.symbols() - {"z", "zbar"}
        if bad:
            raise EquivariantError(f"metric may only depend on z, zbar; found {sorted(bad)}")
        try:
            dlog = log_derivative(rho)
        except FormError as exc:
            raise EquivariantError(f"metric density is not invertible: {exc}") from None
        self.rho = rho
        ch = self.system.chart
        self.dlog_z = dlog.component("dz")  # partial_z ln rho
        self.dlog_zbar = dlog.component("dzbar")
        dz, dzb = DiffForm.one_form(ch, "dz"), DiffForm.one_form(ch, "dzbar")
        self.partial_log = dz * self.dlog_z  # the 1-form (partial ln rho)
        # R_rho = partial partial-bar ln rho = dz ^ dzbar  d_z d_zbar ln rho
        self.curvature = dz * dzb * self.dlog_zbar.partial("z")

    def curvature_oracle(self) -> DiffForm:
        """(rho rho_{z zbar} - rho_z rho_zbar) / rho^2 dz ^ dzbar, expanded independently."""
        r = self.rho
        rz, rzb = r.partial("z"), r.partial("zbar")
        rzzb = rz.partial("zbar")
        ch = self.system.chart
        coeff = (r * rzzb - rz * rzb) * (r * r).invert()
        return DiffForm.one_form(ch, "dz") * DiffForm.one_form(ch, "dzbar") * coeff


def flat_metric(system: HoloJetChart | None = None) -> Metric:
    system = system or holo_jet()
    return Metric("flat", DiffForm.constant(system.chart, 1), system)


def fubini_study(system: HoloJetChart | None = None) -> Metric:
    system = system or holo_jet()
    return Metric("fubini-study", DiffForm.irreducible(system.chart, "q", -2), system)


def metric_preset(name: str, system: HoloJetChart | None = None) -> Metric:
    if name in ("flat", "1"):
        return flat_metric(system)
    if name in ("fubini-study", "fs"):
        return fubini_study(system)
    raise EquivariantError(f"unknown metric preset {name!r}")


def connection_form(metric: Metric) -> DiffForm:
    """omega = (y^-1)^z_z dy^z_z + dz partial_z ln rho."""
    h = metric.system
    return h.inv("z", "z") * h.y("z", "z").d() + metric.partial_log


def connection_rule(metric: Metric, group: Group) -> CochainRule:
    return constant_rule(group, connection_form(metric), "omega")


def equivariant_curvature(omega: CochainRule) -> Tuple[CochainRule, CochainRule]:
    """Components (delta omega, d omega) of bidegrees (1,1) and (0,2)."""
    if omega.bidegree != (0, 1):
        raise EquivariantError("equivariant curvature needs a (0,1) rule")
    O1 = delta_simplicial(omega)
    O1.name = "Omega11"
    O0 = d_cochain(omega)
    O0.name = "Omega02"
    return O1, O0


def curvature_total(metric: Metric, group: Group) -> TotalCochain:
    O1, O0 = equivariant_curvature(connection_rule(metric, group))
    return TotalCochain(group, {(1, 1): O1, (0, 2): O0})


def p1_cocycle(metric: Metric, group: Group) -> TotalCochain:
    """-Omega^2 with components (2,2), (1,3), (0,4)."""
    Om = curvature_total(metric, group)
    return -(Om * Om)


def p1_group_cochain(metric: Metric, group: Group) -> GroupCochain:
    """The (2,2) component of -Omega^2 as an inhomogeneous 2-cochain."""
    return to_group_cochain(p1_cocycle(metric, group).component(2, 2))


def theorem4_check(metric: Metric, group: Group, max_len: int = 2,
                   on_fail: Callable | None = None) -> Dict[Tuple[int, int], Tuple[int, int]]:
    """(d+delta)(-Omega^2) = 0 on all tuples of words of length <= max_len.

    Returns, per bidegree, (number of tuples checked, number of failures).
    """
    P = p1_cocycle(metric, group)
    DP = P.D(cache=False)
    words = group.words(max_len)
    out = {}
    for (n, m) in sorted(DP.parts):
        rule = DP.parts[(n, m)]
        checked = failed = 0
        for t in product(words, repeat=n + 1):
            r = rule(*t)
            checked += 1
            if not r.is_zero():
                failed += 1
                if on_fail:
                    on_fail((n, m), t, r)
        out[(n, m)] = (checked, failed)
    return out


def base_only(a: DiffForm) -> bool:
    """True when the form involves no jet symbols or jet differentials."""
    return not (a.symbols() - {"z", "zbar", "t", "w"}) and not (a.one_form_symbols() - {"dz", "dzbar", "dt"})


# ---------------------------------------------------------------------------
# homotopy between -Omega^2 and -R^2


def homotopy_terms(metric: Metric, group: Group):
    """Return (lhs, rhs) total cochains of the identity Omega^2 - R^2 = 1/2 D(aB + Ba)."""
    h = group.system
    theta = constant_rule(group, h.theta_conn("z", "z"), "theta")
    R = constant_rule(group, h.curvature("z", "z"), "R")
    omega = connection_rule(metric, group)
    Om = curvature_total(metric, group)
    Rt = TotalCochain(group, {(0, 2): R})
    A = TotalCochain(group, {(0, 1): omega - theta})
    B = Om + Rt
    lhs = Om * Om - Rt * Rt
    rhs = (A * B + B * A).D().scale(Fraction(1, 2))
    return lhs, rhs


def homotopy_check(metric: Metric, group: Group, max_len: int = 1) -> Dict[Tuple[int, int], Tuple[int, int]]:
    lhs, rhs = homotopy_terms(metric, group)
    words = group.words(max_len)
    keys = sorted(set(lhs.parts) | set(rhs.parts))
    out = {}
    for n, m in keys:
        a, b = lhs.component(n, m), rhs.component(n, m)
        checked = failed = 0
        for t in product(words, repeat=n + 1):
            checked += 1
            if a(*t) != b(*t):
                failed += 1
        out[(n, m)] = (checked, failed)
    return out


def exactness_homotopy_check(metric: Metric, group: Group, max_len: int = 1) -> bool:
    return all(failed == 0 for _, failed in homotopy_check(metric, group, max_len).values())


# ---------------------------------------------------------------------------
# ghost decomposition


def ghost_field(group: Group, word: Word) -> DiffForm:
    """xi^z = dt (partial_t Z) o g^-1 with Z = z o g."""
    ch = group.chart
    Z = group.z_image(word)
    dtZ = Z.d().component("dt")
    return DiffForm.one_form(ch, "dt") * group.act(dtZ, group.inverse(word))


def covariant_derivative(xi: DiffForm, metric: Metric) -> DiffForm:
    """D_z xi = partial_z xi + xi partial_z ln rho for a dt-valued xi = f dt."""
    ch = xi.chart
    f = xi.component("dt")
    if xi != DiffForm.one_form(ch, "dt") * f:
        raise EquivariantError("ghost field must be proportional to dt")
    return DiffForm.one_form(ch, "dt") * (f.partial("z") + f * metric.dlog_z)


def ghost_identity_terms(group: Group, word: Word, metric: Metric) -> Tuple[DiffForm, DiffForm]:
    """Both sides of R_rho (d ln Z' + (partial ln rho) o g) = R_rho (D_z xi^z) o g."""
    Z = group.z_image(word)
    Zp = Z.partial("z")
    R = metric.curvature
    lhs = R * (log_derivative(Zp) + group.act(metric.partial_log, word))
    xi = ghost_field(group, word)
    rhs = R * group.act(covariant_derivative(xi, metric), word)
    return lhs, rhs


def ghost_identity_check(group: Group, word: Word, metric: Metric) -> bool:
    lhs, rhs = ghost_identity_terms(group, word, metric)
    return lhs == rhs
