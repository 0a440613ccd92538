"""Graded-commutative differential forms with exact rational coefficients.

A :class:`DiffForm` is ``N / D`` where ``N`` maps each canonically ordered
wedge of anticommuting generators to a Laurent polynomial in the commuting
generators, and ``D`` is a product of the chart's declared irreducible
polynomials. Normal form cancels every irreducible that divides all
components of ``N``, so equality of forms is equality of representations.
"""

from __future__ import annotations

from functools import lru_cache
from numbers import Rational
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .chart import Chart, ChartError, MissingDifferentialRule
from .laurent import (
    UNIT,
    Mono,
    Poly,
    mono_mul,
    mono_pow,
    monomial_content,
    poly_add_into,
    poly_divexact,
    poly_is_constant,
    poly_mul,
    poly_pow,
    poly_scale,
    poly_shift,
)
from .scalars import ONE, ZERO, GaussianRational

Wedge = Tuple[int, ...]
Den = Tuple[Tuple[int, int], ...]


class FormError(ValueError):
    pass


class ChartMismatch(FormError):
    pass


class NotInvertible(FormError):
    """A coefficient that would need a non-declared denominator."""


class DomainError(FormError):
    pass


@lru_cache(maxsize=100_000)
def wedge_merge(a: Wedge, b: Wedge) -> Optional[Tuple[int, Wedge]]:
    """Sign and canonical order of ``a ^ b``; ``None`` if a factor repeats."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    sa = set(a)
    if sa.intersection(b):
        return None
    inversions = 0
    for y in b:
        for x in a:
            if x > y:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(a + b))


@lru_cache(maxsize=4096)
def _irr_power(chart: Chart, k: int, e: int) -> Poly:
    return poly_pow(chart.irreducibles[k], e)


def _den_poly(chart: Chart, den: Mapping[int, int]) -> Poly:
    out: Poly = {UNIT: ONE}
    for k, e in den.items():
        if e:
            out = poly_mul(out, _irr_power(chart, k, e))
    return out


def _cancel(chart: Chart, den: Den, terms: Dict[Wedge, Poly]) -> Tuple[Den, Dict[Wedge, Poly]]:
    if not terms:
        return (), terms
    if not den:
        return den, terms
    dd = dict(den)
    for k in sorted(dd):
        p = chart.irreducibles[k]
        while dd[k]:
            new = {}
            for w, poly in terms.items():
                q = poly_divexact(poly, p)
                if q is None:
                    break
                new[w] = q
            else:
                terms = new
                dd[k] -= 1
                continue
            break
    return tuple(sorted((k, e) for k, e in dd.items() if e)), terms


def _scalar(x) -> Optional[GaussianRational]:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return GaussianRational.coerce(x)
    return None


class DiffForm:
    """Immutable element of the chart's differential algebra."""

    __slots__ = ("chart", "den", "terms", "_hash")

    def __init__(self, chart: Chart, terms: Mapping[Wedge, Poly], den: Den = (), *, normalized: bool = False):
        self.chart = chart
        if normalized:
            self.den, self.terms = den, dict(terms)
        else:
            clean = {w: dict(p) for w, p in terms.items() if p}
            for p in clean.values():
                for m in [m for m, c in p.items() if not c]:
                    del p[m]
            clean = {w: p for w, p in clean.items() if p}
            den = tuple(sorted((k, e) for k, e in den if e))
            self.den, self.terms = _cancel(chart, den, clean)
        self._hash = None

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, chart: Chart) -> "DiffForm":
        return cls(chart, {}, (), normalized=True)

    @classmethod
    def constant(cls, chart: Chart, c) -> "DiffForm":
        c = GaussianRational.coerce(c)
        return cls(chart, {(): {UNIT: c}} if c else {}, (), normalized=True)

    @classmethod
    def generator(cls, chart: Chart, name: str, exponent: int = 1) -> "DiffForm":
        i = chart.gen(name)
        if exponent < 0 and i not in chart.invertible:
            raise NotInvertible(f"generator {name!r} is not declared invertible in chart {chart.name!r}")
        if exponent == 0:
            return cls.constant(chart, 1)
        return cls(chart, {(): {((i, exponent),): ONE}}, (), normalized=True)

    @classmethod
    def one_form(cls, chart: Chart, name: str) -> "DiffForm":
        a = chart.one_form_index(name)
        return cls(chart, {(a,): {UNIT: ONE}}, (), normalized=True)

    @classmethod
    def from_poly(cls, chart: Chart, poly: Poly, wedge: Wedge = ()) -> "DiffForm":
        return cls(chart, {wedge: poly})

    @classmethod
    def irreducible(cls, chart: Chart, name: str, exponent: int = 1) -> "DiffForm":
        k = chart.irr_index[name]
        if exponent >= 0:
            return cls(chart, {(): _irr_power(chart, k, exponent)})
        return cls(chart, {(): {UNIT: ONE}}, ((k, -exponent),))

    @staticmethod
    def sum(forms: Iterable["DiffForm"], chart: Chart | None = None) -> "DiffForm":
        forms = [f for f in forms if f.terms]
        if not forms:
            if chart is None:
                raise FormError("empty sum needs an explicit chart")
            return DiffForm.zero(chart)
        ch = forms[0].chart
        for f in forms:
            _same_chart(ch, f.chart)
        common: Dict[int, int] = {}
        for f in forms:
            for k, e in f.den:
                common[k] = max(common.get(k, 0), e)
        acc: Dict[Wedge, Poly] = {}
        for f in forms:
            fd = dict(f.den)
            missing = {k: e - fd.get(k, 0) for k, e in common.items() if e - fd.get(k, 0)}
            factor = _den_poly(ch, missing) if missing else None
            for w, p in f.terms.items():
                tgt = acc.setdefault(w, {})
                poly_add_into(tgt, poly_mul(p, factor) if factor else p)
        return DiffForm(ch, acc, tuple(sorted(common.items())))

    # structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set:
        return {len(w) for w in self.terms}

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if not ds:
            return 0
        if len(ds) > 1:
            raise FormError(f"form is not homogeneous (degrees {sorted(ds)})")
        return ds.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, k: int) -> "DiffForm":
        return DiffForm(self.chart, {w: p for w, p in self.terms.items() if len(w) == k}, self.den)

    def numerator_terms(self) -> Iterable[Tuple[Wedge, Mono, GaussianRational]]:
        for w, p in self.terms.items():
            for m, c in p.items():
                yield w, m, c

    def symbols(self) -> set:
        """Names of commuting generators occurring in numerators or denominators."""
        out = set()
        for p in self.terms.values():
            for m in p:
                out.update(self.chart.generators[i].name for i, _ in m)
        for k, _ in self.den:
            for m in self.chart.irreducibles[k]:
                out.update(self.chart.generators[i].name for i, _ in m)
        return out

    def one_form_symbols(self) -> set:
        return {self.chart.one_forms[a] for w in self.terms for a in w}

    def __eq__(self, other):
        if isinstance(other, DiffForm):
            return self.chart == other.chart and self.den == other.den and self.terms == other.terms
        s = _scalar(other)
        if s is not None:
            return self == DiffForm.constant(self.chart, s)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.den, frozenset((w, frozenset(p.items())) for w, p in self.terms.items())))
        return self._hash

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "DiffForm":
        if isinstance(other, DiffForm):
            _same_chart(self.chart, other.chart)
            return other
        s = _scalar(other)
        if s is None:
            raise TypeError(f"cannot combine DiffForm with {type(other).__name__}")
        return DiffForm.constant(self.chart, s)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.den == other.den:
            acc = {w: dict(p) for w, p in self.terms.items()}
            for w, p in other.terms.items():
                poly_add_into(acc.setdefault(w, {}), p)
            if not self.den:
                acc = {w: p for w, p in acc.items() if p}
                return DiffForm(self.chart, acc, (), normalized=True)
            return DiffForm(self.chart, acc, self.den)
        return DiffForm.sum([self, other])

    __radd__ = __add__

    def __neg__(self):
        return DiffForm(self.chart, {w: poly_scale(p, -ONE) for w, p in self.terms.items()},
                        self.den, normalized=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "DiffForm":
        c = GaussianRational.coerce(c)
        if not c:
            return DiffForm.zero(self.chart)
        return DiffForm(self.chart, {w: poly_scale(p, c) for w, p in self.terms.items()},
                        self.den, normalized=True)

    def __mul__(self, other):
        s = _scalar(other)
        if s is not None:
            return self.scale(s)
        if not isinstance(other, DiffForm):
            return NotImplemented
        return wedge(self, other)

    def __rmul__(self, other):
        s = _scalar(other)
        if s is not None:
            return self.scale(s)
        return NotImplemented

    def __xor__(self, other):
        return wedge(self, other)

    def __truediv__(self, other):
        s = _scalar(other)
        if s is not None:
            return self.scale(s.inverse())
        other = self._coerce(other)
        return wedge(self, other.invert())

    def __rtruediv__(self, other):
        return self._coerce(other) * self.invert()

    def __pow__(self, k: int):
        if self.degrees() - {0}:
            raise FormError("powers are only defined for 0-forms")
        if k < 0:
            return self.invert() ** (-k)
        out = DiffForm.constant(self.chart, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # calculus ---------------------------------------------------------
    def d(self) -> "DiffForm":
        return exterior_d(self)

    def invert(self) -> "DiffForm":
        return invert(self)

    def interior(self, v: "VectorField") -> "DiffForm":
        return interior_product(v, self)

    def conjugate(self) -> "DiffForm":
        return conjugate(self)

    def kill(self, one_forms: Iterable[str]) -> "DiffForm":
        """Set the named anticommuting generators to zero."""
        idx = {self.chart.one_form_index(n) for n in one_forms}
        return DiffForm(self.chart, {w: p for w, p in self.terms.items() if not idx.intersection(w)},
                        self.den)

    def component(self, *one_forms: str) -> "DiffForm":
        """Coefficient (0-form) of the wedge of the named 1-forms, sign-adjusted."""
        idx = [self.chart.one_form_index(n) for n in one_forms]
        if len(set(idx)) != len(idx):
            return DiffForm.zero(self.chart)
        key = tuple(sorted(idx))
        sign = 1
        for i in range(len(idx)):
            for j in range(i + 1, len(idx)):
                if idx[i] > idx[j]:
                    sign = -sign
        p = self.terms.get(key)
        if not p:
            return DiffForm.zero(self.chart)
        return DiffForm(self.chart, {(): poly_scale(p, GaussianRational(sign))}, self.den)

    def partial(self, coordinate: str) -> "DiffForm":
        """Partial derivative of a 0-form along a coordinate (via its dx-component)."""
        return exterior_d(self).component("d" + coordinate)

    def evaluate(self, values: Mapping[str, object]) -> Dict[Tuple[str, ...], object]:
        """Numeric coefficients per wedge, given numeric values of the generators."""
        ch = self.chart
        vals = {ch.gen(k): v for k, v in values.items() if k in ch.index}

        def ev(poly: Poly):
            total = 0
            for m, c in poly.items():
                term = complex(c)
                for i, e in m:
                    if i not in vals:
                        raise FormError(f"no numeric value for generator {ch.generators[i].name!r}")
                    term = term * vals[i] ** e
                total = total + term
            return total

        dval = 1
        for k, e in self.den:
            dval = dval * ev(ch.irreducibles[k]) ** e
        return {tuple(ch.one_forms[a] for a in w): ev(p) / dval for w, p in self.terms.items()}

    def __repr__(self):
        return f"DiffForm({self})"

    def __str__(self):
        return format_form(self)


def _same_chart(a: Chart, b: Chart) -> None:
    if a is not b and a != b:
        raise ChartMismatch(f"chart mismatch: {a.name!r} vs {b.name!r}")


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    """Graded-commutative product ``a ^ b``."""
    if not isinstance(a, DiffForm) or not isinstance(b, DiffForm):
        raise TypeError("wedge expects two DiffForms")
    _same_chart(a.chart, b.chart)
    if not a.terms or not b.terms:
        return DiffForm.zero(a.chart)
    acc: Dict[Wedge, Poly] = {}
    for w1, p1 in a.terms.items():
        for w2, p2 in b.terms.items():
            mw = wedge_merge(w1, w2)
            if mw is None:
                continue
            sign, w = mw
            tgt = acc.setdefault(w, {})
            neg = sign < 0
            for m1, c1 in p1.items():
                for m2, c2 in p2.items():
                    m = mono_mul(m1, m2)
                    c = c1 * c2
                    v = tgt.get(m, ZERO) - c if neg else tgt.get(m, ZERO) + c
                    if v:
                        tgt[m] = v
                    else:
                        tgt.pop(m, None)
    den = a.den
    if b.den:
        dd = dict(a.den)
        for k, e in b.den:
            dd[k] = dd.get(k, 0) + e
        den = tuple(sorted(dd.items()))
    if not den:
        return DiffForm(a.chart, {w: p for w, p in acc.items() if p}, (), normalized=True)
    return DiffForm(a.chart, acc, den)


def _numerator_d(chart: Chart, terms: Mapping[Wedge, Poly]) -> DiffForm:
    """d of the den-free form with the given numerator terms."""
    acc: Dict[Wedge, Poly] = {}
    ruled: Dict[int, Dict[Wedge, Poly]] = {}
    for w, p in terms.items():
        for m, c in p.items():
            for i, e in m:
                rest = mono_mul(m, ((i, -1),))
                coeff = c * e
                a = chart.own_diff.get(i)
                if a is not None:
                    mw = wedge_merge((a,), w)
                    if mw is None:
                        continue
                    sign, nw = mw
                    tgt = acc.setdefault(nw, {})
                    v = tgt.get(rest, ZERO) + (coeff if sign > 0 else -coeff)
                    if v:
                        tgt[rest] = v
                    else:
                        tgt.pop(rest, None)
                else:
                    if not chart.has_rule(i):
                        raise MissingDifferentialRule(
                            f"symbol {chart.generators[i].name!r} has no differential rule in chart {chart.name!r}")
                    tgt = ruled.setdefault(i, {}).setdefault(w, {})
                    v = tgt.get(rest, ZERO) + coeff
                    if v:
                        tgt[rest] = v
                    else:
                        tgt.pop(rest, None)
    parts = [DiffForm(chart, acc)]
    for i, by_wedge in ruled.items():
        dg = chart.differential(i)
        for w, p in by_wedge.items():
            if not p:
                continue
            # d(f s^e w) contribution: (e f s^{e-1}) ds ^ w
            parts.append(wedge(wedge(DiffForm(chart, {(): p}), dg), DiffForm(chart, {w: {UNIT: ONE}})))
    return DiffForm.sum(parts, chart)


def exterior_d(a: DiffForm) -> DiffForm:
    """Exterior derivative, using each generator's differential rule."""
    ch = a.chart
    if not a.terms:
        return a
    num_d = _numerator_d(ch, a.terms)
    if not a.den:
        return num_d
    # d(N/D) = dN/D - sum_k e_k dp_k ^ N / (D p_k)
    parts = [DiffForm(ch, num_d.terms, _add_den(num_d.den, a.den))]
    numer = DiffForm(ch, a.terms, (), normalized=True)
    for k, e in a.den:
        dp = ch.irreducible_differential(k)
        t = wedge(dp, numer).scale(-e)
        parts.append(DiffForm(ch, t.terms, _add_den(t.den, _add_den(a.den, ((k, 1),)))))
    return DiffForm.sum(parts, ch)


def _add_den(a: Den, b: Den) -> Den:
    dd = dict(a)
    for k, e in b:
        dd[k] = dd.get(k, 0) + e
    return tuple(sorted((k, e) for k, e in dd.items() if e))


def invert(f: DiffForm) -> DiffForm:
    """Multiplicative inverse of a 0-form within the declared-denominator system."""
    ch = f.chart
    if f.degrees() - {0}:
        raise FormError("only 0-forms can be inverted")
    if not f.terms:
        raise DomainError("inverse of the zero coefficient")
    num = f.terms[()]
    content = monomial_content(num)
    for i, e in content:
        if e > 0 and i not in ch.invertible:
            raise NotInvertible(
                f"non-declared denominator: generator {ch.generators[i].name!r} is not invertible in chart {ch.name!r}")
    rest = poly_shift(num, mono_pow(content, -1))
    exps: Dict[int, int] = {}
    progress = True
    while progress and not poly_is_constant(rest):
        progress = False
        for k, p in enumerate(ch.irreducibles):
            q = poly_divexact(rest, p)
            if q is not None:
                rest = q
                exps[k] = exps.get(k, 0) + 1
                progress = True
                break
    if not poly_is_constant(rest):
        raise NotInvertible(
            f"non-declared denominator: factor {format_poly(ch, rest)} in chart {ch.name!r}")
    c = rest[UNIT]
    numer = poly_scale(_den_poly(ch, dict(f.den)), c.inverse())
    numer = poly_shift(numer, mono_pow(content, -1))
    return DiffForm(ch, {(): numer}, tuple(sorted(exps.items())))


def log_derivative(f: DiffForm) -> DiffForm:
    """``df / f`` for an invertible coefficient ``f``."""
    if f.degrees() - {0}:
        raise FormError("log_derivative expects a 0-form")
    if not f.terms:
        raise DomainError("log_derivative of zero")
    return wedge(exterior_d(f), invert(f))


# ---------------------------------------------------------------------------
# substitutions


class Substitution:
    """Algebra map from forms on ``source`` to forms on ``target``.

    ``images`` assigns a target 0-form to commuting generators of the source;
    generators not listed map to the same-named target generator. 1-form
    symbols owned by a generator map to ``d`` of its image; free 1-form
    symbols may be given explicit images in ``one_form_images``.
    """

    def __init__(self, source: Chart, target: Chart, images: Mapping[str, object] | None = None,
                 one_form_images: Mapping[str, DiffForm] | None = None, *, antilinear: bool = False,
                 name: str = ""):
        self.source = source
        self.target = target
        self.antilinear = antilinear
        self.name = name
        imgs: Dict[int, DiffForm] = {}
        for n, v in (images or {}).items():
            i = source.gen(n)
            if not isinstance(v, DiffForm):
                v = DiffForm.constant(target, v)
            _same_chart(v.chart, target)
            if v.degrees() - {0}:
                raise FormError(f"image of {n!r} must be a 0-form")
            imgs[i] = v
        for i, g in enumerate(source.generators):
            if i not in imgs:
                if g.name not in target.index:
                    raise ChartMismatch(
                        f"substitution {source.name!r} -> {target.name!r} leaves {g.name!r} unassigned")
                imgs[i] = DiffForm.generator(target, g.name)
        self.images = imgs
        self.one_form_images: Dict[int, DiffForm] = {}
        for n, v in (one_form_images or {}).items():
            self.one_form_images[source.one_form_index(n)] = v
        self._dimg: Dict[int, DiffForm] = {}
        self._pow: Dict[Tuple[int, int], DiffForm] = {}
        self._irr: Dict[Tuple[int, int], DiffForm] = {}
        self._wedge: Dict[Wedge, DiffForm] = {}
        self._mono: Dict[Mono, DiffForm] = {}

    def image(self, name: str) -> DiffForm:
        return self.images[self.source.gen(name)]

    def _one_form_image(self, a: int) -> DiffForm:
        if a in self._dimg:
            return self._dimg[a]
        if a in self.one_form_images:
            out = self.one_form_images[a]
        elif a in self.source.diff_owner:
            out = exterior_d(self.images[self.source.diff_owner[a]])
        else:
            out = DiffForm.one_form(self.target, self.source.one_forms[a])
        self._dimg[a] = out
        return out

    def _power(self, i: int, e: int) -> DiffForm:
        key = (i, e)
        if key not in self._pow:
            base = self.images[i]
            if e < 0:
                try:
                    inv = invert(base)
                except DomainError:
                    raise NotInvertible(
                        f"substitution sends invertible {self.source.generators[i].name!r} to zero") from None
                self._pow[key] = inv ** (-e)
            else:
                self._pow[key] = base ** e
        return self._pow[key]

    def _mono_image(self, m: Mono) -> DiffForm:
        if m not in self._mono:
            out = DiffForm.constant(self.target, 1)
            for i, e in m:
                out = out * self._power(i, e)
            self._mono[m] = out
        return self._mono[m]

    def _poly_image(self, p: Poly) -> DiffForm:
        parts = []
        for m, c in p.items():
            if self.antilinear:
                c = c.conjugate()
            parts.append(self._mono_image(m).scale(c))
        return DiffForm.sum(parts, self.target)

    def _wedge_image(self, w: Wedge) -> DiffForm:
        if w not in self._wedge:
            out = DiffForm.constant(self.target, 1)
            for a in w:
                out = wedge(out, self._one_form_image(a))
                if not out.terms:
                    break
            self._wedge[w] = out
        return self._wedge[w]

    def _den_image(self, den: Den) -> DiffForm:
        out = DiffForm.constant(self.target, 1)
        for k, e in den:
            key = (k, e)
            if key not in self._irr:
                p = self.source.irreducibles[k]
                img = self._poly_image(p)
                try:
                    inv = invert(img)
                except DomainError:
                    raise NotInvertible(
                        f"substitution sends irreducible {self.source.irreducible_names[k]!r} to zero") from None
                self._irr[key] = inv ** e
            out = out * self._irr[key]
        return out

    def __call__(self, a: DiffForm) -> DiffForm:
        _same_chart(a.chart, self.source)
        parts = []
        for w, p in a.terms.items():
            wi = self._wedge_image(w)
            if not wi.terms:
                continue
            parts.append(wedge(self._poly_image(p), wi))
        out = DiffForm.sum(parts, self.target)
        if a.den and out.terms:
            out = out * self._den_image(a.den)
        return out

    def then(self, other: "Substitution") -> "Substitution":
        """Substitution equal to applying ``self`` first, then ``other``."""
        _same_chart(self.target, other.source)
        images = {g.name: other(self.images[i]) for i, g in enumerate(self.source.generators)}
        ofi = {self.source.one_forms[a]: other(v) for a, v in self.one_form_images.items()}
        return Substitution(self.source, other.target, images, ofi,
                            antilinear=self.antilinear ^ other.antilinear)


def pullback(g: Substitution, a: DiffForm) -> DiffForm:
    return g(a)


def identity_substitution(chart: Chart) -> Substitution:
    return Substitution(chart, chart, {})


def inclusion(source: Chart, target: Chart) -> Substitution:
    return Substitution(source, target, {})


def conjugation(chart: Chart) -> Substitution:
    images = {}
    for i, g in enumerate(chart.generators):
        j, s = chart.conj[i]
        images[g.name] = DiffForm.generator(chart, chart.generators[j].name, s)
    return Substitution(chart, chart, images, antilinear=True)


def conjugate(a: DiffForm) -> DiffForm:
    sub = a.chart.meta.get("_conj")
    if sub is None:
        sub = conjugation(a.chart)
        a.chart.meta["_conj"] = sub
    return sub(a)


# ---------------------------------------------------------------------------
# vector fields


class VectorField:
    """Derivation given by its values on the generators owning 1-forms."""

    def __init__(self, chart: Chart, components: Mapping[str, object]):
        self.chart = chart
        comps: Dict[int, DiffForm] = {}
        for n, v in components.items():
            i = chart.gen(n)
            if i not in chart.own_diff:
                raise ChartError(f"vector field component on {n!r}: generator has no own 1-form")
            if not isinstance(v, DiffForm):
                v = DiffForm.constant(chart, v)
            _same_chart(v.chart, chart)
            comps[chart.own_diff[i]] = v
        self.components = comps

    def __call__(self, f: DiffForm) -> DiffForm:
        """Directional derivative of a 0-form."""
        return interior_product(self, exterior_d(f))


def interior_product(v: VectorField, a: DiffForm) -> DiffForm:
    """Contraction; an antiderivation of degree -1."""
    _same_chart(v.chart, a.chart)
    ch = a.chart
    parts = []
    for w, p in a.terms.items():
        for j, x in enumerate(w):
            comp = v.components.get(x)
            if comp is None or not comp.terms:
                continue
            rest = w[:j] + w[j + 1:]
            sign = -1 if j & 1 else 1
            parts.append(wedge(comp, DiffForm(ch, {rest: poly_scale(p, GaussianRational(sign))})))
    out = DiffForm.sum(parts, ch)
    if a.den and out.terms:
        out = DiffForm(ch, out.terms, _add_den(out.den, a.den))
    return out


def lie_derivative(v: VectorField, a: DiffForm) -> DiffForm:
    return interior_product(v, exterior_d(a)) + exterior_d(interior_product(v, a))


# ---------------------------------------------------------------------------
# formatting


def format_mono(chart: Chart, m: Mono) -> str:
    parts = []
    for i, e in m:
        n = chart.generators[i].name
        parts.append(n if e == 1 else f"{n}^{e}")
    return "*".join(parts)


def format_poly(chart: Chart, p: Poly) -> str:
    if not p:
        return "0"
    items = sorted(p.items(), key=lambda kv: kv[0])
    out = []
    for m, c in items:
        ms = format_mono(chart, m)
        if not ms:
            out.append(str(c))
        elif c == 1:
            out.append(ms)
        elif c == -1:
            out.append("-" + ms)
        else:
            out.append(f"{c}*{ms}")
    return " + ".join(out).replace("+ -", "- ")


def format_form(a: DiffForm) -> str:
    ch = a.chart
    if not a.terms:
        return "0"
    out = []
    for w in sorted(a.terms, key=lambda w: (len(w), w)):
        ps = format_poly(ch, a.terms[w])
        ws = "^".join(ch.one_forms[x] for x in w)
        if not ws:
            out.append(f"({ps})")
        else:
            out.append(f"({ps})*{ws}")
    body = " + ".join(out)
    if a.den:
        ds = "*".join(f"({format_poly(ch, ch.irreducibles[k])})" + (f"^{e}" if e > 1 else "")
                      for k, e in a.den)
        body = f"[{body}] / {ds}"
    return body
