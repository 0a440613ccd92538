"""S-expression text format for charts, coefficients, forms and Weil elements.

Grammar (whitespace-insensitive)::

    scalar  := "RE" "IM"                       rationals as strings, e.g. "1/2" "0"
    mono    := ((SYM EXP) ...)
    poly    := (poly (m MONO RE IM) ...)
    form    := (form CHART (den (IRR EXP) ...) (term (ONEFORM ...) POLY) ...)
    chart   := (chart NAME (gen KIND NAME [ANGLE]) ... (free SYM ...)
                (invertible SYM ...) (irreducible NAME POLY) ...
                (conj A B SIGN) ... (rule SYM FORM|const) ... (real SYM ...))
    weil    := (weil N (term ("W-omega[i,j]" ... "W-Omega[i,j]" ...) RE IM) ...)
    diffeo  := (diffeo NAME (forward FORM) (inverse FORM))    z-images, 0-forms

Symbols ``t`` and ``nil`` are ordinary names here.
"""

from __future__ import annotations

from typing import Dict, List

import sexpdata
from sexpdata import Symbol

from .chart import Chart, ChartError, Generator
from .laurent import Poly
from .scalars import GaussianRational


class ParseError(ValueError):
    pass


def _loads(text: str):
    try:
        return sexpdata.loads(text, true=None, false=None, nil=None)
    except Exception as exc:  # sexpdata raises several exception types
        raise ParseError(f"malformed s-expression: {exc}") from None


def _sym(x) -> str:
    if isinstance(x, Symbol):
        return x.value()
    if isinstance(x, str):
        return x
    raise ParseError(f"expected a symbol, got {x!r}")


def _head(x) -> str:
    if not isinstance(x, list) or not x:
        raise ParseError(f"expected a non-empty list, got {x!r}")
    return _sym(x[0])


def _dump_scalar(c: GaussianRational) -> list:
    return list(c.to_pair())


def _load_scalar(re, im) -> GaussianRational:
    try:
        return GaussianRational(str(re), str(im))
    except (ValueError, TypeError):
        raise ParseError(f"bad rational pair {re!r} {im!r}") from None


# polynomials ---------------------------------------------------------------

def dump_poly(chart: Chart, p: Poly) -> list:
    out: list = [Symbol("poly")]
    for m in sorted(p):
        mono = [[Symbol(chart.generators[i].name), e] for i, e in m]
        out.append([Symbol("m"), mono] + _dump_scalar(p[m]))
    return out


def load_poly(chart: Chart, x) -> Poly:
    if _head(x) != "poly":
        raise ParseError("expected (poly ...)")
    out: Poly = {}
    for item in x[1:]:
        if _head(item) != "m" or len(item) != 4:
            raise ParseError(f"bad monomial entry {item!r}")
        mono = []
        for pair in item[1]:
            name, e = _sym(pair[0]), pair[1]
            if not isinstance(e, int):
                raise ParseError(f"exponent must be an integer, got {e!r}")
            mono.append((chart.gen(name), e))
        m = tuple(sorted((i, e) for i, e in mono if e))
        c = _load_scalar(item[2], item[3])
        if c:
            out[m] = out.get(m, GaussianRational()) + c
    return {m: c for m, c in out.items() if c}


# forms ---------------------------------------------------------------------

def dump_form_sexp(a) -> list:
    ch = a.chart
    out: list = [Symbol("form"), Symbol(ch.name)]
    out.append([Symbol("den")] + [[Symbol(ch.irreducible_names[k]), e] for k, e in a.den])
    for w in sorted(a.terms, key=lambda w: (len(w), w)):
        out.append([Symbol("term"), [Symbol(ch.one_forms[x]) for x in w], dump_poly(ch, a.terms[w])])
    return out


def dumps_form(a) -> str:
    return sexpdata.dumps(dump_form_sexp(a))


def load_form_sexp(x, chart: Chart):
    from .forms import DiffForm, wedge_merge

    if _head(x) != "form":
        raise ParseError("expected (form ...)")
    if len(x) < 3:
        raise ParseError("form needs a chart name and a den clause")
    if _sym(x[1]) != chart.name:
        raise ChartError(f"form declared on chart {_sym(x[1])!r}, loading into {chart.name!r}")
    if _head(x[2]) != "den":
        raise ParseError("expected (den ...)")
    den = []
    for pair in x[2][1:]:
        name = _sym(pair[0])
        if name not in chart.irr_index:
            raise ParseError(f"undeclared irreducible {name!r}")
        den.append((chart.irr_index[name], int(pair[1])))
    parts = []
    for term in x[3:]:
        if _head(term) != "term":
            raise ParseError(f"expected (term ...), got {term!r}")
        idx = [chart.one_form_index(_sym(s)) for s in term[1]]
        poly = load_poly(chart, term[2])
        sign, w = 1, ()
        for a in idx:
            mw = wedge_merge(w, (a,))
            if mw is None:
                sign = 0
                break
            s, w = mw
            sign *= s
        if sign:
            parts.append(DiffForm(chart, {w: poly}) * sign)
    num = DiffForm.sum(parts, chart)
    return DiffForm(chart, num.terms, _merge_den(num.den, den))


def _merge_den(a, b):
    d: Dict[int, int] = dict(a)
    for k, e in b:
        d[k] = d.get(k, 0) + e
    return tuple(sorted((k, e) for k, e in d.items() if e))


def loads_form(text: str, chart: Chart):
    return load_form_sexp(_loads(text), chart)


# charts --------------------------------------------------------------------

def dump_chart_sexp(chart: Chart) -> list:
    out: list = [Symbol("chart"), Symbol(chart.name)]
    for g in chart.generators:
        item = [Symbol("gen"), Symbol(g.kind), Symbol(g.name)]
        if g.angle:
            item.append(Symbol(g.angle))
        out.append(item)
    free = [f for f in chart.one_forms if chart.aindex[f] not in chart.diff_owner]
    if free:
        out.append([Symbol("free")] + [Symbol(f) for f in free])
    inv = sorted(i for i in chart.invertible if chart.generators[i].kind != "circle")
    if inv:
        out.append([Symbol("invertible")] + [Symbol(chart.generators[i].name) for i in inv])
    for n, p in zip(chart.irreducible_names, chart.irreducibles):
        out.append([Symbol("irreducible"), Symbol(n), dump_poly(chart, p)])
    for a in sorted(chart.conj):
        b, s = chart.conj[a]
        g = chart.generators[a]
        default = (a, -1 if g.kind == "circle" else 1)
        if (b, s) != default:
            out.append([Symbol("conj"), Symbol(g.name), Symbol(chart.generators[b].name), s])
    for g in chart.generators:
        if g.kind != "auxiliary":
            continue
        spec = chart.rule_spec(g.name)
        if spec == "missing":
            continue
        if spec is None:
            out.append([Symbol("rule"), Symbol(g.name), Symbol("const")])
        else:
            out.append([Symbol("rule"), Symbol(g.name), dump_form_sexp(chart.differential(chart.gen(g.name)))])
    if chart.real:
        out.append([Symbol("real")] + [Symbol(chart.generators[i].name) for i in sorted(chart.real)])
    return out


def dumps_chart(chart: Chart) -> str:
    return sexpdata.dumps(dump_chart_sexp(chart))


def load_chart_sexp(x) -> Chart:
    if _head(x) != "chart":
        raise ParseError("expected (chart ...)")
    name = _sym(x[1])
    gens: List[Generator] = []
    free: List[str] = []
    inv: List[str] = []
    irr = []
    conj = {}
    rules = {}
    real: List[str] = []
    for item in x[2:]:
        h = _head(item)
        if h == "gen":
            kind, gname = _sym(item[1]), _sym(item[2])
            angle = _sym(item[3]) if len(item) > 3 else None
            gens.append(Generator(gname, kind, angle))
        elif h == "free":
            free += [_sym(s) for s in item[1:]]
        elif h == "invertible":
            inv += [_sym(s) for s in item[1:]]
        elif h == "irreducible":
            irr.append((_sym(item[1]), item[2]))
        elif h == "conj":
            conj[_sym(item[1])] = (_sym(item[2]), int(item[3]))
        elif h == "rule":
            val = item[2]
            rules[_sym(item[1])] = None if (isinstance(val, Symbol) and val.value() == "const") else sexpdata.dumps(val)
        elif h == "real":
            real += [_sym(s) for s in item[1:]]
        else:
            raise ParseError(f"unknown chart clause {h!r}")
    # irreducibles reference generator names; parse them with a bare chart first
    bare = Chart(name, gens, free_one_forms=free)
    irr_specs = []
    for n, p in irr:
        poly = load_poly(bare, p)
        irr_specs.append((n, {tuple((bare.generators[i].name, e) for i, e in m): c for m, c in poly.items()}))
    return Chart(name, gens, free_one_forms=free, invertible=inv, irreducibles=irr_specs,
                 conjugates=conj, rules=rules, real=real)


def loads_chart(text: str) -> Chart:
    return load_chart_sexp(_loads(text))


# Weil elements -------------------------------------------------------------

def dumps_weil(a) -> str:
    out: list = [Symbol("weil"), a.n]
    for key in sorted(a.terms):
        omegas, Omegas = key
        tags = [f"W-omega[{x // a.n + 1},{x % a.n + 1}]" for x in omegas] + \
               [f"W-Omega[{x // a.n + 1},{x % a.n + 1}]" for x in Omegas]
        out.append([Symbol("term"), tags] + _dump_scalar(a.terms[key]))
    return sexpdata.dumps(out)


def loads_weil(text: str):
    from .weil import WeilElement, omega, Omega

    x = _loads(text)
    if _head(x) != "weil":
        raise ParseError("expected (weil ...)")
    n = x[1]
    if not isinstance(n, int) or n < 1:
        raise ParseError(f"bad Weil size {n!r}")
    total = WeilElement.zero(n)
    for term in x[2:]:
        if _head(term) != "term":
            raise ParseError("expected (term ...)")
        prod = WeilElement.one(n)
        for tag in term[1]:
            tag = _sym(tag)
            for prefix, ctor in (("W-omega[", omega), ("W-Omega[", Omega)):
                if tag.startswith(prefix) and tag.endswith("]"):
                    i, j = (int(s) for s in tag[len(prefix):-1].split(","))
                    prod = prod * ctor(n, i, j)
                    break
            else:
                raise ParseError(f"unknown Weil generator tag {tag!r}")
        total = total + prod * _load_scalar(term[2], term[3])
    return total


# diffeomorphism generators ---------------------------------------------------

def dumps_diffeo(g) -> str:
    return sexpdata.dumps([Symbol("diffeo"), Symbol(g.name), [Symbol("forward"), dump_form_sexp(g.forward)],
                           [Symbol("inverse"), dump_form_sexp(g.inverse)]])


def loads_diffeo(text: str, system=None):
    """Parse a generator declaration; the forms give z o g and z o g^-1."""
    from .equivariant import Diffeo
    from .jets import holo_jet

    system = system or holo_jet()
    x = _loads(text)
    if _head(x) != "diffeo" or len(x) != 4:
        raise ParseError("expected (diffeo NAME (forward FORM) (inverse FORM))")
    clauses = {}
    for c in x[2:]:
        h = _head(c)
        if h not in ("forward", "inverse") or len(c) != 2:
            raise ParseError(f"expected (forward FORM) or (inverse FORM), got {c!r}")
        clauses[h] = load_form_sexp(c[1], system.chart)
    if len(clauses) != 2:
        raise ParseError("diffeo needs both a forward and an inverse clause")
    return Diffeo(_sym(x[1]), clauses["forward"], clauses["inverse"], system)
