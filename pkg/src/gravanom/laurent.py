"""Sparse Laurent polynomials over Q(i).

A monomial is a sorted tuple of ``(generator_index, exponent)`` pairs with
nonzero exponents; a polynomial is a dict from monomial to
:class:`GaussianRational`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Optional, Tuple

from .scalars import ONE, ZERO, GaussianRational

Mono = Tuple[Tuple[int, int], ...]
Poly = Dict[Mono, GaussianRational]

UNIT: Mono = ()


@lru_cache(maxsize=200_000)
def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        v = d.get(k, 0) + e
        if v:
            d[k] = v
        else:
            del d[k]
    return tuple(sorted(d.items()))


def mono_pow(a: Mono, k: int) -> Mono:
    return tuple((i, e * k) for i, e in a) if k else UNIT


def mono_div(a: Mono, b: Mono) -> Mono:
    return mono_mul(a, mono_pow(b, -1))


def mono_degree_in(a: Mono, idx: int) -> int:
    for i, e in a:
        if i == idx:
            return e
    return 0


def poly_add_into(acc: Poly, p: Poly, scale: GaussianRational = ONE) -> None:
    for m, c in p.items():
        v = acc.get(m, ZERO) + (c * scale if scale is not ONE else c)
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = mono_mul(m1, m2)
            v = out.get(m, ZERO) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def poly_scale(p: Poly, c: GaussianRational) -> Poly:
    if not c:
        return {}
    return {m: v * c for m, v in p.items()}


def poly_shift(p: Poly, m: Mono) -> Poly:
    return {mono_mul(k, m): v for k, v in p.items()}


def poly_pow(p: Poly, k: int) -> Poly:
    out: Poly = {UNIT: ONE}
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def poly_min_exponents(p: Poly) -> Dict[int, int]:
    """Per-variable minimum exponent across the terms of ``p`` (absent = 0)."""
    variables = {i for m in p for i, _ in m}
    mins = {}
    for v in variables:
        mins[v] = min(mono_degree_in(m, v) for m in p)
    return mins


def monomial_content(p: Poly) -> Mono:
    """Largest Laurent monomial dividing every term of ``p``."""
    return tuple(sorted((v, e) for v, e in poly_min_exponents(p).items() if e))


def _dense(m: Mono, order: Tuple[int, ...]) -> Tuple[int, ...]:
    d = dict(m)
    return tuple(d.get(i, 0) for i in order)


def _sparse(t: Tuple[int, ...], order: Tuple[int, ...]) -> Mono:
    return tuple((i, e) for i, e in zip(order, t) if e)


def poly_divexact(p: Poly, q: Poly) -> Optional[Poly]:
    """Exact quotient ``p / q`` in the Laurent ring, or ``None``.

    ``q`` must be a genuine polynomial without monomial content. Both inputs
    are shifted to nonnegative exponents and divided in lex order; the
    remainder is zero iff ``q`` divides ``p`` because a single generator is a
    Groebner basis of its ideal.
    """
    if not p:
        return {}
    content = monomial_content(p)
    p0 = poly_shift(p, mono_pow(content, -1))
    order = tuple(sorted({i for m in p0 for i, _ in m} | {i for m in q for i, _ in m}))
    qd = {_dense(m, order): c for m, c in q.items()}
    lt = max(qd)
    lc_inv = qd[lt].inverse()
    r = {_dense(m, order): c for m, c in p0.items()}
    quot: Dict[Tuple[int, ...], GaussianRational] = {}
    while r:
        m = max(r)
        if any(a < b for a, b in zip(m, lt)):
            return None
        qm = tuple(a - b for a, b in zip(m, lt))
        c = r[m] * lc_inv
        quot[qm] = c
        for mq, cq in qd.items():
            k = tuple(a + b for a, b in zip(mq, qm))
            v = r.get(k, ZERO) - c * cq
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    return poly_shift({_sparse(k, order): c for k, c in quot.items()}, content)


def poly_is_constant(p: Poly) -> bool:
    return all(m == UNIT for m in p)


def poly_key(p: Poly):
    return frozenset(p.items())
