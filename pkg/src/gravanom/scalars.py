"""Exact scalars: Gaussian rationals and finite sums of powers of pi."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Union

from gmpy2 import mpq

Number = Union[int, Fraction, "GaussianRational"]


def _q(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, (int, Rational)):
        return mpq(x)
    if isinstance(x, str):
        return mpq(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _fmt_q(x: mpq) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class GaussianRational:
    """Element of Q(i), stored as two rationals in lowest terms."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            self.re, self.im = re.re, re.im + _q(im)
            return
        if isinstance(re, complex):
            raise TypeError("floating point values are not allowed in exact coefficients")
        self.re = _q(re)
        self.im = _q(im)

    @staticmethod
    def _make(re: mpq, im: mpq) -> "GaussianRational":
        g = object.__new__(GaussianRational)
        g.re = re
        g.im = im
        return g

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return cls(x)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            other = GaussianRational.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._make(a * c, b)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational._make(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    # comparison -------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction, Rational)):
            return self.im == 0 and self.re == _q(other)
        return NotImplemented

    def __hash__(self):
        return hash((int(self.re.numerator), int(self.re.denominator),
                     int(self.im.numerator), int(self.im.denominator)))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussianRational({_fmt_q(self.re)}, {_fmt_q(self.im)})"

    def __str__(self):
        if not self.im:
            return _fmt_q(self.re)
        if not self.re:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{_fmt_q(self.im)}*i"
        sign = "+" if self.im > 0 else "-"
        im = abs(self.im)
        ims = "i" if im == 1 else f"{_fmt_q(im)}*i"
        return f"({_fmt_q(self.re)}{sign}{ims})"

    def to_pair(self) -> tuple:
        return _fmt_q(self.re), _fmt_q(self.im)


ZERO = GaussianRational._make(mpq(0), mpq(0))
ONE = GaussianRational._make(mpq(1), mpq(0))
I = GaussianRational._make(mpq(0), mpq(1))


def gq(re=0, im=0) -> GaussianRational:
    return GaussianRational(re, im)


class PiScalar:
    """Exact scalar sum_k q_k * pi**k with Gaussian-rational q_k."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Number] | None = None):
        clean: Dict[int, GaussianRational] = {}
        for k, v in (terms or {}).items():
            if k < 0:
                raise ValueError("pi powers must be nonnegative")
            v = GaussianRational.coerce(v)
            if v:
                clean[int(k)] = v
        self.terms = clean

    @classmethod
    def from_rational(cls, q, power: int = 0) -> "PiScalar":
        return cls({power: q})

    def __add__(self, other):
        other = _as_pi(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return PiScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return PiScalar({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_pi(other))

    def __rsub__(self, other):
        return _as_pi(other) - self

    def __mul__(self, other):
        other = _as_pi(other)
        out: Dict[int, GaussianRational] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] = out.get(a + b, ZERO) + x * y
        return PiScalar(out)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            other = _as_pi(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __complex__(self):
        return sum((complex(v) * math.pi ** k for k, v in self.terms.items()), 0j)

    def approx(self) -> complex:
        return complex(self)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            if k == 0:
                parts.append(str(c))
                continue
            pk = "pi" if k == 1 else f"pi^{k}"
            if c == 1:
                parts.append(pk)
            elif c == -1:
                parts.append(f"-{pk}")
            else:
                parts.append(f"{c}*{pk}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"PiScalar({str(self)!r})"


def _as_pi(x) -> PiScalar:
    if isinstance(x, PiScalar):
        return x
    if isinstance(x, (int, Fraction, GaussianRational, Rational)):
        return PiScalar({0: x})
    raise TypeError(f"cannot convert {x!r} to PiScalar")


PI = PiScalar({1: 1})


def pi_power(k: int, coeff: Number = 1) -> PiScalar:
    return PiScalar({k: coeff})


def sum_pi(items: Iterable[PiScalar]) -> PiScalar:
    out = PiScalar()
    for x in items:
        out = out + x
    return out
