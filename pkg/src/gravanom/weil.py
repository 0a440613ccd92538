"""Truncated Weil algebra W_n of gl_n and its SO_n-relative structure.

Generators are ``omega[i,j]`` (degree 1, anticommuting) and ``Omega[i,j]``
(degree 2, commuting). A monomial is stored as ``(omegas, Omegas)`` where
``omegas`` is a strictly increasing tuple of flat indices ``i*n + j`` and
``Omegas`` is a sorted tuple of flat indices with repetition. Indices in the
public constructors are 1-based.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Dict, List, Optional, Tuple

from .forms import wedge_merge
from .scalars import ONE, ZERO, GaussianRational

WKey = Tuple[Tuple[int, ...], Tuple[int, ...]]


class WeilError(ValueError):
    pass


def _perm_sign(p: Tuple[int, ...]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


class WeilElement:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[WKey, GaussianRational] | None = None):
        if n < 1:
            raise WeilError("matrix size must be positive")
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if v and len(k[1]) <= n}

    @classmethod
    def zero(cls, n: int) -> "WeilElement":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "WeilElement":
        return cls(n, {((), ()): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {len(o) + 2 * len(O) for o, O in self.terms}

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise WeilError(f"element is not homogeneous (degrees {sorted(ds)})")
        return ds.pop() if ds else 0

    def omega_count_max(self) -> int:
        return max((len(O) for _, O in self.terms), default=0)

    def _check(self, other: "WeilElement"):
        if self.n != other.n:
            raise WeilError(f"size mismatch: W_{self.n} vs W_{other.n}")

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return WeilElement(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return WeilElement(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def _lift(self, other) -> "WeilElement":
        if isinstance(other, WeilElement):
            self._check(other)
            return other
        return WeilElement(self.n, {((), ()): GaussianRational.coerce(other)})

    def scale(self, c) -> "WeilElement":
        c = GaussianRational.coerce(c)
        return WeilElement(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, WeilElement):
            return self.scale(other)
        self._check(other)
        out: Dict[WKey, GaussianRational] = {}
        n = self.n
        for (o1, O1), c1 in self.terms.items():
            for (o2, O2), c2 in other.terms.items():
                if len(O1) + len(O2) > n:
                    continue
                mw = wedge_merge(o1, o2)
                if mw is None:
                    continue
                sign, o = mw
                key = (o, tuple(sorted(O1 + O2)))
                c = c1 * c2
                out[key] = out.get(key, ZERO) + (c if sign > 0 else -c)
        return WeilElement(n, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, WeilElement):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def d(self) -> "WeilElement":
        return d_weil(self)

    def __repr__(self):
        return f"WeilElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        n = self.n
        parts = []
        for (o, O) in sorted(self.terms):
            c = self.terms[(o, O)]
            gens = [f"w{a // n + 1}{a % n + 1}" for a in o] + [f"W{a // n + 1}{a % n + 1}" for a in O]
            g = "*".join(gens)
            if not g:
                parts.append(str(c))
            elif c == 1:
                parts.append(g)
            elif c == -1:
                parts.append("-" + g)
            else:
                parts.append(f"{c}*{g}")
        return " + ".join(parts).replace("+ -", "- ")


def _idx(n: int, i: int, j: int) -> int:
    if not (1 <= i <= n and 1 <= j <= n):
        raise WeilError(f"index ({i},{j}) out of range for n={n}")
    return (i - 1) * n + (j - 1)


def omega(n: int, i: int, j: int) -> WeilElement:
    return WeilElement(n, {((_idx(n, i, j),), ()): ONE})


def Omega(n: int, i: int, j: int) -> WeilElement:
    return WeilElement(n, {((), (_idx(n, i, j),)): ONE})


@lru_cache(maxsize=None)
def _d_gen(n: int, kind: str, a: int) -> WeilElement:
    i, j = divmod(a, n)
    if kind == "omega":
        out = Omega(n, i + 1, j + 1)
        for k in range(1, n + 1):
            out = out - omega(n, i + 1, k) * omega(n, k, j + 1)
        return out
    out = WeilElement.zero(n)
    for k in range(1, n + 1):
        out = out + Omega(n, i + 1, k) * omega(n, k, j + 1) - omega(n, i + 1, k) * Omega(n, k, j + 1)
    return out


@lru_cache(maxsize=20_000)
def _d_mono(n: int, key: WKey) -> WeilElement:
    o, O = key
    out = WeilElement.zero(n)
    for p, a in enumerate(o):
        left = WeilElement(n, {(o[:p], ()): ONE})
        right = WeilElement(n, {(o[p + 1:], O): ONE})
        out = out + (left * _d_gen(n, "omega", a) * right).scale(-1 if p & 1 else 1)
    sign = -1 if len(o) & 1 else 1
    left = WeilElement(n, {(o, ()): ONE})
    for p, a in enumerate(O):
        # the remaining Omega factors are even and commute past d(Omega)
        right = WeilElement(n, {((), O[:p] + O[p + 1:]): ONE})
        out = out + (left * _d_gen(n, "Omega", a) * right).scale(sign)
    return out


def d_weil(a: WeilElement) -> WeilElement:
    """The Weil differential, extended as an antiderivation of degree +1."""
    out = WeilElement.zero(a.n)
    for key, c in a.terms.items():
        out = out + _d_mono(a.n, key).scale(c)
    return out


def _principal_minors(n: int, k: int, entry) -> WeilElement:
    out = WeilElement.zero(n)
    for S in combinations(range(n), k):
        for perm in permutations(range(k)):
            term = WeilElement.one(n)
            for r, c in enumerate(perm):
                term = term * entry(S[r], S[c])
            out = out + term.scale(_perm_sign(perm))
    return out


def chern_class(k: int, n: int) -> WeilElement:
    """Degree-2k part of det(1 + Omega): sum of k-by-k principal minors."""
    if not 1 <= k <= n:
        raise WeilError(f"chern_class needs 1 <= k <= n, got k={k}, n={n}")
    return _principal_minors(n, k, lambda r, c: Omega(n, r + 1, c + 1))


def pontrjagin_class(i: int, n: int) -> WeilElement:
    if i < 1 or 2 * i > n:
        raise WeilError(f"pontrjagin_class needs 1 <= 2i <= n, got i={i}, n={n}")
    return chern_class(2 * i, n)


# transgressions ------------------------------------------------------------

SPoly = Dict[int, WeilElement]  # power of the path parameter s -> coefficient


def _sp_mul(a: SPoly, b: SPoly, n: int) -> SPoly:
    out: SPoly = {}
    for p, x in a.items():
        for q, y in b.items():
            z = x * y
            if z.terms:
                out[p + q] = out.get(p + q, WeilElement.zero(n)) + z
    return out


def _sp_add(a: SPoly, b: SPoly, n: int) -> SPoly:
    out = dict(a)
    for p, y in b.items():
        out[p] = out.get(p, WeilElement.zero(n)) + y
    return out


def transgression(k: int, n: int, *, relative: bool = True) -> WeilElement:
    """Element u_k of degree 2k-1 with d_W u_k = c_k (k odd).

    Chern-Simons construction along a path of connections ``A_s`` with
    ``A_1 = omega``: ``u_k = int_0^1 k P_k(dA_s/ds, F_s, ..., F_s) ds`` where
    ``F_s = d_W A_s + A_s A_s`` and ``P_k`` polarizes ``c_k``. The relative
    path starts at the antisymmetric part of omega, which makes the result
    SO_n-basic; the absolute path ``A_s = s omega`` starts at zero.
    """
    if k < 1 or k > n or k % 2 == 0:
        raise WeilError(f"transgression needs odd k with 1 <= k <= n, got k={k}, n={n}")
    half = GaussianRational(Fraction(1, 2))
    A0: List[List[WeilElement]] = []
    A1: List[List[WeilElement]] = []
    for i in range(1, n + 1):
        r0, r1 = [], []
        for j in range(1, n + 1):
            if relative:
                r0.append((omega(n, i, j) - omega(n, j, i)).scale(half))
                r1.append((omega(n, i, j) + omega(n, j, i)).scale(half))
            else:
                r0.append(WeilElement.zero(n))
                r1.append(omega(n, i, j))
        A0.append(r0)
        A1.append(r1)
    # A_s = A0 + s A1 as s-polynomials
    A = [[{0: A0[i][j], 1: A1[i][j]} for j in range(n)] for i in range(n)]
    F = []
    for i in range(n):
        row = []
        for j in range(n):
            f: SPoly = {p: d_weil(x) for p, x in A[i][j].items()}
            for m in range(n):
                f = _sp_add(f, _sp_mul(A[i][m], A[m][j], n), n)
            row.append({p: x for p, x in f.items() if x.terms})
        F.append(row)
    total: SPoly = {}
    for S in combinations(range(n), k):
        for perm in permutations(range(k)):
            sgn = _perm_sign(perm)
            for p in range(k):
                term: SPoly = {0: A1[S[p]][S[perm[p]]].scale(sgn)}
                for r in range(k):
                    if r != p:
                        term = _sp_mul(term, F[S[r]][S[perm[r]]], n)
                total = _sp_add(total, term, n)
    out = WeilElement.zero(n)
    for p, x in total.items():
        out = out + x.scale(Fraction(1, p + 1))
    return out


# SO_n basicness --------------------------------------------------------------


class LieMatrix:
    """n x n matrix with Gaussian-rational entries."""

    def __init__(self, entries):
        self.entries = tuple(tuple(GaussianRational.coerce(x) for x in row) for row in entries)
        self.n = len(self.entries)
        if any(len(row) != self.n for row in self.entries):
            raise WeilError("LieMatrix must be square")

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def is_antisymmetric(self) -> bool:
        return all(self.entries[i][j] == -self.entries[j][i] for i in range(self.n) for j in range(self.n))

    def __repr__(self):
        return "LieMatrix(" + str([[str(x) for x in row] for row in self.entries]) + ")"


def so_basis(n: int) -> List[LieMatrix]:
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            m = [[0] * n for _ in range(n)]
            m[a][b] = 1
            m[b][a] = -1
            out.append(LieMatrix(m))
    return out


def contraction(A: LieMatrix, a: WeilElement) -> WeilElement:
    """Antiderivation with iota omega = A, iota Omega = 0."""
    n = a.n
    out: Dict[WKey, GaussianRational] = {}
    for (o, O), c in a.terms.items():
        for p, x in enumerate(o):
            val = A[divmod(x, n)]
            if not val:
                continue
            key = (o[:p] + o[p + 1:], O)
            v = c * val
            out[key] = out.get(key, ZERO) + (-v if p & 1 else v)
    return WeilElement(n, out)


def lie_derivative(A: LieMatrix, a: WeilElement) -> WeilElement:
    return contraction(A, d_weil(a)) + d_weil(contraction(A, a))


def is_so_basic(a: WeilElement) -> Tuple[bool, Optional[Tuple[LieMatrix, str, WeilElement]]]:
    """Check iota_A a = 0 and L_A a = 0 on the standard basis of so_n.

    Returns ``(True, None)`` or ``(False, (A, which, residual))``.
    """
    for A in so_basis(a.n):
        r = contraction(A, a)
        if not r.is_zero():
            return False, (A, "contraction", r)
        r = lie_derivative(A, a)
        if not r.is_zero():
            return False, (A, "lie", r)
    return True, None


def random_weil(rng, n: int, degree: int, terms: int = 4) -> WeilElement:
    """Random homogeneous element of the given degree with small coefficients."""
    out = WeilElement.zero(n)
    for _ in range(terms):
        n_Omega = rng.randint(0, degree // 2)
        n_omega = degree - 2 * n_Omega
        term = WeilElement.one(n)
        for _ in range(n_omega):
            term = term * omega(n, rng.randint(1, n), rng.randint(1, n))
        for _ in range(n_Omega):
            term = term * Omega(n, rng.randint(1, n), rng.randint(1, n))
        out = out + term.scale(GaussianRational(rng.randint(-3, 3), rng.randint(-1, 1)))
    return out
