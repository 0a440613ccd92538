"""Verification suites and their reports."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from . import equivariant as eq
from . import homology as hom
from .forms import DiffForm, log_derivative
from .jets import full_jet, holo_jet, JetChart, p1_identity_check, so2_basic_check, chern_weil
from .sampling import random_base_form, random_chain_element, random_group_cochain, random_rule, random_word
from .scalars import GaussianRational, PiScalar
from .sexpr import dumps_form, dumps_weil
from .weil import (Omega, WeilElement, chern_class, d_weil, is_so_basic, omega, random_weil,
                   transgression)

SUITES = ("bicomplex", "weil", "chern-weil", "theorem4", "ghost", "cycle", "stokes")


@dataclass
class CheckResult:
    id: str
    anchor: str
    status: str
    residual: Optional[str] = None
    ms: float = 0.0

    def to_json(self, timings: bool) -> dict:
        out = {"id": self.id, "anchor": self.anchor, "status": self.status}
        if self.residual is not None:
            out["residual"] = self.residual
        if timings:
            out["ms"] = round(self.ms, 3)
        return out


@dataclass
class VerificationReport:
    suite: str
    seed: int
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status != "pass"]

    def to_json(self, timings: bool = False) -> dict:
        return {"suite": self.suite, "seed": self.seed,
                "checks": [c.to_json(timings) for c in sorted(self.checks, key=lambda c: c.id)]}

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), indent=2, sort_keys=True)

    def summary(self) -> str:
        n_fail = len(self.failures())
        return f"{self.suite}: {len(self.checks) - n_fail}/{len(self.checks)} checks passed"


# A check returns None on success or a residual s-expression string on failure.
Check = Tuple[str, str, Callable[[], Optional[str]]]


def _form_residual(r: DiffForm) -> Optional[str]:
    return None if r.is_zero() else dumps_form(r)


def _eq_residual(a: DiffForm, b: DiffForm) -> Optional[str]:
    return _form_residual(a - b)


def _weil_residual(r: WeilElement) -> Optional[str]:
    return None if r.is_zero() else dumps_weil(r)


def _flag(ok: bool, what: str) -> Optional[str]:
    return None if ok else f'(failed "{what}")'


def _count_residual(counts: Dict[Tuple[int, int], Tuple[int, int]]) -> Optional[str]:
    bad = [(k, v) for k, v in sorted(counts.items()) if v[1]]
    if not bad:
        return None
    return "(failures " + " ".join(f"((bidegree {n} {m}) (checked {c}) (failed {f}))"
                                   for (n, m), (c, f) in bad) + ")"


def _pairing_residual(items) -> Optional[str]:
    if not items:
        return None
    return "(nonzero-pairings " + " ".join(
        f'("{"|".join(eq.word_str(w) for w in ws)}" {dim} "{name}" "{val}")' for ws, dim, name, val in items) + ")"


# ---------------------------------------------------------------------------
# suites


def _bicomplex_checks(seed: int) -> List[Check]:
    G = eq.inversion_group(1, 0)
    rng = random.Random(seed)
    checks: List[Check] = []
    for k in range(100):
        n, m = rng.randint(0, 1), rng.randint(0, 1)
        u = random_rule(seed * 100003 + k, G, n, m)
        t = tuple(random_word(rng, G, 2) for _ in range(n + 3))

        def run(u=u, t=t):
            dd = eq.d_cochain(eq.d_cochain(u))(*t[:-2])
            ss = eq.delta_simplicial(eq.delta_simplicial(u))(*t)
            mix = eq.d_cochain(eq.delta_simplicial(u))(*t[:-1]) + eq.delta_simplicial(eq.d_cochain(u))(*t[:-1])
            for name, r in (("d^2", dd), ("delta^2", ss), ("d delta + delta d", mix)):
                if not r.is_zero():
                    return f'({name.replace(" ", "-")} {dumps_form(r)})'
            return None

        words = ",".join(eq.word_str(w) for w in t)
        checks.append((f"bicomplex/case-{k:03d}", f"d^2 = delta^2 = d delta + delta d = 0 on ({words})", run))
    for k in range(10):
        n, m = rng.randint(0, 1), rng.randint(0, 2)
        u = random_rule(seed * 7919 + k, G, n, m)
        gs = tuple(random_word(rng, G, 2) for _ in range(n + 1))

        def run(u=u, gs=gs, m=m):
            lhs = eq.to_group_cochain(eq.delta_simplicial(u))(*gs)
            rhs = eq.group_coboundary(eq.to_group_cochain(u))(*gs)
            return _eq_residual(lhs, rhs if m % 2 == 0 else -rhs)

        checks.append((f"bicomplex/group-form-{k:02d}", "inhomogeneous coboundary matches (-1)^m delta", run))
    for k in range(10):
        a = random_rule(seed * 104729 + k, G, rng.randint(0, 1), rng.randint(0, 1))
        b = random_rule(seed * 1299709 + k, G, rng.randint(0, 1), rng.randint(0, 1))
        t = tuple(random_word(rng, G, 1) for _ in range(a.n + b.n + 2))

        def run(a=a, b=b, t=t):
            A = eq.TotalCochain(G, {a.bidegree: a})
            B = eq.TotalCochain(G, {b.bidegree: b})
            sign = -1 if (a.n + a.m) & 1 else 1
            lhs = (A * B).D()
            rhs = A.D() * B + (A * B.D()).scale(sign)
            for key in sorted(set(lhs.parts) | set(rhs.parts)):
                n = key[0]
                r = lhs.component(*key)(*t[:n + 1]) - rhs.component(*key)(*t[:n + 1])
                if not r.is_zero():
                    return f"(leibniz {dumps_form(r)})"
            return None

        checks.append((f"bicomplex/leibniz-{k:02d}", "total differential is a graded derivation of the cup product", run))
    return checks


def _weil_checks(seed: int) -> List[Check]:
    rng = random.Random(seed)
    checks: List[Check] = []
    for k in range(30):
        n, deg = rng.randint(1, 3), rng.randint(0, 5)
        a = random_weil(rng, n, deg)
        checks.append((f"weil/d-squared-{k:02d}", f"d_W^2 = 0 (n={n}, degree {deg})",
                       lambda a=a: _weil_residual(d_weil(d_weil(a)))))
    for k in (1, 2, 3):
        checks.append((f"weil/chern-closed-{k}", f"c_{k} is closed in W_3",
                       lambda k=k: _weil_residual(d_weil(chern_class(k, 3)))))
    for k in (1, 3):
        checks.append((f"weil/transgression-{k}", f"d_W u_{k} = c_{k} in W_3 (relative form)",
                       lambda k=k: _weil_residual(d_weil(transgression(k, 3)) - chern_class(k, 3))))
        checks.append((f"weil/transgression-absolute-{k}", f"d_W u_{k} = c_{k} in W_3 (absolute form)",
                       lambda k=k: _weil_residual(d_weil(transgression(k, 3, relative=False)) - chern_class(k, 3))))
    checks.append(("weil/transgression-basic", "relative u_3 is SO_3-basic",
                   lambda: _flag(is_so_basic(transgression(3, 3))[0], "u_3 not basic")))
    checks.append(("weil/pontrjagin-basic", "p_1 is SO_3-basic",
                   lambda: _flag(is_so_basic(chern_class(2, 3))[0], "p_1 not basic")))
    checks.append(("weil/connection-not-basic", "omega_12 is not basic (witness found)",
                   lambda: _flag(not is_so_basic(omega(3, 1, 2))[0], "omega_12 reported basic")))

    def trunc():
        four = Omega(3, 1, 1) * Omega(3, 2, 2) * Omega(3, 3, 3) * Omega(3, 1, 2)
        three = Omega(3, 1, 1) * Omega(3, 2, 2) * Omega(3, 3, 3)
        if not four.is_zero():
            return _weil_residual(four)
        if three.is_zero():
            return '(failed "cubic curvature monomial vanished")'
        if not (chern_class(2, 3) * chern_class(2, 3)).is_zero():
            return '(failed "c_2^2 survives in W_3")'
        return None

    checks.append(("weil/truncation", "Omega-count > n monomials vanish in W_n", trunc))
    return checks


def _chern_weil_checks(seed: int) -> List[Check]:
    checks: List[Check] = []

    def kron():
        f = full_jet(3)
        for i in (1, 2, 3):
            for k in (1, 2, 3):
                r = f.kronecker_residual(i, k)
                if not r.is_zero():
                    return f"(kronecker {i} {k} {dumps_form(r)})"
        return None

    checks.append(("chern-weil/kronecker", "inverse jet matrix satisfies Y y = 1 under the resolution", kron))
    for kind, ctor in (("omega", omega), ("Omega", Omega)):
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                def run(ctor=ctor, i=i, j=j):
                    f = full_jet(3)
                    g = ctor(3, i, j)
                    return _eq_residual(chern_weil(d_weil(g), f), chern_weil(g, f).d())
                checks.append((f"chern-weil/commutes-{kind}{i}{j}",
                               f"psi(d_W {kind}_{i}{j}) = d psi({kind}_{i}{j}) for n = 3", run))

    def horizontal():
        f = full_jet(3)
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                r = f.kill_base(f.curvature(i, j))
                if not r.is_zero():
                    return f"(horizontal {i} {j} {dumps_form(r)})"
        return None

    checks.append(("chern-weil/curvature-vertical", "jet curvature has no pure base part", horizontal))

    def restriction():
        f, h = full_jet(3), holo_jet()
        res = h.restriction(f)
        for i, a in zip((1, 2, 3), h.labels):
            for j, b in zip((1, 2, 3), h.labels):
                r = res(f.curvature(i, j)) - h.curvature(a, b)
                if not r.is_zero():
                    return f"(restriction {a} {b} {dumps_form(r)})"
        return None

    checks.append(("chern-weil/restriction", "full-jet curvature restricts to the holomorphic jet curvature",
                   restriction))

    def resolved():
        free, res = JetChart(2), JetChart(2, inverse="resolved")
        sub = free.resolution()
        for i in (1, 2):
            for j in (1, 2):
                r = sub(free.curvature(i, j)) - res.curvature(i, j)
                if not r.is_zero():
                    return f"(resolved {i} {j} {dumps_form(r)})"
        return None

    checks.append(("chern-weil/resolved-inverse", "free-inverse and cofactor charts agree (n = 2)", resolved))
    for key, ok in sorted(p1_identity_check().items()):
        checks.append((f"chern-weil/p1-{key}", f"p_1 restriction identity: {key.replace('_', ' ')}",
                       lambda ok=ok, key=key: _flag(ok, key)))
    for key, ok in sorted(so2_basic_check().items()):
        checks.append((f"chern-weil/so2-{key}", f"theta + theta-bar is SO_2-basic: {key.replace('_', ' ')}",
                       lambda ok=ok, key=key: _flag(ok, key)))
    return checks


def _theorem4_checks(seed: int) -> List[Check]:
    checks: List[Check] = []
    for mname in ("flat", "fubini-study"):
        for n1, n2 in ((1, 0), (2, -1)):
            def run(mname=mname, n1=n1, n2=n2):
                G = eq.inversion_group(n1, n2)
                return _count_residual(eq.theorem4_check(eq.metric_preset(mname, G.system), G, 2))
            checks.append((f"theorem4/cocycle-{mname}-{n1}_{n2}",
                           f"(d + delta)(-Omega^2) = 0 on word tuples of length <= 2, {mname} metric", run))
        def homotopy(mname=mname):
            G = eq.inversion_group(1, 0)
            return _count_residual(eq.homotopy_check(eq.metric_preset(mname, G.system), G, 1))
        checks.append((f"theorem4/homotopy-{mname}",
                       f"Omega^2 - R^2 = 1/2 (d + delta)((omega - theta)(Omega + R) + ...), {mname} metric",
                       homotopy))

    def base_values():
        G = eq.inversion_group(1, 0)
        O1, O0 = eq.equivariant_curvature(eq.connection_rule(eq.fubini_study(G.system), G))
        ws = G.words(1)
        ok = all(eq.base_only(O1(a, b)) for a in ws for b in ws) and all(eq.base_only(O0(a)) for a in ws)
        return _flag(ok, "curvature cochain involves jet variables")

    checks.append(("theorem4/curvature-base-only", "equivariant curvature components live on the base", base_values))

    def fs_curvature():
        m = eq.fubini_study()
        return _eq_residual(m.curvature, m.curvature_oracle())

    checks.append(("theorem4/fs-curvature", "Fubini-Study curvature matches the log-derivative oracle", fs_curvature))
    return checks


def _ghost_checks(seed: int) -> List[Check]:
    checks: List[Check] = []
    rot = eq.rotation("r")
    G = eq.Group([rot])
    g = (("r", 1),)
    for mname in ("fubini-study", "flat"):
        def run(mname=mname):
            lhs, rhs = eq.ghost_identity_terms(G, g, eq.metric_preset(mname, G.system))
            return _eq_residual(lhs, rhs)
        checks.append((f"ghost/identity-{mname}",
                       f"R (d ln Z' + d ln rho o g) = R (D_z xi) o g for the rotation loop, {mname}", run))

    def xi_value():
        ch = G.chart
        expect = DiffForm.one_form(ch, "dt") * DiffForm.generator(ch, "z") * GaussianRational(0, 1)
        return _eq_residual(eq.ghost_field(G, g), expect)

    checks.append(("ghost/field", "ghost field of z -> w z is i z dt", xi_value))

    def p1_one():
        fs = eq.fubini_study(G.system)
        P = eq.p1_cocycle(fs, G)
        f = eq.to_group_cochain(P.component(1, 3))
        gi = G.inverse(g)
        Zp = G.z_image(g).partial("z")
        R = fs.curvature
        rhs = (log_derivative(Zp) + G.act(fs.partial_log, g)) * R + \
            G.act(R, g) * G.act(G.act(log_derivative(Zp), gi) - G.act(fs.partial_log, gi), g)
        return _eq_residual(f(g), rhs)

    checks.append(("ghost/p1-one-cochain", "(1,3) component of -Omega^2 in terms of d ln Z' and R", p1_one))

    def inverse_ghost():
        fs = eq.fubini_study(G.system)
        gi = G.inverse(g)
        Zp = G.z_image(g).partial("z")
        R = fs.curvature
        lhs = G.act(R, g) * G.act(G.act(log_derivative(Zp), gi) - G.act(fs.partial_log, gi), g)
        rhs = -(G.act(R, g) * eq.covariant_derivative(eq.ghost_field(G, gi), fs))
        return _eq_residual(lhs, rhs)

    checks.append(("ghost/inverse-identity", "second term rewritten through the ghost field of g^-1",
                   inverse_ghost))
    return checks


EXPECTED_PAIRINGS = ((1, 0), (0, 1), (2, -1), (3, 3), (5, 2))


@lru_cache(maxsize=None)
def exact_pairing(n1: int, n2: int, metric: str = "flat") -> PiScalar:
    """<-Omega^2, c> summed over all components of the cocycle."""
    G = eq.inversion_group(n1, n2)
    return hom.pair_total(eq.p1_cocycle(eq.metric_preset(metric, G.system), G), hom.build_cycle(G))


def numeric_pairing(n1: int, n2: int, samples: int = 256, metric: str = "flat") -> hom.NumericResult:
    G = eq.inversion_group(n1, n2)
    P = eq.p1_cocycle(eq.metric_preset(metric, G.system), G)
    total, err = 0j, 0.0
    for key in sorted(P.parts):
        f = eq.to_group_cochain(P.parts[key])
        for (ws, c), v in hom.build_cycle(G).terms.items():
            if (len(ws), c.dim) != key:
                continue
            r = hom.integrate_numeric(f(*ws), c, samples if c.dim < 3 else max(samples // 4, 16), G)
            total += v * r.value
            err += abs(v) * r.error
    return hom.NumericResult(total, err, samples)


def pairing_sign() -> int:
    """Global sign s with <p1, c> = s 8 pi^2 (n1 - n2) under the (t, x, y) orientation."""
    v = exact_pairing(1, 0)
    return 1 if v == PiScalar({2: 8}) else -1


def _cycle_checks(seed: int) -> List[Check]:
    checks: List[Check] = []
    for n1, n2 in ((1, 0), (2, -1)):
        G = eq.inversion_group(n1, n2)

        @lru_cache(maxsize=None)
        def relations(G=G, n1=n1, n2=n2):
            return hom.cycle_relations(G, n1, n2)

        for key in ("(d + delta) c = 0 (weak)", "g1*dC = -dC", "g2*dC = -dC", "g1*g2*C = C (weak)",
                    "g1*g2*C = C (reparameterized)"):
            slug = key.replace(" ", "").replace("*", "").replace("(", "-").replace(")", "")
            def run(key=key, relations=relations):
                items = relations()[key]
                if not items:
                    return None
                if key.endswith("(reparameterized)"):
                    return "(embedding-mismatch " + " ".join(f'({k} "{a}" "{b}")' for k, a, b in items) + ")"
                return _pairing_residual(items)
            checks.append((f"cycle/{n1}_{n2}/{slug}", f"{key} against the test-form basis", run))

    sign_holder: Dict[str, int] = {}
    for n1, n2 in EXPECTED_PAIRINGS:
        def run(n1=n1, n2=n2):
            v = exact_pairing(n1, n2)
            s = sign_holder.setdefault("s", pairing_sign())
            want = PiScalar({2: 8 * (n1 - n2) * s}) if n1 != n2 else PiScalar()
            return None if v == want else f'(pairing "{v}" expected "{want}")'
        checks.append((f"cycle/pair-exact-{n1}_{n2}", "<p1, c> = 8 pi^2 (n1 - n2) up to one global sign", run))
    for n1, n2 in ((1, 0), (2, -1), (3, 3)):
        def run(n1=n1, n2=n2):
            exact = exact_pairing(n1, n2).approx()
            num = numeric_pairing(n1, n2, 256).value
            if exact == 0:
                ok = abs(num) < 1e-9
            else:
                ok = abs(num - exact) <= 1e-6 * abs(exact)
            return None if ok else f'(numeric "{num!r}" exact "{exact!r}")'
        checks.append((f"cycle/pair-numeric-{n1}_{n2}", "quadrature on 256^2 samples matches the exact pairing", run))

    def fs_pair():
        exact = exact_pairing(1, 0, "fubini-study").approx()
        num = numeric_pairing(1, 0, 128, "fubini-study").value
        ok = abs(num - exact) <= 1e-6 * max(abs(exact), 1.0)
        return None if ok else f'(numeric "{num!r}" exact "{exact!r}")'

    checks.append(("cycle/pair-fubini-study", "Fubini-Study pairing: exact and quadrature routes agree", fs_pair))

    G = eq.inversion_group(1, 0)
    C, T = hom.cylinder(), hom.torus()
    rng = random.Random(seed)
    for k in range(20):
        e = random_chain_element(rng, G, [C, T])

        def run(e=e):
            dd = hom.partial_homology(hom.partial_homology(e))
            ss = hom.delta_homology(G, hom.delta_homology(G, e))
            mix = hom.partial_homology(hom.delta_homology(G, e)) + hom.delta_homology(G, hom.partial_homology(e))
            for name, r in (("partial^2", dd), ("delta^2", ss), ("anticommute", mix)):
                if not r.is_zero():
                    return f'({name} "{r!r}")'
            return None

        checks.append((f"cycle/chain-identities-{k:02d}", "partial^2 = delta^2 = partial delta + delta partial = 0", run))
    for k in range(6):
        f = random_group_cochain(seed * 31 + k, G, 1, 2)
        ws = (random_word(rng, G, 2), random_word(rng, G, 2))

        def run(f=f, ws=ws):
            e = hom.ChainElement.term(ws, T)
            lhs = hom.pair(eq.group_coboundary(f), e)
            rhs = hom.pair(f, hom.delta_homology(G, e))
            return None if lhs == rhs else f'(duality "{lhs}" "{rhs}")'

        checks.append((f"cycle/pairing-duality-{k}", "<delta f, e> = <f, delta e>", run))

    def linearity():
        p = eq.p1_group_cochain(eq.flat_metric(G.system), G)
        c = hom.build_cycle(G)
        f = random_group_cochain(seed, G, 2, 2)
        both = eq.GroupCochain(G, 2, 2, lambda gs: p(*gs) * 3 + f(*gs))
        lhs = hom.pair(both, c + c)
        rhs = (hom.pair(p, c) * 3 + hom.pair(f, c)) * 2
        return None if lhs == rhs else f'(linearity "{lhs}" "{rhs}")'

    checks.append(("cycle/pairing-linear", "pairing is bilinear in cochain and chain", linearity))
    return checks


def _stokes_checks(seed: int) -> List[Check]:
    checks: List[Check] = []
    G = eq.inversion_group(1, 0)
    ch = G.chart
    C = hom.cylinder()
    rng = random.Random(seed)
    for k in range(12):
        a = random_base_form(rng, ch, 2)

        def run(a=a):
            faces = hom.boundary(C)
            try:
                lhs = hom.integrate(a.d(), C)
                rhs = sum((hom.integrate(a, f) * s for s, f in faces), PiScalar())
                return None if lhs == rhs else f'(stokes "{lhs}" "{rhs}")'
            except hom.NotLaurent:
                lhs = hom.integrate_numeric(a.d(), C, 64).value
                rhs = sum(s * hom.integrate_numeric(a, f, 128).value for s, f in faces)
                ok = abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs))
                return None if ok else f'(stokes-numeric "{lhs!r}" "{rhs!r}")'

        checks.append((f"stokes/random-{k:02d}", "integral of d a over C equals integral of a over dC", run))
    for k in range(4):
        a = random_base_form(rng, ch, 3, q_power=2)

        def run(a=a):
            exact = complex(hom.integrate_symbolic(a, C).evalf(30))
            num = hom.integrate_numeric(a, C, 64).value
            ok = abs(num - exact) <= 1e-6 * max(abs(exact), 1e-3)
            return None if ok else f'(quadrature "{num!r}" "{exact!r}")'

        checks.append((f"stokes/quadrature-{k}", "exact and quadrature integrals agree on the cylinder", run))

    def torus_residue():
        a = DiffForm.one_form(ch, "dt") * DiffForm.one_form(ch, "dz") * DiffForm.generator(ch, "z", -1)
        v = hom.integrate(a, hom.torus())
        num = hom.integrate_numeric(a, hom.torus(), 256).value
        want = PiScalar({2: GaussianRational(0, 4)})
        if v != want:
            return f'(residue "{v}")'
        return None if abs(num - want.approx()) <= 1e-9 * abs(want.approx()) else f'(quadrature "{num!r}")'

    checks.append(("stokes/torus-residue", "dt^dz/z over the torus is 4 pi^2 i", torus_residue))
    import cmath
    import math
    for kk in range(-3, 4):
        def run(kk=kk):
            s = [cmath.exp(1j * kk * 2 * math.pi * j / 200) for j in range(200)]
            w = hom.winding_number(s)
            return None if w == kk else f"(winding {w} expected {kk})"
        checks.append((f"stokes/winding-{kk:+d}", f"winding number of e^(ikt) is k for k = {kk}", run))
    for k in range(5):
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)

        def run(a=a, b=b):
            n = 200
            la = [cmath.exp(1j * a * 2 * math.pi * j / n) for j in range(n)]
            lb = [cmath.exp(1j * b * 2 * math.pi * j / n) for j in range(n)]
            prod = hom.winding_number([x * y for x, y in zip(la, lb)])
            cat = hom.winding_number(la + lb)
            return None if prod == cat == a + b else f"(additivity {prod} {cat} expected {a + b})"

        checks.append((f"stokes/winding-additive-{k}", "winding is additive under products and concatenation", run))
    return checks


_BUILDERS: Dict[str, Callable[[int], List[Check]]] = {
    "bicomplex": _bicomplex_checks,
    "weil": _weil_checks,
    "chern-weil": _chern_weil_checks,
    "theorem4": _theorem4_checks,
    "ghost": _ghost_checks,
    "cycle": _cycle_checks,
    "stokes": _stokes_checks,
}


class UnknownSuite(ValueError):
    pass


def run_suite(name: str, seed: int = 0, progress: Callable[[CheckResult], None] | None = None) -> VerificationReport:
    if name == "all":
        report = VerificationReport("all", seed)
        for s in SUITES:
            report.checks += run_suite(s, seed, progress).checks
        return report
    if name not in _BUILDERS:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    report = VerificationReport(name, seed)
    for cid, anchor, fn in _BUILDERS[name](seed):
        t0 = time.perf_counter()
        try:
            residual = fn()
        except Exception as exc:  # a crashing check is a failing check
            residual = f'(error "{type(exc).__name__}: {exc}")'
        res = CheckResult(cid, anchor, "pass" if residual is None else "fail", residual,
                          (time.perf_counter() - t0) * 1000)
        report.checks.append(res)
        if progress:
            progress(res)
    return report
