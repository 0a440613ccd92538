"""Jet charts, tautological forms theta, curvature R and the Chern-Weil map.

Two families of charts share one interface (:class:`JetSystem`): the full
order-<=2 jet chart over R^n and the holomorphic subbundle chart over
S^1 x Sigma with coordinates z, zbar, t and circle symbol w = exp(i t).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Dict, List, Optional, Tuple

from .chart import Chart, auxiliary, circle, coordinate, jet
from .forms import DiffForm, Substitution, VectorField, lie_derivative, interior_product, wedge
from .scalars import GaussianRational, I
from .weil import WeilElement, WeilError, _perm_sign


class JetError(ValueError):
    pass


class JetSystem:
    """Common accessors; subclasses provide the symbol tables."""

    chart: Chart
    n: int
    order: int
    labels: Tuple[str, ...]

    def __init__(self):
        self._theta: Dict = {}
        self._conn: Dict = {}
        self._curv: Dict = {}

    # symbol access (subclasses) ----------------------------------------
    def x(self, mu: str) -> DiffForm:
        raise NotImplementedError

    def y(self, mu: str, i: str) -> DiffForm:
        raise NotImplementedError

    def y2(self, mu: str, i: str, j: str) -> DiffForm:
        raise NotImplementedError

    def inv(self, i: str, mu: str) -> DiffForm:
        raise NotImplementedError

    def dx(self, mu: str) -> DiffForm:
        return self.x(mu).d()

    def base_one_forms(self) -> List[str]:
        raise NotImplementedError

    def label(self, i) -> str:
        if isinstance(i, int):
            if not 1 <= i <= self.n:
                raise JetError(f"index {i} out of range 1..{self.n}")
            return self.labels[i - 1]
        if i not in self.labels:
            raise JetError(f"unknown index {i!r}; expected one of {self.labels}")
        return i

    def _need(self, k: int):
        if self.order < k:
            raise JetError(f"operation needs jet order >= {k}, chart has order {self.order}")

    def zero(self) -> DiffForm:
        return DiffForm.zero(self.chart)

    # tautological forms ------------------------------------------------
    def theta(self, i) -> DiffForm:
        self._need(1)
        i = self.label(i)
        if i not in self._theta:
            self._theta[i] = DiffForm.sum([self.inv(i, mu) * self.dx(mu) for mu in self.labels], self.chart)
        return self._theta[i]

    def theta_conn(self, i, j) -> DiffForm:
        self._need(2)
        i, j = self.label(i), self.label(j)
        key = (i, j)
        if key not in self._conn:
            parts = []
            for mu in self.labels:
                Yi = self.inv(i, mu)
                if Yi.is_zero():
                    continue
                parts.append(Yi * self.y(mu, j).d())
                for k in self.labels:
                    c = self.y2(mu, j, k)
                    if c.is_zero():
                        continue
                    for nu in self.labels:
                        Yk = self.inv(k, nu)
                        if not Yk.is_zero():
                            parts.append(-(c * Yi * Yk * self.dx(nu)))
            self._conn[key] = DiffForm.sum(parts, self.chart)
        return self._conn[key]

    def curvature(self, i, j) -> DiffForm:
        self._need(2)
        i, j = self.label(i), self.label(j)
        key = (i, j)
        if key not in self._curv:
            out = self.theta_conn(i, j).d()
            parts = [out] + [self.theta_conn(i, k) * self.theta_conn(k, j) for k in self.labels]
            self._curv[key] = DiffForm.sum(parts, self.chart)
        return self._curv[key]

    def kronecker_residual(self, i, j) -> DiffForm:
        """sum_mu (y^-1)^i_mu y^mu_j - delta^i_j, after resolving inverses."""
        i, j = self.label(i), self.label(j)
        s = DiffForm.sum([self.inv(i, mu) * self.y(mu, j) for mu in self.labels], self.chart)
        s = self.resolve(s)
        return s - (1 if i == j else 0)

    def resolve(self, a: DiffForm) -> DiffForm:
        return a

    def kill_base(self, a: DiffForm) -> DiffForm:
        """Set all base differentials to zero (horizontality test)."""
        return a.kill(self.base_one_forms())


# ---------------------------------------------------------------------------
# full jet chart over R^n


def _sym2(i: int, j: int) -> str:
    return f"{min(i, j)}{max(i, j)}"


class JetChart(JetSystem):
    """Order-k (k <= 2) jet chart over R^n.

    ``inverse="free"`` declares (y^-1)^i_mu as auxiliary generators with the
    rule d(y^-1) = -(y^-1)(dy)(y^-1); ``inverse="resolved"`` expresses them as
    cofactor / det with det a declared irreducible (or an invertible generator
    when n = 1).
    """

    def __init__(self, n: int, order: int = 2, inverse: str = "free"):
        super().__init__()
        if n < 1:
            raise JetError("base dimension must be positive")
        if order not in (1, 2):
            raise JetError("jet order must be 1 or 2")
        if inverse not in ("free", "resolved"):
            raise JetError(f"unknown inverse mode {inverse!r}")
        self.n, self.order, self.inverse_mode = n, order, inverse
        self.labels = tuple(str(i) for i in range(1, n + 1))
        gens = [coordinate(f"x{m}") for m in self.labels]
        gens += [jet(f"y{m}_{i}") for m in self.labels for i in self.labels]
        if order >= 2:
            gens += [jet(f"y{m}_{_sym2(i, j)}") for m in range(1, n + 1)
                     for i in range(1, n + 1) for j in range(i, n + 1)]
        name = f"full-jet({n},{order})"
        if inverse == "free":
            gens += [auxiliary(f"Y{i}_{m}") for i in self.labels for m in self.labels]
            rules = {f"Y{i}_{m}": self._inverse_rule(i, m) for i in self.labels for m in self.labels}
            self.chart = Chart(name, gens, rules=rules, real=[g.name for g in gens])
        else:
            if n == 1:
                self.chart = Chart(name + "/resolved", gens, invertible=["y1_1"], real=[g.name for g in gens])
            else:
                det = {}
                for p in permutations(range(n)):
                    mono = tuple((f"y{r + 1}_{c + 1}", 1) for r, c in enumerate(p))
                    det[mono] = _perm_sign(p)
                self.chart = Chart(name + "/resolved", gens, irreducibles=[("det", det)],
                                   real=[g.name for g in gens])
        self._inv_cache: Dict = {}

    def _inverse_rule(self, i: str, m: str):
        def rule(chart: Chart) -> DiffForm:
            parts = []
            for a in self.labels:
                for b in self.labels:
                    parts.append(DiffForm.generator(chart, f"Y{i}_{a}") * DiffForm.one_form(chart, f"dy{a}_{b}")
                                 * DiffForm.generator(chart, f"Y{b}_{m}"))
            return -DiffForm.sum(parts, chart)
        return rule

    def x(self, mu):
        return DiffForm.generator(self.chart, f"x{self.label(mu)}")

    def y(self, mu, i):
        return DiffForm.generator(self.chart, f"y{self.label(mu)}_{self.label(i)}")

    def y2(self, mu, i, j):
        self._need(2)
        return DiffForm.generator(self.chart, f"y{self.label(mu)}_{_sym2(int(self.label(i)), int(self.label(j)))}")

    def base_one_forms(self):
        return [f"dx{m}" for m in self.labels]

    def inv(self, i, mu):
        i, mu = self.label(i), self.label(mu)
        if self.inverse_mode == "free":
            return DiffForm.generator(self.chart, f"Y{i}_{mu}")
        key = (i, mu)
        if key not in self._inv_cache:
            self._inv_cache[key] = self._resolved_inverse(int(i) - 1, int(mu) - 1)
        return self._inv_cache[key]

    def _resolved_inverse(self, i: int, mu: int) -> DiffForm:
        ch, n = self.chart, self.n
        if n == 1:
            return DiffForm.generator(ch, "y1_1", -1)
        # (y^-1)[i][mu] = cofactor(mu, i) / det
        rows = [r for r in range(n) if r != mu]
        cols = [c for c in range(n) if c != i]
        cof = []
        for p in permutations(range(n - 1)):
            term = DiffForm.constant(ch, _perm_sign(p))
            for r, c in enumerate(p):
                term = term * DiffForm.generator(ch, f"y{rows[r] + 1}_{cols[c] + 1}")
            cof.append(term)
        sign = -1 if (i + mu) % 2 else 1
        return DiffForm.sum(cof, ch) * sign * DiffForm.irreducible(ch, "det", -1)

    def resolution(self) -> Optional[Substitution]:
        """Substitution free inverse symbols -> cofactor / det (None if already resolved)."""
        if self.inverse_mode == "resolved":
            return None
        if "_resolution" not in self.chart.meta:
            target = JetChart(self.n, self.order, "resolved")
            images = {f"Y{i}_{m}": target.inv(i, m) for i in self.labels for m in self.labels}
            self.chart.meta["_resolution"] = Substitution(self.chart, target.chart, images)
        return self.chart.meta["_resolution"]

    def resolve(self, a: DiffForm) -> DiffForm:
        sub = self.resolution()
        return sub(a) if sub else a


@lru_cache(maxsize=None)
def full_jet(n: int, order: int = 2, inverse: str = "free") -> JetChart:
    return JetChart(n, order, inverse)


# ---------------------------------------------------------------------------
# holomorphic subbundle over S^1 x Sigma

HOLO_LABELS = ("z", "zbar", "t")
_CONJ_LABEL = {"z": "zbar", "zbar": "z", "t": "t"}
# jet symbol names: y{mu}_{indices}; only holomorphic (and conjugate) ones exist
_HOLO_Y1 = {("z", "z"): "yz_z", ("z", "t"): "yz_t", ("zbar", "zbar"): "yzb_zb", ("zbar", "t"): "yzb_t"}
_HOLO_Y2 = {("z", "z", "z"): "yz_zz", ("z", "z", "t"): "yz_zt", ("z", "t", "t"): "yz_tt",
            ("zbar", "zbar", "zbar"): "yzb_zbzb", ("zbar", "zbar", "t"): "yzb_zbt", ("zbar", "t", "t"): "yzb_tt"}
_ORDER = {"z": 0, "zbar": 1, "t": 2}


def _holo_chart() -> Chart:
    gens = [coordinate("z"), coordinate("zbar"), coordinate("t"), circle("w", "t")]
    gens += [jet(n) for n in ("yz_z", "yz_t", "yz_zz", "yz_zt", "yz_tt",
                              "yzb_zb", "yzb_t", "yzb_zbzb", "yzb_zbt", "yzb_tt")]
    conj = {"z": ("zbar", 1)}
    for a, b in (("yz_z", "yzb_zb"), ("yz_t", "yzb_t"), ("yz_zz", "yzb_zbzb"),
                 ("yz_zt", "yzb_zbt"), ("yz_tt", "yzb_tt")):
        conj[a] = (b, 1)
    return Chart("holo-jet", gens, invertible=["z", "zbar", "yz_z", "yzb_zb"],
                 irreducibles=[("q", {(): 1, (("z", 1), ("zbar", 1)): 1})],
                 conjugates=conj, real=["t"])


class HoloJetChart(JetSystem):
    """Holomorphic 2-jets over S^1 x Sigma; indices are 'z', 'zbar', 't'."""

    def __init__(self):
        super().__init__()
        self.n, self.order = 3, 2
        self.labels = HOLO_LABELS
        self.chart = _holo_chart()

    def x(self, mu):
        return DiffForm.generator(self.chart, self.label(mu))

    def base_one_forms(self):
        return ["dz", "dzbar", "dt"]

    def y(self, mu, i):
        mu, i = self.label(mu), self.label(i)
        if mu == "t":
            return DiffForm.constant(self.chart, 1 if i == "t" else 0)
        name = _HOLO_Y1.get((mu, i))
        return DiffForm.generator(self.chart, name) if name else self.zero()

    def y2(self, mu, i, j):
        mu, i, j = self.label(mu), self.label(i), self.label(j)
        i, j = sorted((i, j), key=_ORDER.get)
        name = _HOLO_Y2.get((mu, i, j))
        return DiffForm.generator(self.chart, name) if name else self.zero()

    def inv(self, i, mu):
        i, mu = self.label(i), self.label(mu)
        key = (i, mu)
        cache = self.chart.meta.setdefault("_inv", {})
        if key not in cache:
            cache[key] = self._inverse(i, mu)
        return cache[key]

    def _inverse(self, i, mu):
        ch = self.chart
        if i == "t":
            return DiffForm.constant(ch, 1 if mu == "t" else 0)
        if mu == _CONJ_LABEL[i] and i != "t":
            return self.zero()
        diag = self.y(i, i)
        if mu == i:
            return diag.invert()
        # mu == "t": -y^i_t / y^i_i
        return -(self.y(i, "t") * diag.invert())

    def rotation_field(self) -> VectorField:
        """Infinitesimal SO_2 rotation of the frame, acting on jet indices."""
        ch = self.chart
        g = lambda n: DiffForm.generator(ch, n)
        comps = {"yz_z": g("yz_z") * I, "yz_zt": g("yz_zt") * I, "yz_zz": g("yz_zz") * GaussianRational(0, 2),
                 "yzb_zb": g("yzb_zb") * -I, "yzb_zbt": g("yzb_zbt") * -I,
                 "yzb_zbzb": g("yzb_zbzb") * GaussianRational(0, -2)}
        return VectorField(ch, comps)

    def rotation_substitution(self) -> Substitution:
        """Finite SO_2 rotation by a fresh circle symbol ``a`` = exp(i alpha)."""
        if "_rot" not in self.chart.meta:
            ext = self.chart.extend("holo-jet+alpha", [coordinate("alpha"), circle("a", "alpha")],
                                    real=["alpha"])
            a = DiffForm.generator(ext, "a")
            g = lambda n: DiffForm.generator(ext, n)
            images = {"yz_z": a * g("yz_z"), "yz_zt": a * g("yz_zt"), "yz_zz": a * a * g("yz_zz"),
                      "yzb_zb": a.invert() * g("yzb_zb"), "yzb_zbt": a.invert() * g("yzb_zbt"),
                      "yzb_zbzb": (a * a).invert() * g("yzb_zbzb")}
            rot = Substitution(self.chart, ext, images)
            self.chart.meta["_rot"] = (rot, Substitution(self.chart, ext, {}))
        return self.chart.meta["_rot"]

    def restriction(self, full: JetChart) -> Substitution:
        """Inclusion of the holomorphic subbundle into the full chart n=3, k=2."""
        if full.n != 3 or full.order != 2:
            raise JetError("restriction needs the full jet chart with n=3, order 2")
        ch = self.chart
        lab = dict(zip(full.labels, HOLO_LABELS))
        images = {}
        for m in full.labels:
            images[f"x{m}"] = self.x(lab[m])
            for i in full.labels:
                images[f"y{m}_{i}"] = self.y(lab[m], lab[i])
                for j in full.labels:
                    if int(j) >= int(i):
                        images[f"y{m}_{i}{j}"] = self.y2(lab[m], lab[i], lab[j])
                if full.inverse_mode == "free":
                    images[f"Y{m}_{i}"] = self.inv(lab[m], lab[i])
        return Substitution(full.chart, ch, images, one_form_images=None)


@lru_cache(maxsize=None)
def holo_jet() -> HoloJetChart:
    return HoloJetChart()


def preset(name: str) -> JetSystem:
    """Named chart presets: 'holo-jet' or 'full-jet(n,k)'."""
    name = name.strip()
    if name == "holo-jet":
        return holo_jet()
    if name.startswith("full-jet(") and name.endswith(")"):
        try:
            n, k = (int(s) for s in name[len("full-jet("):-1].split(","))
        except ValueError:
            raise JetError(f"bad preset {name!r}") from None
        return full_jet(n, k)
    raise JetError(f"unknown chart preset {name!r}")


# ---------------------------------------------------------------------------
# Chern-Weil map


def chern_weil(a: WeilElement, system: JetSystem) -> DiffForm:
    """Algebra morphism omega^i_j -> theta^i_j, Omega^i_j -> R^i_j."""
    if a.n != system.n:
        raise WeilError(f"size mismatch: W_{a.n} on a chart of dimension {system.n}")
    system._need(2)
    n = a.n
    parts = []
    cache: Dict = system.__dict__.setdefault("_cw_mono", {})
    for key, c in a.terms.items():
        if key not in cache:
            o, O = key
            f = DiffForm.constant(system.chart, 1)
            for x in o:
                i, j = divmod(x, n)
                f = wedge(f, system.theta_conn(i + 1, j + 1))
            for x in O:
                i, j = divmod(x, n)
                f = wedge(f, system.curvature(i + 1, j + 1))
            cache[key] = f
        parts.append(cache[key].scale(c))
    return DiffForm.sum(parts, system.chart)


def p1_identity_check(system: HoloJetChart | None = None) -> Dict[str, bool]:
    """Exact checks of the p1 restriction identity on the holomorphic chart."""
    from .weil import pontrjagin_class

    h = system or holo_jet()
    R = h.curvature
    Rzz, Rbb = R("z", "z"), R("zbar", "zbar")
    p1 = chern_weil(pontrjagin_class(1, 3), h)
    half = GaussianRational(1, 0) / 2
    polarized = ((Rzz + Rbb) * (Rzz + Rbb) - Rzz * Rzz - Rbb * Rbb) * half
    out = {
        "p1_equals_RzzRbb": p1 == Rzz * Rbb,
        "polarized_equals_RzzRbb": polarized == Rzz * Rbb,
        "Rt_vanish": all(R("t", j).is_zero() for j in h.labels),
        "mixed_vanish": R("z", "zbar").is_zero() and R("zbar", "z").is_zero(),
        "RztRtz_zero": (R("z", "t") * R("t", "z")).is_zero(),
        "survivors_nonzero": all(not R(i, j).is_zero() for i, j in
                                 (("z", "z"), ("z", "t"), ("zbar", "zbar"), ("zbar", "t"))),
    }
    return out


def so2_basic_check(system: HoloJetChart | None = None) -> Dict[str, bool]:
    """theta + theta-bar is SO_2-basic, tested infinitesimally and by a finite rotation."""
    h = system or holo_jet()
    form = h.theta_conn("z", "z") + h.theta_conn("zbar", "zbar")
    V = h.rotation_field()
    rot, inc = h.rotation_substitution()
    return {
        "contraction_zero": interior_product(V, form).is_zero(),
        "lie_zero": lie_derivative(V, form).is_zero(),
        "finite_rotation_invariant": rot(form) == inc(form),
        "single_theta_not_invariant": rot(h.theta_conn("z", "z")) != inc(h.theta_conn("z", "z")),
    }
