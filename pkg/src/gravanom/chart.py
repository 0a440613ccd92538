"""Charts: the generator system underlying every differential form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .laurent import Poly, monomial_content, poly_key
from .scalars import GaussianRational

KINDS = ("coordinate", "jet", "circle", "auxiliary")


class ChartError(ValueError):
    """Raised for malformed chart declarations or cross-chart misuse."""


class MissingDifferentialRule(ChartError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    kind: str
    # circle symbols: name of the angle coordinate, so d(s) = i s d(angle)
    angle: Optional[str] = None


RuleSpec = Union[str, Callable[["Chart"], object], None]


class Chart:
    """Declared commuting/anticommuting generators plus rewrite data.

    Commuting generators of kind ``coordinate`` and ``jet`` own a 1-form
    symbol ``d<name>``. ``circle`` symbols stand for ``exp(i*angle)`` and
    differentiate by ``d s = i s d(angle)``. ``auxiliary`` symbols carry an
    explicit differential rule (a callable or s-expression) or are constants.
    Anticommuting symbols are ordered by declaration; that order is the
    canonical order of wedge products.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[Generator],
        *,
        free_one_forms: Sequence[str] = (),
        invertible: Iterable[str] = (),
        irreducibles: Sequence[Tuple[str, Dict[Tuple[Tuple[str, int], ...], object]]] = (),
        conjugates: Dict[str, Tuple[str, int]] | None = None,
        rules: Dict[str, RuleSpec] | None = None,
        real: Iterable[str] = (),
    ):
        self.name = name
        self.generators: Tuple[Generator, ...] = tuple(generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ChartError(f"chart {name!r}: duplicate generator names {dup}")
        for g in self.generators:
            if g.kind not in KINDS:
                raise ChartError(f"generator {g.name!r}: unknown kind {g.kind!r}")
        self.index: Dict[str, int] = {n: i for i, n in enumerate(names)}

        one_forms: List[str] = []
        self.own_diff: Dict[int, int] = {}
        for i, g in enumerate(self.generators):
            if g.kind in ("coordinate", "jet"):
                self.own_diff[i] = len(one_forms)
                one_forms.append("d" + g.name)
        for f in free_one_forms:
            one_forms.append(f)
        if len(set(one_forms)) != len(one_forms):
            raise ChartError(f"chart {name!r}: duplicate 1-form symbols")
        if set(one_forms) & set(names):
            raise ChartError(f"chart {name!r}: 1-form symbols clash with generator names")
        self.one_forms: Tuple[str, ...] = tuple(one_forms)
        self.aindex: Dict[str, int] = {n: i for i, n in enumerate(one_forms)}
        self.diff_owner: Dict[int, int] = {a: c for c, a in self.own_diff.items()}

        for g in self.generators:
            if g.kind == "circle":
                if g.angle not in self.index or self.generators[self.index[g.angle]].kind != "coordinate":
                    raise ChartError(f"circle symbol {g.name!r} needs a coordinate angle, got {g.angle!r}")

        self.invertible = frozenset(self.index[n] for n in invertible) | frozenset(
            i for i, g in enumerate(self.generators) if g.kind == "circle")

        self.irreducible_names: Tuple[str, ...] = tuple(n for n, _ in irreducibles)
        self.irreducibles: Tuple[Poly, ...] = tuple(
            self._parse_poly(p) for _, p in irreducibles)
        self.irr_index = {n: i for i, n in enumerate(self.irreducible_names)}
        for n, p in zip(self.irreducible_names, self.irreducibles):
            if len(p) < 2:
                raise ChartError(f"irreducible {n!r} must have at least two terms")
            if any(e < 0 for m in p for _, e in m) or monomial_content(p):
                raise ChartError(f"irreducible {n!r} must be a polynomial without monomial factors")

        self.real = frozenset(self.index[n] for n in real)
        conj: Dict[int, Tuple[int, int]] = {}
        for a, (b, s) in (conjugates or {}).items():
            ia, ib = self.index[a], self.index[b]
            conj[ia] = (ib, s)
            conj.setdefault(ib, (ia, s))
        for i, g in enumerate(self.generators):
            if i not in conj:
                conj[i] = (i, -1 if g.kind == "circle" else 1)
        self.conj = conj

        self._rule_specs: Dict[int, RuleSpec] = {}
        for n, spec in (rules or {}).items():
            if n not in self.index:
                raise ChartError(f"rule for undeclared generator {n!r}")
            if self.generators[self.index[n]].kind != "auxiliary":
                raise ChartError(f"only auxiliary generators take explicit rules, not {n!r}")
            self._rule_specs[self.index[n]] = spec
        self._rule_cache: Dict[int, object] = {}
        self._irr_diff_cache: Dict[int, object] = {}
        self._signature = (
            name, self.generators, self.one_forms, self.invertible,
            tuple(poly_key(p) for p in self.irreducibles))
        self.meta: Dict[str, object] = {}

    # ------------------------------------------------------------------
    def _parse_poly(self, spec) -> Poly:
        out: Poly = {}
        for mono, c in spec.items():
            m = tuple(sorted((self.index[n], e) for n, e in mono if e))
            out[m] = GaussianRational.coerce(c)
        return {m: c for m, c in out.items() if c}

    def gen(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise ChartError(f"chart {self.name!r} has no generator {name!r}") from None

    def one_form_index(self, name: str) -> int:
        try:
            return self.aindex[name]
        except KeyError:
            raise ChartError(f"chart {self.name!r} has no 1-form {name!r}") from None

    def has_rule(self, idx: int) -> bool:
        g = self.generators[idx]
        return g.kind != "auxiliary" or idx in self._rule_specs

    def differential(self, idx: int):
        """d of commuting generator ``idx`` as a DiffForm."""
        from .forms import DiffForm

        if idx in self._rule_cache:
            return self._rule_cache[idx]
        g = self.generators[idx]
        if g.kind in ("coordinate", "jet"):
            out = DiffForm.one_form(self, self.one_forms[self.own_diff[idx]])
        elif g.kind == "circle":
            out = DiffForm.generator(self, g.name) * DiffForm.one_form(self, "d" + g.angle) * GaussianRational(0, 1)
        else:
            spec = self._rule_specs.get(idx, "missing")
            if spec == "missing":
                raise MissingDifferentialRule(
                    f"generator {g.name!r} of chart {self.name!r} has no differential rule")
            if spec is None:
                out = DiffForm.zero(self)
            elif callable(spec):
                out = spec(self)
            else:
                from .sexpr import loads_form
                out = loads_form(spec, self)
        self._rule_cache[idx] = out
        return out

    def irreducible_differential(self, k: int):
        from .forms import DiffForm

        if k not in self._irr_diff_cache:
            self._irr_diff_cache[k] = DiffForm.from_poly(self, self.irreducibles[k]).d()
        return self._irr_diff_cache[k]

    def rule_spec(self, name: str) -> RuleSpec:
        return self._rule_specs.get(self.gen(name), "missing")

    def extend(self, name: str, generators: Sequence[Generator] = (), *, invertible=(),
               irreducibles=(), conjugates=None, rules=None, real=()) -> "Chart":
        """New chart containing this one's declarations plus the given ones."""
        old_irr = [(n, {tuple((self.generators[i].name, e) for i, e in m): c for m, c in p.items()})
                   for n, p in zip(self.irreducible_names, self.irreducibles)]
        conj = {self.generators[a].name: (self.generators[b].name, s) for a, (b, s) in self.conj.items()}
        conj.update(conjugates or {})
        r = {self.generators[i].name: s for i, s in self._rule_specs.items()}
        r.update(rules or {})
        free = [f for f in self.one_forms if self.aindex[f] not in self.diff_owner]
        return Chart(
            name, list(self.generators) + list(generators),
            free_one_forms=free,
            invertible=[self.generators[i].name for i in self.invertible] + list(invertible),
            irreducibles=old_irr + list(irreducibles),
            conjugates=conj, rules=r,
            real=[self.generators[i].name for i in self.real] + list(real),
        )

    def __eq__(self, other):
        return isinstance(other, Chart) and (self is other or self._signature == other._signature)

    def __hash__(self):
        return hash(self._signature)

    def __repr__(self):
        return f"Chart({self.name!r}, {len(self.generators)} commuting, {len(self.one_forms)} anticommuting)"


def coordinate(name: str) -> Generator:
    return Generator(name, "coordinate")


def jet(name: str) -> Generator:
    return Generator(name, "jet")


def circle(name: str, angle: str) -> Generator:
    return Generator(name, "circle", angle)


def auxiliary(name: str) -> Generator:
    return Generator(name, "auxiliary")
