"""Seeded random generators for forms, cochains and chain elements."""

from __future__ import annotations

import random
from typing import List, Sequence, Tuple

from .equivariant import (CochainRule, Group, GroupCochain, Word, from_group_cochain, word_str)
from .forms import DiffForm
from .homology import ChainElement, ParamChain
from .scalars import GaussianRational

BASE_ONE_FORMS = ("dz", "dzbar", "dt")


def random_coefficient(rng: random.Random, chart, terms: int = 3, *, laurent: bool = False,
                       q_power: int = 0) -> DiffForm:
    """Small Gaussian-rational combination of monomials in z, zbar, w^(+-1).

    With ``laurent`` the z and zbar exponents may be negative. ``q_power``
    divides by (1 + z zbar)^q_power.
    """
    lo = -1 if laurent else 0
    out = DiffForm.zero(chart)
    for _ in range(terms):
        c = GaussianRational(rng.randint(-3, 3), rng.randint(-2, 2))
        if not c:
            continue
        m = DiffForm.constant(chart, c)
        for name, a, b in (("z", lo, 2), ("zbar", lo, 2), ("w", -1, 1)):
            e = rng.randint(a, b)
            if e:
                m = m * DiffForm.generator(chart, name, e)
        out = out + m
    if q_power and "q" in chart.irr_index:
        out = out * DiffForm.irreducible(chart, "q", -q_power)
    return out


def random_base_form(rng: random.Random, chart, degree: int, terms: int = 2, *, laurent: bool = False,
                     q_power: int | None = None) -> DiffForm:
    """Random form in dz, dzbar, dt with coefficients from :func:`random_coefficient`."""
    import itertools

    wedges = list(itertools.combinations(BASE_ONE_FORMS, degree))
    out = DiffForm.zero(chart)
    for w in rng.sample(wedges, min(terms, len(wedges))):
        qp = rng.randint(0, 2) if q_power is None else q_power
        f = random_coefficient(rng, chart, laurent=laurent, q_power=qp)
        for name in w:
            f = f * DiffForm.one_form(chart, name)
        out = out + f
    return out


def random_word(rng: random.Random, group: Group, max_len: int = 2) -> Word:
    letters = [(n, e) for n in sorted(group.generators) for e in (1, -1)]
    out: List[Tuple[str, int]] = []
    for _ in range(rng.randint(0, max_len)):
        choices = [a for a in letters if not (out and out[-1] == (a[0], -a[1]))]
        out.append(rng.choice(choices))
    return tuple(out)


def random_group_cochain(seed: int, group: Group, n: int, m: int) -> GroupCochain:
    """Group cochain whose value on each tuple is a random m-form seeded by the tuple."""

    def fn(gs):
        rng = random.Random(f"{seed}|{n}|{m}|" + ",".join(word_str(g) for g in gs))
        return random_base_form(rng, group.chart, m, laurent=True)

    return GroupCochain(group, n, m, fn, f"rand{seed}")


def random_rule(seed: int, group: Group, n: int, m: int) -> CochainRule:
    """Equivariant homogeneous rule built from a random group cochain."""
    return from_group_cochain(random_group_cochain(seed, group, n, m))


def random_chain_element(rng: random.Random, group: Group, chains: Sequence[ParamChain],
                         max_n: int = 2, max_len: int = 2, terms: int = 3) -> ChainElement:
    out = ChainElement()
    for _ in range(terms):
        n = rng.randint(0, max_n)
        ws = tuple(random_word(rng, group, max_len) for _ in range(n))
        ch = rng.choice(list(chains))
        out = out + ChainElement.term(ws, ch, rng.choice((-2, -1, 1, 2)))
    return out
