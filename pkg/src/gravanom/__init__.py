"""Exact symbolic checks for the equivariant first Pontrjagin cocycle on S^1 x Sigma.

Layers, bottom up: exact scalars and Laurent polynomials, differential forms
on declared charts, the truncated Weil algebra, jet-bundle Chern-Weil maps,
group-equivariant cochains, and parameterized chains with exact integration.
"""

from .scalars import GaussianRational, PiScalar, PI
from .chart import Chart
from .forms import DiffForm, Substitution
from .weil import WeilElement, omega, Omega, d_weil, chern_class, pontrjagin_class, transgression
from .jets import JetChart, HoloJetChart, full_jet, holo_jet, chern_weil
from .equivariant import (Group, inversion_group, rotation, inversion, flat_metric, fubini_study,
                          p1_cocycle, p1_group_cochain)
from .homology import (ParamChain, ChainElement, cylinder, torus, build_cycle, integrate,
                       integrate_numeric, pair, pair_total, winding_number)

__all__ = [
    "GaussianRational", "PiScalar", "PI", "Chart", "DiffForm", "Substitution",
    "WeilElement", "omega", "Omega", "d_weil", "chern_class", "pontrjagin_class", "transgression",
    "JetChart", "HoloJetChart", "full_jet", "holo_jet", "chern_weil",
    "Group", "inversion_group", "rotation", "inversion", "flat_metric", "fubini_study",
    "p1_cocycle", "p1_group_cochain",
    "ParamChain", "ChainElement", "cylinder", "torus", "build_cycle", "integrate",
    "integrate_numeric", "pair", "pair_total", "winding_number",
]
