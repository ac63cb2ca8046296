"""Ladder translation surfaces, their cylinder decompositions and Veech groups, in exact arithmetic."""

from .cylinders import Direction, commensurability, decompose, synthesize_parabolic, twist_counts
from .fuchsian import GroupWord, build_domain, cusp_orbit_gap, generators, membership, reduce
from .moebius import MoebiusElement, classify, eigen_slope, fixed_points
from .numeric import LadderParams, QuadExt, solve_lambda, to_decimal
from .surface import area, build_surface, contains, hexagon_chart

__all__ = [
    "Direction",
    "GroupWord",
    "LadderParams",
    "MoebiusElement",
    "QuadExt",
    "area",
    "build_domain",
    "build_surface",
    "classify",
    "commensurability",
    "contains",
    "cusp_orbit_gap",
    "decompose",
    "eigen_slope",
    "fixed_points",
    "generators",
    "hexagon_chart",
    "membership",
    "reduce",
    "solve_lambda",
    "synthesize_parabolic",
    "to_decimal",
    "twist_counts",
]
