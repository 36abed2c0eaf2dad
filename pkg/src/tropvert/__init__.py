"""Exact scattering diagrams, wall crossing, and staircase arithmetic.

The package computes Kontsevich-Soibelman completions of two-dimensional
scattering diagrams over exact rationals, reduces diagrams through finite
index changes of lattice, evaluates well-placed curve counts on rigid del
Pezzo surfaces, and evaluates the stabilized ellipsoid embedding function of
the round ball.
"""

from .series import LatticeVector, TruncatedSeries, exp, log, nth_root
from .scattering import (
    CompletionError,
    ScatteringDiagram,
    Wall,
    complete,
    cross_wall,
    loop_monodromy,
    make_basic,
    ray_function,
    scattering_coef,
)
from .lattice import Sublattice, coef_via_reduction, nu, reduce_basic, root_diagram
from .delpezzo import MODELS, count_N, exists_wp_curve, wp, wp_inverse
from .embed import c_ball_stab, fib

__all__ = [
    "CompletionError",
    "LatticeVector",
    "MODELS",
    "ScatteringDiagram",
    "Sublattice",
    "TruncatedSeries",
    "Wall",
    "c_ball_stab",
    "coef_via_reduction",
    "complete",
    "count_N",
    "cross_wall",
    "exists_wp_curve",
    "exp",
    "fib",
    "log",
    "loop_monodromy",
    "make_basic",
    "nth_root",
    "nu",
    "ray_function",
    "reduce_basic",
    "root_diagram",
    "scattering_coef",
    "wp",
    "wp_inverse",
]
