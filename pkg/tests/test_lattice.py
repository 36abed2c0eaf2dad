import random
from fractions import Fraction

import pytest

from tropvert.lattice import (
    STANDARD,
    Sublattice,
    coef_via_reduction,
    map_diagram,
    nu,
    reduce_basic,
    reduced_multiplicities,
    root_diagram,
    standard_completion,
)
from tropvert.scattering import complete, is_consistent, make_basic, scattering_coef
from tropvert.series import TruncatedSeries, poly_eval_at_one

M1, M2 = (1, 0), (-1, -3)


def test_sublattice_basics():
    L = Sublattice(M1, M2)
    assert L.index == 3
    assert L.coordinates((1, -3)) == (2, 1)
    assert L.coordinates((0, 1)) is None
    assert (0, -3) in L and (0, -1) not in L
    with pytest.raises(ValueError):
        Sublattice((1, 0), (2, 0))


def test_nu_examples():
    L = Sublattice(M1, M2)
    assert nu(M1, L) == 3
    assert nu((0, -1), L) == 1
    assert nu((0, -3), L) == 1
    assert nu(M2, L) == 3
    assert nu((1, 0), STANDARD) == 1
    with pytest.raises(ValueError):
        nu((0, 0), L)


def test_nu_is_ray_invariant():
    rng = random.Random(5)
    L = Sublattice(M1, M2)
    for _ in range(30):
        m = (rng.randint(-5, 5), rng.randint(-5, 5))
        if m == (0, 0):
            continue
        base = nu(m, L)
        for k in (2, 3, 5):
            assert nu((k * m[0], k * m[1]), L) == base


def test_reduced_multiplicities():
    assert reduced_multiplicities(M1, M2, 1, 1) == (3, 3)
    assert reduced_multiplicities((-1, -2), (1, 0), 1, 2) == (2, 4)
    assert reduced_multiplicities((-1, -1), (1, 0), 2, 3) == (2, 3)
    assert reduced_multiplicities((1, 0), (0, 1), 1, 5) == (1, 5)


def test_root_diagram_trivial_and_cube():
    one = TruncatedSeries.one(6)
    cube = (one + TruncatedSeries.monomial((1, 0), 1, order=6)).int_pow(3)
    from tropvert.scattering import ScatteringDiagram, Wall

    D = ScatteringDiagram([Wall((1, 0), True, cube)], 6)
    rooted = root_diagram(D, Sublattice(M1, M2))
    assert rooted.walls[0].label == one + TruncatedSeries.monomial((1, 0), 1, order=6)
    unchanged = root_diagram(D, STANDARD)
    assert unchanged.walls[0].label == cube


def test_completion_commutes_with_root():
    # complete, transport, root == complete the rooted diagram directly
    L = Sublattice(M1, M2)
    direct = complete(make_basic([M1, M2], [1, 1], 8))
    std = complete(make_basic([(1, 0), (0, 1)], [3, 3], 8))
    transported = map_diagram(std, L.from_standard(), lattice=L)
    assert root_diagram(transported, L) == direct


def test_map_diagram_preserves_consistency():
    S = complete(make_basic([(1, 0), (0, 1)], [2, 2], 6))
    sheared = map_diagram(S, ((1, 1), (0, 1)))
    assert is_consistent(sheared)


def test_reduce_basic_examples():
    one = TruncatedSeries.one(4)
    assert reduce_basic(M1, M2, 1, 1, M1, 4) == one + TruncatedSeries.monomial(M1, 1, order=4)
    got = reduce_basic((1, 0), (0, 1), 1, 1, (1, 1), 4)
    assert got == one + TruncatedSeries.monomial((1, 1), 2, order=4)
    with pytest.raises(ValueError):
        reduce_basic(M1, M2, 1, 1, (2, 3), 4)


def test_coef_via_reduction_examples():
    S = standard_completion(M1, M2, 1, 1, 4)
    assert coef_via_reduction(M1, M2, 1, 1, M1, 4, completed=S) == [(1, Fraction(1))]
    # (1,1) misses the span Z x 3Z of the directions
    assert coef_via_reduction(M1, M2, 1, 1, (1, 1), 4, completed=S) == []
    # the first discrete ray: phi(2,-3) = (3,1)
    poly = coef_via_reduction(M1, M2, 1, 1, (2, -3), 4, completed=S)
    assert poly and poly_eval_at_one(poly) != 0


def test_reduction_agrees_with_direct_completion():
    # oracle equivalence: reduced coefficients match the direct completion of
    # the two-wall diagram on every lattice point of bounded degree
    order = 6
    direct = complete(make_basic([M1, M2], [1, 1], order))
    std = standard_completion(M1, M2, 1, 1, order)
    for a in range(0, order + 1):
        for b in range(0, order + 1 - a):
            if a == 0 and b == 0:
                continue
            m = (a * M1[0] + b * M2[0], a * M1[1] + b * M2[1])
            via_reduction = coef_via_reduction(M1, M2, 1, 1, m, order, completed=std)
            direct_poly = [(k, Fraction(c)) for k, c in scattering_coef(direct, m)]
            assert [(k, Fraction(c)) for k, c in via_reduction] == direct_poly, m
