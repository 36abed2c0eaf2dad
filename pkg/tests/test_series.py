import random
from fractions import Fraction

import pytest

from tropvert.series import (
    LatticeVector,
    TruncatedSeries,
    exp,
    log,
    nth_root,
    poly_eval_at_one,
    primitive_part,
    vector_gcd,
)


def mono(m, k=1, c=1, order=6):
    return TruncatedSeries.monomial(m, k, c, order=order)


def one(order=6):
    return TruncatedSeries.one(order)


def test_lattice_vector_gcd_and_primitive():
    assert vector_gcd((4, 6)) == 2
    assert primitive_part((4, 6)) == LatticeVector(2, 3)
    assert primitive_part((0, -3)) == LatticeVector(0, -1)
    assert vector_gcd((3, 0)) == 3
    with pytest.raises(ValueError):
        vector_gcd((0, 0))


def test_gcd_scales():
    for k in range(1, 6):
        assert vector_gcd((k * 2, k * 5)) == k * vector_gcd((2, 5))


def test_add_cancellation_and_identity():
    f = one() + mono((1, 0))
    assert f + TruncatedSeries(6, {(0, 0, 0): -1}) == mono((1, 0))
    assert f + TruncatedSeries.zero(6) == f
    assert mono((1, 0)) + mono((1, 0)) == mono((1, 0), c=2)


def test_add_order_mismatch():
    with pytest.raises(ValueError):
        one(3) + one(4)


def test_mul_examples():
    fx = one() + mono((1, 0))
    fy = one() + mono((0, 1))
    prod = fx * fy
    assert prod == one() + mono((1, 0)) + mono((0, 1)) + mono((1, 1), k=2)
    # binomial cube truncated at order 2
    f2 = (one(2) + mono((1, 0), order=2)).int_pow(3)
    assert f2 == one(2) + mono((1, 0), c=3, order=2) + mono((2, 0), k=2, c=3, order=2)
    assert fx * one() == fx


def test_int_pow():
    f = one(3) + mono((1, 0), order=3)
    geom = f.int_pow(-1)
    expected = TruncatedSeries(3, {(0, 0, 0): 1, (1, 0, 1): -1, (2, 0, 2): 1, (3, 0, 3): -1})
    assert geom == expected
    assert f.int_pow(0) == one(3)
    assert f.int_pow(2) == one(3) + mono((1, 0), c=2, order=3) + mono((2, 0), k=2, order=3)
    assert f * geom == one(3)


def test_negative_power_of_non_unit():
    with pytest.raises(ValueError):
        mono((1, 0), k=0).int_pow(-1)


def test_log_exp():
    f = one(3) + mono((1, 0), order=3)
    expected = TruncatedSeries(
        3, {(1, 0, 1): 1, (2, 0, 2): Fraction(-1, 2), (3, 0, 3): Fraction(1, 3)}
    )
    assert log(f) == expected
    g = (one(4) + mono((1, 0), order=4)).int_pow(2) * (one(4) + mono((2, 0), k=2, order=4))
    assert exp(log(g)) == g
    assert log(one(4)) == TruncatedSeries.zero(4)
    some = mono((1, 1), k=2, c=Fraction(3, 7), order=5)
    assert log(exp(some)) == some


def test_log_requires_unit():
    with pytest.raises(ValueError):
        log(mono((1, 0), k=1))
    with pytest.raises(ValueError):
        exp(one(4))


def test_nth_root():
    f = one() + mono((1, 0))
    assert nth_root(f.int_pow(3), 3) == f
    assert nth_root(one(5), 5) == one(5)
    g = one() + mono((1, 1), k=2)
    assert nth_root(g.int_pow(2), 2) == g
    assert nth_root(f, 1) == f
    with pytest.raises(ValueError):
        nth_root(f, 0)


def test_nth_root_power_roundtrip():
    rng = random.Random(7)
    for _ in range(10):
        f = one(5)
        for _ in range(3):
            m = (rng.randint(-2, 2), rng.randint(-2, 2))
            k = rng.randint(1, 3)
            f = f + mono(m, k=k, c=rng.randint(-3, 3), order=5)
        n = rng.randint(2, 4)
        assert nth_root(f, n).int_pow(n) == f


def test_substitute():
    f = one() + mono((1, 0))
    swap = ((0, 1), (1, 0))
    assert f.substitute(swap) == one() + mono((0, 1))
    shear = ((1, 0), (3, 1))
    assert f.substitute(shear) == one() + mono((1, 3))
    ident = ((1, 0), (0, 1))
    assert f.substitute(ident) == f


def test_substitute_non_integral_image():
    f = one() + mono((1, 0))
    third = ((Fraction(1, 3), 0), (0, 1))
    with pytest.raises(ValueError):
        f.substitute(third)


def test_substitute_is_ring_hom():
    rng = random.Random(3)
    phi = ((2, 1), (1, 1))
    for _ in range(10):
        f = one(4)
        g = one(4)
        for _ in range(3):
            f = f + mono((rng.randint(-2, 2), rng.randint(-2, 2)), k=rng.randint(0, 3),
                         c=rng.randint(-2, 2), order=4)
            g = g + mono((rng.randint(-2, 2), rng.randint(-2, 2)), k=rng.randint(0, 3),
                         c=rng.randint(-2, 2), order=4)
        assert (f * g).substitute(phi) == f.substitute(phi) * g.substitute(phi)


def test_coefficient():
    # expand 3*log(1+tx) by the Mercator series: the z^(1,0) part is exactly 3t
    f = log((one() + mono((1, 0))).int_pow(3))
    assert f.coefficient((1, 0)) == [(1, 3)]
    g = one() + mono((1, 1), k=2)
    assert g.coefficient((1, 1)) == [(2, 1)]
    assert g.coefficient((5, 5)) == []
    assert poly_eval_at_one(f.coefficient((1, 0))) == 3


def test_ring_axioms_randomized():
    rng = random.Random(11)

    def random_series():
        f = TruncatedSeries.zero(4)
        for _ in range(rng.randint(1, 4)):
            f = f + mono((rng.randint(-2, 2), rng.randint(-2, 2)), k=rng.randint(0, 4),
                         c=Fraction(rng.randint(-4, 4), rng.randint(1, 3)), order=4)
        return f

    for _ in range(25):
        f, g, h = random_series(), random_series(), random_series()
        assert (f * g) * h == f * (g * h)
        assert f * g == g * f
        assert f * (g + h) == f * g + f * h


def test_truncation_drops_terms():
    f = one() + mono((1, 0), k=5)
    assert f.truncate(3) == one(3)
    assert (mono((1, 0), k=7, order=6)) == TruncatedSeries.zero(6)


def test_serialization_roundtrip_and_sorting():
    f = one() + mono((0, 1), k=2, c=Fraction(5, 3)) + mono((1, 0)) + mono((-1, 2), k=2, c=-2)
    obj = f.to_json_obj()
    keys = [(entry["t"], entry["m"][0], entry["m"][1]) for entry in obj]
    assert keys == sorted(keys)
    assert TruncatedSeries.from_json_obj(obj, order=6) == f
    assert obj[0]["c"] == "1/1"
