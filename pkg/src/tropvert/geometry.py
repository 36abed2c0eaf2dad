"""Numerical plane-curve arithmetic: adjunction counts, degree certification,
the existence predicate for index-zero cuspidal plane curves, and the
symmetry/mutation maps acting on cusp data.

Everything here is exact integer and rational arithmetic; the quadratic
irrationalities (the accumulation point in particular) are compared through
sign tests on their defining polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from . import delpezzo
from .embed import fib


def delta(d: int, p: int, q: int) -> Fraction:
    """Algebraic count of singularities away from the distinguished cusp."""
    if d < 1 or p < 1 or q < 1:
        raise ValueError("degree and cusp data must be positive")
    return Fraction((d - 1) * (d - 2), 2) - Fraction((p - 1) * (q - 1), 2)


def delta_minus(d: int, p: int, q: int) -> Fraction:
    """The same count one degree down; negative means degree d-1 is impossible."""
    if d < 1 or p < 1 or q < 1:
        raise ValueError("degree and cusp data must be positive")
    return Fraction((d - 2) * (d - 3), 2) - Fraction((p - 1) * (q - 1), 2)


@dataclass(frozen=True)
class CuspProfile:
    """Index-zero cusp data (p, q) on the plane, with its adjunction count.

    ``K`` is the surface degree parameter (7 for the plane, where the
    index-zero condition is p + q = 3d).  ``integral`` flags whether the
    count is an integer; non-integral values arise from inputs violating
    coprimality or divisibility and are kept as exact rationals for
    exploratory sweeps.
    """

    p: int
    q: int
    d: int
    K: int
    delta: Fraction
    integral: bool


def cusp_profile(p: int, q: int) -> CuspProfile:
    if (p + q) % 3:
        raise ValueError("index-zero plane cusp data needs p + q divisible by 3")
    d = (p + q) // 3
    value = delta(d, p, q)
    return CuspProfile(p, q, d, 7, value, value.denominator == 1)


class DminResult(NamedTuple):
    value: int
    certified: bool


def d_min_certified(p: int, q: int) -> DminResult:
    """Minimal degree (p + q)/3 for a plane curve with a (p, q) cusp, with certificate.

    Certified when adjunction rules out degree d - 1 (delta_minus < 0), or
    automatically when the adjunction count is at most 4.  Requires the
    index-zero curve to exist in the first place.
    """
    if gcd(p, q) != 1:
        raise ValueError("cusp data must be coprime")
    if (p + q) % 3:
        raise ValueError("p + q must be divisible by 3")
    if not delpezzo.exists_wp_curve("CP2", p, q).exists:
        raise ValueError("no index-zero (p,q)-cuspidal plane curve exists for (%d,%d)" % (p, q))
    d = (p + q) // 3
    value = delta(d, p, q)
    certified = delta_minus(d, p, q) < 0 or value <= 4
    return DminResult(d, certified)


def plane_curve_exists(p: int, q: int) -> bool:
    """Existence of an index-zero rational plane curve with a (p, q) cusp, p > q > 1.

    True exactly for the odd-index Fibonacci pairs (F(k+4), F(k)) and for
    slope beyond the accumulation point, tested as p^2 - 7pq + q^2 > 0 with
    2p > 7q.
    """
    if gcd(p, q) != 1:
        raise ValueError("cusp data must be coprime")
    if not (p > q > 1):
        raise ValueError("predicate requires p > q > 1")
    if (p + q) % 3:
        raise ValueError("p + q must be divisible by 3")
    k = 3
    while fib(k) <= q:
        if fib(k) == q and fib(k + 4) == p and k % 2 == 1:
            return True
        k += 1
    return p * p - 7 * p * q + q * q > 0 and 2 * p > 7 * q


# -- symmetries of the corner slopes ------------------------------------------


def S_map(K: int, x) -> Fraction:
    """x -> K - 1/x on (1, infinity); orbits step along one staircase strand."""
    x = Fraction(x)
    if x <= 1:
        raise ValueError("S is defined on (1, infinity)")
    return K - 1 / x


def R_map(K: int, x) -> Fraction:
    """x -> K + 1/(x - K) on (K, infinity); an involution fixing K + 1."""
    x = Fraction(x)
    if x <= K:
        raise ValueError("R is defined on (K, infinity)")
    return K + 1 / (x - K)


def s_orbit(K: int, x, steps: int) -> list:
    """The first ``steps`` images of x under S, x included."""
    out = [Fraction(x)]
    for _ in range(steps):
        out.append(S_map(K, out[-1]))
    return out


def phi_branch(K: int, p: int, q: int) -> tuple:
    """Action of the first Geiser-type involution on cusp data."""
    if p < 0 or q < 0 or (p == 0 and q == 0):
        raise ValueError("cusp data must be nonnegative and not both zero")
    if K * p > q:
        return (p, K * p - q)
    return (q - K * p, p + K * (q - K * p))


def psi_branch(K: int, p: int, q: int) -> tuple:
    """Action of the second Geiser-type involution on cusp data."""
    if p < 0 or q < 0 or (p == 0 and q == 0):
        raise ValueError("cusp data must be nonnegative and not both zero")
    if p > K * q:
        return (q + K * (p - K * q), p - K * q)
    return (K * q - p, q)


# -- mutation and seed reduction ----------------------------------------------


def mutate(K: int, p: int, q: int) -> tuple:
    return (q, K * q - p)


def quad_form(K: int, p: int, q: int) -> int:
    return p * p - K * p * q + q * q


def light_cone_ok(K: int, p: int, q: int, delta_count: int) -> bool:
    """The intersection-form inequality every index-zero curve class satisfies."""
    return quad_form(K, p, q) + (K + 2) * (1 - 2 * delta_count) >= 0


class SeedReductionError(RuntimeError):
    pass


def seed_reduce(K: int, p: int, q: int, delta_count: int, max_steps: int = 50) -> tuple:
    """Drive (p, q) down by mutation until a seed pair is reached.

    Terminates at q = 1 with delta 0 (skipping past the excluded pair
    (K - 1, 1)), at q = 2 with delta 0 when K = 3, or as soon as mutation
    stops decreasing q.  Returns (p0, q0, steps).
    """
    if not 3 <= K <= 7:
        raise ValueError("degree parameter K must lie in 3..7")
    if p < 1 or q < 1:
        raise ValueError("cusp data must be positive")
    steps = 0
    while steps <= max_steps:
        if delta_count == 0 and q == 1 and (p, q) != (K - 1, 1):
            return (p, q, steps)
        if delta_count == 0 and q == 2 and K == 3:
            return (p, q, steps)
        p2, q2 = mutate(K, p, q)
        if (p, q) == (K - 1, 1) and delta_count == 0:
            # excluded pair; one more mutation lands on (1, 1)
            p, q = p2, q2
        elif 1 <= q2 < q:
            p, q = p2, q2
        else:
            return (p, q, steps)
        steps += 1
    raise SeedReductionError("mutation chain did not terminate within %d steps" % max_steps)
