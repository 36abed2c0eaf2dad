"""The stabilized ellipsoid embedding function of the round ball, exactly.

Below the accumulation point tau^4 = (7 + 3*sqrt(5))/2 the function is the
Fibonacci staircase: linear of slope 1/sqrt(alpha_k) on [alpha_k, beta_k] and
constant sqrt(alpha_(k+1)) on [beta_k, alpha_(k+1)], with

    alpha_k = F(2k+1)^2 / F(2k-1)^2,    beta_k = F(2k+3) / F(2k-1).

Beyond tau^4 it equals 3a/(a+1).  Since sqrt(alpha_k) is rational, every
value at rational a is rational, and the regime is decided by the exact sign
of a^2 - 7a + 1; no floating point enters.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple


def fib(n: int) -> int:
    """Fibonacci number with F(1) = F(2) = 1."""
    if n < 1:
        raise ValueError("Fibonacci index must be positive")
    return _fib(n)


def _fib(n: int) -> int:
    # extended two steps down: F(0) = 0, F(-1) = 1, so alpha_0 = beta_0 work out
    if n == -1:
        return 1
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def alpha(k: int) -> Fraction:
    """Left endpoint of the k-th sloped step; alpha_0 = 1."""
    if k < 0:
        raise ValueError("step index must be nonnegative")
    return Fraction(_fib(2 * k + 1) ** 2, _fib(2 * k - 1) ** 2)


def beta(k: int) -> Fraction:
    """x-value of the k-th outer corner; beta_0 = 2."""
    if k < 0:
        raise ValueError("step index must be nonnegative")
    return Fraction(_fib(2 * k + 3), _fib(2 * k - 1))


class StaircaseStep(NamedTuple):
    """One staircase step: endpoints and the two closed-form values on it."""

    k: int
    alpha: Fraction
    beta: Fraction
    slope: Fraction
    plateau: Fraction


def staircase_step(k: int) -> StaircaseStep:
    """Step data at index k: c(a) = slope * a on [alpha, beta], then plateau."""
    return StaircaseStep(
        k,
        alpha(k),
        beta(k),
        Fraction(_fib(2 * k - 1), _fib(2 * k + 1)),
        Fraction(_fib(2 * k + 3), _fib(2 * k + 1)),
    )


def is_beyond_accumulation(a) -> bool:
    """Exact test a >= tau^4 for rational a (equality cannot occur)."""
    a = Fraction(a)
    return 2 * a >= 7 and a * a - 7 * a + 1 >= 0


class EmbedValue(NamedTuple):
    c: Fraction
    regime: str
    step: "int | None"

    @property
    def regime_tag(self) -> str:
        if self.step is None:
            return self.regime
        return "%s-%d" % (self.regime, self.step)


def c_ball_stab(a) -> EmbedValue:
    """Value of the stabilized embedding function at rational a >= 1, with regime.

    Regimes: ("step-slope", k) on [alpha_k, beta_k], ("step-plateau", k) on
    [beta_k, alpha_(k+1)], and "folding" (3a/(a+1)) beyond tau^4.  At the
    shared endpoints the two formulas agree; boundary points alpha_k carry
    the slope tag, beta_k likewise.
    """
    a = Fraction(a)
    if a < 1:
        raise ValueError("the embedding function is defined for a >= 1")
    if is_beyond_accumulation(a):
        return EmbedValue(3 * a / (a + 1), "folding", None)
    k = 0
    while True:
        if a <= beta(k):
            return EmbedValue(a * Fraction(_fib(2 * k - 1), _fib(2 * k + 1)), "step-slope", k)
        if a < alpha(k + 1):
            return EmbedValue(Fraction(_fib(2 * k + 3), _fib(2 * k + 1)), "step-plateau", k)
        k += 1


def folding_bound(a) -> Fraction:
    """Upper bound 3a/(a+1) from symplectic folding; sharp beyond tau^4."""
    a = Fraction(a)
    if a < 1:
        raise ValueError("defined for a >= 1")
    return 3 * a / (a + 1)


def unimonotone_bound(a) -> Fraction:
    """Lower bound a/(a+1) carried by an index-zero curve on a unimonotone target."""
    a = Fraction(a)
    if a <= 0:
        raise ValueError("defined for positive a")
    return a / (a + 1)


def lower_bound_from_curve(p: int, q: int) -> Fraction:
    """The embedding obstruction p/(p+q) carried by an index-zero (p, q)-cuspidal curve."""
    if p < 1 or q < 1:
        raise ValueError("cusp data must be positive")
    return Fraction(p, p + q)


def breakpoints(a_min, a_max, max_step: int = 24) -> list:
    """The alpha_k and beta_k inside [a_min, a_max] for k <= max_step, sorted.

    The breakpoints accumulate at tau^4, so a step cap is needed whenever the
    range covers the accumulation point.
    """
    a_min, a_max = Fraction(a_min), Fraction(a_max)
    points = []
    for k in range(max_step + 1):
        ak, bk = alpha(k), beta(k)
        for val in (ak, bk):
            if a_min <= val <= a_max:
                points.append(val)
        if ak > a_max:
            break
    return sorted(set(points))


def staircase_table(a_min, a_max, samples: int) -> list:
    """Exact sample rows (a, c(a), regime tag) including all breakpoints in range."""
    a_min, a_max = Fraction(a_min), Fraction(a_max)
    if not 1 <= a_min < a_max:
        raise ValueError("need 1 <= a_min < a_max")
    if samples < 2:
        raise ValueError("need at least two sample points")
    grid = [a_min + (a_max - a_min) * Fraction(i, samples - 1) for i in range(samples)]
    points = sorted(set(grid) | set(breakpoints(a_min, a_max)))
    rows = []
    for a in points:
        value = c_ball_stab(a)
        rows.append((a, value.c, value.regime_tag))
    return rows
