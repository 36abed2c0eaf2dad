"""Exact truncated power series on a rank-two monomial lattice.

Elements are finite sums c * t^k * z^m with c an exact rational, k a
nonnegative t-order and m = (a, b) a lattice point of Z^2 (so z^m = x^a y^b
in Laurent-monomial notation).  Every series carries a global truncation
bound: terms of t-order beyond it are dropped by all operations, which makes
the truncated Laurent-coefficient ring exact and finite.

Coefficients are stored as Python ints when integral and ``Fraction``
otherwise; all arithmetic is exact.  Series are immutable by convention:
operations return new objects and never mutate their arguments.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple


class LatticeVector(NamedTuple):
    """Point of the monomial lattice Z^2."""

    a: int
    b: int


def as_vector(m) -> LatticeVector:
    a, b = m
    return LatticeVector(int(a), int(b))


def vector_gcd(m) -> int:
    """gcd of the coordinates; undefined (error) on the zero vector."""
    a, b = m
    if a == 0 and b == 0:
        raise ValueError("gcd of the zero lattice vector is undefined")
    return gcd(abs(a), abs(b))


def primitive_part(m) -> LatticeVector:
    """The primitive vector spanning the same ray as m."""
    g = vector_gcd(m)
    return LatticeVector(m[0] // g, m[1] // g)


def is_primitive(m) -> bool:
    return m != (0, 0) and vector_gcd(m) == 1


def rot90(m) -> LatticeVector:
    """Counterclockwise quarter turn; a primitive annihilator of m when m is primitive."""
    return LatticeVector(-m[1], m[0])


def dot(n, m) -> int:
    return n[0] * m[0] + n[1] * m[1]


def cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _norm_coeff(c):
    # Keep coefficients as plain ints whenever possible: integer paths
    # dominate the scattering computations and are much faster than Fraction.
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return c.numerator
        return c
    return c


def coeff_str(c) -> str:
    """Serialize an exact rational as "num/den" (always with denominator)."""
    f = Fraction(c)
    return "%d/%d" % (f.numerator, f.denominator)


def coeff_from_str(s: str):
    num, _, den = s.partition("/")
    if den == "":
        den = "1"
    return _norm_coeff(Fraction(int(num), int(den)))


def poly_eval_at_one(pairs: Iterable[tuple]):
    """Evaluate a t-polynomial given as (k, coeff) pairs at t = 1."""
    total = 0
    for _, c in pairs:
        total += c
    return _norm_coeff(total)


class TruncatedSeries:
    """Finite sum of exact-rational terms c * t^k * z^(a,b), truncated in t.

    ``terms`` maps (a, b, k) to a nonzero coefficient; keys with k > order
    never occur.  Addition and multiplication require equal truncation
    orders, which keeps accidental precision mixing from going unnoticed.
    """

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms=None):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        normalized = {}
        if terms:
            for (a, b, k), c in terms.items():
                if k < 0:
                    raise ValueError("negative t-order in series term")
                if k > order:
                    continue
                c = _norm_coeff(c)
                if c != 0:
                    normalized[(int(a), int(b), int(k))] = c
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", normalized)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls(order, {(0, 0, 0): 1})

    @classmethod
    def monomial(cls, m, k: int = 0, coeff=1, *, order: int) -> "TruncatedSeries":
        a, b = m
        return cls(order, {(int(a), int(b), int(k)): coeff})

    # -- basic structure ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_one(self) -> bool:
        return self.terms == {(0, 0, 0): 1}

    def constant_term(self):
        return self.terms.get((0, 0, 0), 0)

    def is_one_mod_t(self) -> bool:
        """True when the series is 1 plus terms of t-order at least 1."""
        if self.constant_term() != 1:
            return False
        return all(key == (0, 0, 0) or key[2] >= 1 for key in self.terms)

    def truncate(self, order: int) -> "TruncatedSeries":
        """Recast at a different truncation order, dropping terms above it."""
        if order == self.order:
            return self
        return TruncatedSeries(order, {key: c for key, c in self.terms.items() if key[2] <= order})

    def t_slice(self, k: int) -> dict:
        """Terms of exact t-order k, as a map (a, b) -> coefficient."""
        return {(a, b): c for (a, b, kk), c in self.terms.items() if kk == k}

    def min_t_order(self):
        """Smallest t-order with a nonzero term of positive t-order, or None."""
        orders = [k for (_, _, k) in self.terms if k > 0]
        return min(orders) if orders else None

    def _require_same_order(self, other: "TruncatedSeries"):
        if self.order != other.order:
            raise ValueError(
                "mismatched truncation orders: %d vs %d" % (self.order, other.order)
            )

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_same_order(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = _norm_coeff(s)
        return TruncatedSeries(self.order, out)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, c) -> "TruncatedSeries":
        c = _norm_coeff(c)
        if c == 0:
            return TruncatedSeries.zero(self.order)
        return TruncatedSeries(self.order, {key: v * c for key, v in self.terms.items()})

    def shift(self, m, k: int = 0) -> "TruncatedSeries":
        """Multiply by the monomial t^k z^m."""
        da, db = m
        out = {}
        for (a, b, kk), c in self.terms.items():
            if kk + k <= self.order:
                out[(a + da, b + db, kk + k)] = c
        return TruncatedSeries(self.order, out)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_same_order(other)
        order = self.order
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        out: dict = {}
        for (a1, b1, k1), c1 in small.items():
            room = order - k1
            for (a2, b2, k2), c2 in big.items():
                if k2 > room:
                    continue
                key = (a1 + a2, b1 + b2, k1 + k2)
                s = out.get(key, 0) + c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return TruncatedSeries(order, out)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse of a series congruent to 1 modulo t."""
        if not self.is_one_mod_t():
            raise ValueError("inverse requires constant term 1 and no other t^0 terms")
        u = self - TruncatedSeries.one(self.order)
        # Horner iteration for 1/(1+u); converges because u has t-order >= 1.
        inv = TruncatedSeries.one(self.order)
        for _ in range(self.order):
            inv = TruncatedSeries.one(self.order) - u * inv
        return inv

    def int_pow(self, e: int) -> "TruncatedSeries":
        """Integer power; negative exponents require a series that is 1 mod t."""
        if e == 0:
            return TruncatedSeries.one(self.order)
        base = self
        if e < 0:
            base = self.inverse()
            e = -e
        result = None
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    __pow__ = int_pow

    def coefficient(self, m) -> list:
        """All (k, coeff) pairs whose monomial is exactly m, sorted by k."""
        a, b = int(m[0]), int(m[1])
        pairs = [(k, c) for (aa, bb, k), c in self.terms.items() if aa == a and bb == b]
        pairs.sort()
        return pairs

    def substitute(self, phi) -> "TruncatedSeries":
        """Apply an invertible linear change of lattice variables z^m -> z^(phi m).

        ``phi`` is a 2x2 matrix given as ((r00, r01), (r10, r11)) with exact
        rational entries.  Every image monomial must be integral.
        """
        (r00, r01), (r10, r11) = phi
        r00, r01, r10, r11 = (Fraction(r) for r in (r00, r01, r10, r11))
        if r00 * r11 - r01 * r10 == 0:
            raise ValueError("substitution matrix must be invertible")
        out = {}
        for (a, b, k), c in self.terms.items():
            na = r00 * a + r01 * b
            nb = r10 * a + r11 * b
            if na.denominator != 1 or nb.denominator != 1:
                raise ValueError(
                    "non-integral image monomial (%s, %s) under substitution" % (na, nb)
                )
            out[(na.numerator, nb.numerator, k)] = c
        return TruncatedSeries(self.order, out)

    # -- printing ------------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "<series 0 (mod t^%d)>" % (self.order + 1)
        bits = []
        for (a, b, k) in sorted(self.terms, key=lambda key: (key[2], key[0], key[1])):
            c = self.terms[(a, b, k)]
            piece = str(c)
            if k:
                piece += "*t" if k == 1 else "*t^%d" % k
            if (a, b) != (0, 0):
                piece += "*z^(%d,%d)" % (a, b)
            bits.append(piece)
        shown = " + ".join(bits[:8])
        if len(bits) > 8:
            shown += " + ... (%d terms)" % len(bits)
        return "<series %s (mod t^%d)>" % (shown, self.order + 1)

    # -- serialization ---------------------------------------------------------

    def to_json_obj(self) -> list:
        """JSON form: [{"m": [a, b], "t": k, "c": "num/den"}, ...] sorted by (k, a, b)."""
        keys = sorted(self.terms, key=lambda key: (key[2], key[0], key[1]))
        return [
            {"m": [a, b], "t": k, "c": coeff_str(self.terms[(a, b, k)])}
            for (a, b, k) in keys
        ]

    @classmethod
    def from_json_obj(cls, obj, *, order: int) -> "TruncatedSeries":
        terms = {}
        for entry in obj:
            a, b = entry["m"]
            terms[(int(a), int(b), int(entry["t"]))] = coeff_from_str(entry["c"])
        return cls(order, terms)


# -- transcendental operations ------------------------------------------------


def log(f: TruncatedSeries) -> TruncatedSeries:
    """Logarithm of a series that is 1 modulo t."""
    if not f.is_one_mod_t():
        raise ValueError("log requires constant term 1 and no other t^0 terms")
    u = f - TruncatedSeries.one(f.order)
    result = TruncatedSeries.zero(f.order)
    power = TruncatedSeries.one(f.order)
    for j in range(1, f.order + 1):
        power = power * u
        if not power:
            break
        result = result + power.scale(Fraction((-1) ** (j + 1), j))
    return result


def exp(g: TruncatedSeries) -> TruncatedSeries:
    """Exponential of a series with zero constant term and no other t^0 terms."""
    if g.constant_term() != 0 or any(k == 0 for (_, _, k) in g.terms):
        raise ValueError("exp requires all terms to have positive t-order")
    result = TruncatedSeries.one(g.order)
    power = TruncatedSeries.one(g.order)
    factorial = 1
    for j in range(1, g.order + 1):
        power = power * g
        if not power:
            break
        factorial *= j
        result = result + power.scale(Fraction(1, factorial))
    return result


def nth_root(f: TruncatedSeries, n: int) -> TruncatedSeries:
    """The unique n-th root of f that is 1 modulo t (f itself must be 1 mod t)."""
    if n <= 0:
        raise ValueError("root index must be a positive integer")
    if n == 1:
        return f
    return exp(log(f).scale(Fraction(1, n)))
