"""Toric-model data for rigid del Pezzo surfaces and well-placed curve counts.

Each surface carries a preferred toric model: incoming directions m_i with
multiplicities l_i, plus a piecewise-linear bijection wp from cusp data
(p, q) to lattice directions.  Counts N(p, q) of well-placed rational curves
are scattering coefficients of the associated basic diagram, computed through
the change-of-lattice reduction for the two-wall models and by direct
completion of the three-wall diagrams.

The two-wall classification (dense region between the quadratic slopes
xi_-, xi_+ versus the two discrete orbit sequences) decides existence without
any completion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd

from .lattice import Sublattice, coef_via_reduction, nu, reduced_multiplicities
from .scattering import complete, make_basic, scattering_coef
from .series import LatticeVector, as_vector, poly_eval_at_one


@dataclass(frozen=True)
class ToricModel:
    """Per-surface record: directions, multiplicities, and the wp branch table.

    ``branches`` lists (lo, hi, rows) with lo <= p/q <= hi the branch domain
    (None for an open end) and rows the integer matrix taking (p, q) to the
    image lattice vector.  ``m_nodal`` is the direction assigned to the
    boundary cusp data (j, 0) ~ (0, j).
    """

    name: str
    K: int
    directions: tuple
    multiplicities: tuple
    m_nodal: tuple
    branches: tuple

    @property
    def degree(self) -> int:
        return self.K + 2

    @property
    def strands(self) -> int:
        return len(self.directions)


def _branch(lo, hi, r11, r12, r21, r22):
    lo = None if lo is None else Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    return (lo, hi, ((r11, r12), (r21, r22)))


MODELS = {
    "CP2": ToricModel(
        name="CP2",
        K=7,
        directions=(LatticeVector(1, 0), LatticeVector(-1, -3)),
        multiplicities=(1, 1),
        m_nodal=LatticeVector(0, -1),
        branches=(
            _branch(2, None, 0, 1, -1, 5),        # (q, 5q - p)
            _branch(Fraction(1, 2), 2, 1, -1, 2, -1),  # (p - q, 2p - q)
            _branch(None, Fraction(1, 2), -1, 0, 2, -1),  # (-p, 2p - q)
        ),
    ),
    "CP1xCP1": ToricModel(
        name="CP1xCP1",
        K=6,
        directions=(LatticeVector(-1, -2), LatticeVector(1, 0)),
        multiplicities=(1, 2),
        m_nodal=LatticeVector(0, -1),
        branches=(
            _branch(3, None, 0, 1, -1, 5),        # (q, 5q - p)
            _branch(1, 3, 1, -2, 1, -1),          # (p - 2q, p - q)
            _branch(None, 1, -1, 0, 1, -1),       # (-p, p - q)
        ),
    ),
    "Bl1": ToricModel(
        name="Bl1",
        K=6,
        directions=(LatticeVector(1, 0), LatticeVector(0, -1), LatticeVector(-1, -2)),
        multiplicities=(1, 1, 1),
        m_nodal=LatticeVector(0, -1),
        branches=(
            _branch(2, None, 0, 1, -1, 4),        # (q, 4q - p)
            _branch(1, 2, 1, -1, 1, 0),           # (p - q, p)
            _branch(Fraction(1, 2), 1, 1, -1, 2, -1),  # (p - q, 2p - q)
            _branch(None, Fraction(1, 2), -1, 0, 2, -1),  # (-p, 2p - q)
        ),
    ),
    "Bl2": ToricModel(
        name="Bl2",
        K=5,
        directions=(LatticeVector(1, 0), LatticeVector(-1, -1), LatticeVector(0, -1)),
        multiplicities=(1, 1, 2),
        m_nodal=LatticeVector(0, -1),
        branches=(
            _branch(2, None, 0, 1, -1, 3),        # (q, 3q - p)
            _branch(1, 2, 1, -1, 0, 1),           # (p - q, q)
            _branch(Fraction(1, 2), 1, 1, -1, 2, -1),  # (p - q, 2p - q)
            _branch(None, Fraction(1, 2), -1, 0, 2, -1),  # (-p, 2p - q)
        ),
    ),
    "Bl3": ToricModel(
        name="Bl3",
        K=4,
        directions=(LatticeVector(-1, -1), LatticeVector(1, 0)),
        multiplicities=(2, 3),
        m_nodal=LatticeVector(0, -1),
        branches=(
            _branch(2, None, 0, 1, -1, 3),        # (q, 3q - p)
            _branch(1, 2, 2, -3, 1, -1),          # (2p - 3q, p - q)
            _branch(None, 1, -1, 0, 1, -1),       # (-p, p - q)
        ),
    ),
    "Bl4": ToricModel(
        name="Bl4",
        K=3,
        directions=(LatticeVector(1, 0), LatticeVector(0, 1)),
        multiplicities=(1, 5),
        m_nodal=LatticeVector(1, 2),
        branches=(
            _branch(Fraction(3, 2), None, 1, -2, 2, -3),  # (p - 2q, 2p - 3q)
            _branch(1, Fraction(3, 2), -1, 1, 2, -3),     # (q - p, 2p - 3q)
            _branch(None, 1, -1, 1, -3, 2),               # (q - p, 2q - 3p)
        ),
    ),
}

SURFACES = tuple(MODELS)


def get_model(surface) -> ToricModel:
    if isinstance(surface, ToricModel):
        return surface
    key = str(surface).strip().lower()
    for name, model in MODELS.items():
        if name.lower() == key:
            return model
    raise ValueError("unknown surface %r (expected one of %s)" % (surface, ", ".join(MODELS)))


# -- the fundamental bijection -------------------------------------------------


def wp(surface, p: int, q: int) -> LatticeVector:
    """Image of cusp data (p, q) under the piecewise-linear bijection.

    The boundary convention sends (j, 0) and (0, j) to j times the nodal
    direction, consistently with the limits of the outer branches.
    """
    model = get_model(surface)
    p, q = int(p), int(q)
    if p < 0 or q < 0 or (p == 0 and q == 0):
        raise ValueError("cusp data must be nonnegative and not both zero")
    if q == 0 or p == 0:
        j = p + q
        return LatticeVector(j * model.m_nodal[0], j * model.m_nodal[1])
    for lo, hi, rows in model.branches:
        if lo is not None and p * lo.denominator < q * lo.numerator:
            continue
        if hi is not None and p * hi.denominator > q * hi.numerator:
            continue
        (r11, r12), (r21, r22) = rows
        return LatticeVector(r11 * p + r12 * q, r21 * p + r22 * q)
    raise AssertionError("branch domains cover all ratios")


def wp_inverse(surface, m) -> tuple:
    """The unique preimage of m, with (j, 0) as the representative on the axis."""
    model = get_model(surface)
    m = as_vector(m)
    na, nb = model.m_nodal
    # axis representative j * m_nodal, j >= 1
    if m != (0, 0):
        if na != 0:
            j, rem = divmod(m.a, na)
        else:
            j, rem = divmod(m.b, nb)
        if rem == 0 and j >= 1 and m == (j * na, j * nb):
            return (j, 0)
    for lo, hi, rows in model.branches:
        (r11, r12), (r21, r22) = rows
        det = r11 * r22 - r12 * r21
        num_p = r22 * m.a - r12 * m.b
        num_q = -r21 * m.a + r11 * m.b
        if num_p % det or num_q % det:
            continue
        p, q = num_p // det, num_q // det
        if p >= 1 and q >= 1 and wp(model, p, q) == m:
            return (p, q)
    raise ValueError("(%d,%d) is not in the image of the bijection for %s" % (m.a, m.b, model.name))


# -- dense region, discrete rays, accumulation point ----------------------------


class QuadraticRoot:
    """Root of an integer quadratic, compared exactly against rationals.

    Represents a root of c2*x^2 + c1*x + c0 with irrational discriminant;
    ``upper`` picks the larger root.  Comparisons test the sign of the
    quadratic at the rational together with its position relative to the
    vertex, so no floating point is involved.
    """

    __slots__ = ("c2", "c1", "c0", "upper")

    def __init__(self, c2, c1, c0, upper: bool):
        self.c2 = Fraction(c2)
        self.c1 = Fraction(c1)
        self.c0 = Fraction(c0)
        self.upper = bool(upper)
        if self.c2 <= 0:
            raise ValueError("leading coefficient must be positive")
        disc = self.c1 * self.c1 - 4 * self.c2 * self.c0
        if disc <= 0:
            raise ValueError("quadratic must have two real roots")

    def _value(self, r: Fraction) -> Fraction:
        return self.c2 * r * r + self.c1 * r + self.c0

    def compare(self, other) -> int:
        """Sign of (self - other) for a rational other."""
        r = Fraction(other)
        v = self._value(r)
        vertex_side = r * 2 * self.c2 + self.c1  # sign of (r - vertex)
        if v == 0:
            # r is a rational root; matching side means equality
            if (vertex_side > 0) == self.upper:
                return 0
            return 1 if self.upper else -1
        if v < 0:
            return 1 if self.upper else -1
        return -1 if vertex_side > 0 else 1

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __eq__(self, other):
        if isinstance(other, QuadraticRoot):
            return (
                (self.c2, self.c1, self.c0, self.upper)
                == (other.c2, other.c1, other.c0, other.upper)
            )
        try:
            return self.compare(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __float__(self):
        from math import sqrt

        disc = self.c1 * self.c1 - 4 * self.c2 * self.c0
        root = sqrt(disc)
        if not self.upper:
            root = -root
        return float((-self.c1 + root) / (2 * self.c2))

    def __repr__(self):
        return "QuadraticRoot(%sx^2 %+sx %+s, %s) ~ %.6f" % (
            self.c2,
            self.c1,
            self.c0,
            "upper" if self.upper else "lower",
            float(self),
        )


def xi_pm(ell1: int, ell2: int) -> tuple:
    """The two boundary slopes of the dense region, (xi_minus, xi_plus).

    These are the roots of t^2/ell2 - t + 1/ell1, requiring ell1*ell2 > 4
    (below that there is no dense region).
    """
    if ell1 * ell2 <= 4:
        raise ValueError("dense region requires ell1 * ell2 > 4")
    # same roots as the integer quadratic ell1*t^2 - ell1*ell2*t + ell2
    return (
        QuadraticRoot(ell1, -ell1 * ell2, ell2, upper=False),
        QuadraticRoot(ell1, -ell1 * ell2, ell2, upper=True),
    )


def in_dense(ell1: int, ell2: int, ab) -> bool:
    """Whether the slope of (a, b) lies strictly between xi_- and xi_+."""
    a, b = int(ab[0]), int(ab[1])
    if a < 1 or b < 1:
        return False
    lo, hi = xi_pm(ell1, ell2)
    slope = Fraction(b, a)
    return lo < slope < hi


def t1_map(ell1: int, ell2: int, ab) -> LatticeVector:
    a, b = ab
    return LatticeVector(ell1 * b - a, b)


def t2_map(ell1: int, ell2: int, ab) -> LatticeVector:
    a, b = ab
    return LatticeVector(a, ell2 * a - b)


def discrete_rays(ell1: int, ell2: int, bound: int) -> list:
    """Both alternating orbit sequences from (1, 0) and (0, 1), with a + b <= bound.

    These are exactly the scattering rays outside the dense region.
    """
    if ell1 * ell2 <= 4:
        raise ValueError("discrete orbit structure requires ell1 * ell2 > 4")
    rays = []
    for start, first in (((1, 0), t2_map), ((0, 1), t1_map)):
        current = as_vector(start)
        use_t2 = first is t2_map
        while True:
            current = (t2_map if use_t2 else t1_map)(ell1, ell2, current)
            use_t2 = not use_t2
            if current.a + current.b > bound:
                break
            rays.append(current)
    return sorted(set(rays))


def is_discrete_ray(ell1: int, ell2: int, ab) -> bool:
    ab = as_vector(ab)
    if ab.a < 1 or ab.b < 1:
        return False
    return ab in discrete_rays(ell1, ell2, ab.a + ab.b)


def a_acc(surface) -> QuadraticRoot:
    """The staircase accumulation point (K + sqrt(K^2 - 4)) / 2, exactly comparable."""
    model = get_model(surface)
    if model.K < 3:
        raise ValueError("accumulation point defined for degree parameter K >= 3")
    return QuadraticRoot(1, -model.K, 1, upper=True)


def is_above_acc(surface, x) -> bool:
    """Exact test x > a_acc for rational x."""
    return a_acc(surface) < Fraction(x)


# -- counts ---------------------------------------------------------------------


_COMPLETION_CACHE: dict = {}


def completed_basic(directions, multiplicities, order: int):
    """Completion of a basic diagram, cached and reused for any lower order."""
    key = (tuple(as_vector(m) for m in directions), tuple(int(l) for l in multiplicities))
    hit = _COMPLETION_CACHE.get(key)
    if hit is not None and hit.order >= order:
        return hit
    diagram = complete(make_basic(key[0], key[1], order))
    _COMPLETION_CACHE[key] = diagram
    return diagram


def _kernel_vector(m1, m2, m3) -> tuple:
    # det(m2,m3) m1 + det(m3,m1) m2 + det(m1,m2) m3 = 0
    r = (
        m2.a * m3.b - m2.b * m3.a,
        m3.a * m1.b - m3.b * m1.a,
        m1.a * m2.b - m1.b * m2.a,
    )
    g = gcd(gcd(abs(r[0]), abs(r[1])), abs(r[2]))
    return (r[0] // g, r[1] // g, r[2] // g)


def _nonneg_representation_sums(model: ToricModel, target) -> list:
    """All values of sum(a_i) over nonnegative integer solutions of sum a_i m_i = target."""
    dirs = model.directions
    target = as_vector(target)
    if len(dirs) == 2:
        coords = Sublattice(dirs[0], dirs[1]).coordinates(target)
        if coords is None or coords[0] < 0 or coords[1] < 0:
            return []
        return [coords[0] + coords[1]]
    m1, m2, m3 = dirs
    r = _kernel_vector(m1, m2, m3)
    det12 = m1.a * m2.b - m1.b * m2.a
    base_a = Fraction(target.a * m2.b - target.b * m2.a, det12)
    base_b = Fraction(m1.a * target.b - m1.b * target.a, det12)
    base = (base_a, base_b, Fraction(0))
    # strong convexity forces mixed signs in r, so the feasible j-interval is bounded
    lo, hi = None, None
    for bval, rval in zip(base, r):
        if rval == 0:
            if bval < 0:
                return []
            continue
        bound = -bval / rval
        if rval > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    if lo is None or hi is None or lo > hi:
        return []
    sums = []
    j = int(lo) - 1
    while j <= hi + 1:
        if lo <= j <= hi:
            entries = [bval + j * rval for bval, rval in zip(base, r)]
            if all(e.denominator == 1 and e >= 0 for e in entries):
                sums.append(int(sum(entries)))
        j += 1
    return sorted(set(sums))


def required_order(surface, target):
    """Least truncation order at which the coefficient at z^target saturates.

    None means the coefficient is identically zero (no ray can carry it).
    """
    model = get_model(surface)
    target = as_vector(target)
    orders = list(_nonneg_representation_sums(model, target))
    for m in model.directions:
        # incoming contribution at target = -kappa * m_i
        if target.a * m.a <= 0 and target.b * m.b <= 0:
            if m.a != 0:
                kappa, rem = divmod(-target.a, m.a)
            else:
                kappa, rem = divmod(-target.b, m.b)
            if rem == 0 and kappa >= 1 and target == (-kappa * m.a, -kappa * m.b):
                orders.append(kappa)
    return max(orders) if orders else None


@dataclass(frozen=True)
class CountResult:
    surface: str
    p: int
    q: int
    wp: LatticeVector
    nu: int
    coef_poly: tuple
    count: int
    order: int


def count_detail(surface, p: int, q: int, order=None) -> CountResult:
    """Count of well-placed rational curves with cusp data (p, q), with provenance.

    The three-wall models (Bl1, Bl2) are handled by direct completion of
    their basic diagram; this extends the proven two-wall reduction route and
    is exact for these models because their directions span the full lattice.
    """
    model = get_model(surface)
    p, q = int(p), int(q)
    if p < 1 or q < 1:
        raise ValueError("cusp data must be positive")
    if gcd(p, q) != 1:
        raise ValueError("cusp data must be coprime")
    target = wp(model, p, q)
    needed = required_order(model, target)
    if needed is None:
        return CountResult(model.name, p, q, target, 1, (), 0, 0)
    if order is None:
        order = needed
    elif order < needed:
        raise ValueError(
            "truncation order %d is below the saturation order %d for (%d,%d)"
            % (order, needed, p, q)
        )
    if model.strands == 2:
        m1, m2 = model.directions
        l1, l2 = model.multiplicities
        L1, L2 = reduced_multiplicities(m1, m2, l1, l2)
        diagram = completed_basic([(1, 0), (0, 1)], [L1, L2], order)
        poly = coef_via_reduction(m1, m2, l1, l2, target, order, completed=diagram)
        index = nu(target, Sublattice(m1, m2))
    else:
        span = Sublattice(model.directions[0], model.directions[1])
        if span.index != 1:
            raise AssertionError("three-wall models are expected to span the full lattice")
        diagram = completed_basic(model.directions, model.multiplicities, order)
        poly = scattering_coef(diagram, target)
        index = 1
    value = poly_eval_at_one(poly)
    value = Fraction(value)
    if value.denominator != 1 or value < 0:
        raise AssertionError("curve count must be a nonnegative integer, got %s" % value)
    return CountResult(
        model.name,
        p,
        q,
        target,
        index,
        tuple((k, Fraction(c)) for k, c in poly),
        int(value),
        order,
    )


def count_N(surface, p: int, q: int, order=None) -> int:
    return count_detail(surface, p, q, order).count


def nu_of_target(surface, target) -> int:
    """nu of a lattice direction with respect to the model's direction span."""
    model = get_model(surface)
    return nu(target, Sublattice(model.directions[0], model.directions[1]))


def conjectural_plane_count(d: int) -> int:
    """Conjectured count 2*(4d-3)! / (d!*(3d-1)!) for cusp data (3d-1, 1)."""
    value = Fraction(2 * factorial(4 * d - 3), factorial(d) * factorial(3 * d - 1))
    if value.denominator != 1:
        raise ValueError("conjectural formula is not integral at d=%d" % d)
    return int(value)


# -- classification ---------------------------------------------------------------


@dataclass(frozen=True)
class ExistsResult:
    surface: str
    p: int
    q: int
    exists: bool
    reason: str
    wp: LatticeVector
    coords: tuple
    swapped: bool


def exists_wp_curve(surface, p: int, q: int) -> ExistsResult:
    """Existence of a well-placed rational curve with cusp data (p, q) (two-wall models).

    Decided without any completion: the image direction either misses the
    sublattice, lands on an initial ray, joins one of the two discrete orbit
    sequences, or falls inside the dense slope region.
    """
    model = get_model(surface)
    if model.strands != 2:
        raise ValueError("classification is implemented for the two-wall models only")
    p, q = int(p), int(q)
    if p < 1 or q < 1:
        raise ValueError("cusp data must be positive")
    if gcd(p, q) != 1:
        raise ValueError("cusp data must be coprime")
    swapped = p < q
    if swapped:
        p, q = q, p
    m1, m2 = model.directions
    target = wp(model, p, q)
    sub = Sublattice(m1, m2)
    coords = sub.coordinates(target)
    if coords is None:
        return ExistsResult(model.name, p, q, False, "lattice-miss", target, (), swapped)
    a, b = coords
    L1, L2 = reduced_multiplicities(m1, m2, *model.multiplicities)
    if (a, b) in ((1, 0), (0, 1), (-1, 0), (0, -1)):
        # an initial ray of the reduced diagram, incoming or its continuation
        return ExistsResult(model.name, p, q, True, "incoming-ray", target, (a, b), swapped)
    if a >= 1 and b >= 1:
        if in_dense(L1, L2, (a, b)):
            return ExistsResult(model.name, p, q, True, "dense-region", target, (a, b), swapped)
        if is_discrete_ray(L1, L2, (a, b)):
            return ExistsResult(
                model.name, p, q, True, "discrete-corner", target, (a, b), swapped
            )
    return ExistsResult(model.name, p, q, False, "none", target, (a, b), swapped)
