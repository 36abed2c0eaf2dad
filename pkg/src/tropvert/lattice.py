"""The change-of-lattice trick: nu indices, root diagrams, and reduction.

A finite-index sublattice M' of Z^2 rescales the dual pairing: the primitive
integral functional killing a direction differs from the primitive M'-dual
functional by an integer factor nu.  Replacing every wall label of a
consistent M'-diagram by its nu-th root gives a consistent Z^2-diagram, and
conversely a basic diagram on noncolinear directions m1, m2 reduces to the
standard diagram on e1, e2 with multiplicities scaled by nu(m_i).
"""

from __future__ import annotations

from fractions import Fraction

from .scattering import ScatteringDiagram, Wall, complete, make_basic, ray_function, scattering_coef
from .series import TruncatedSeries, as_vector, is_primitive, nth_root, primitive_part


class Sublattice:
    """Rank-two sublattice of Z^2 spanned by two independent generators."""

    __slots__ = ("g1", "g2", "index", "_det")

    def __init__(self, g1, g2):
        g1, g2 = as_vector(g1), as_vector(g2)
        det = g1.a * g2.b - g1.b * g2.a
        if det == 0:
            raise ValueError("sublattice generators must be linearly independent")
        object.__setattr__(self, "g1", g1)
        object.__setattr__(self, "g2", g2)
        object.__setattr__(self, "_det", det)
        object.__setattr__(self, "index", abs(det))

    def __setattr__(self, name, value):
        raise AttributeError("Sublattice is immutable")

    def __repr__(self):
        return "Sublattice(%s, %s)" % (tuple(self.g1), tuple(self.g2))

    def coordinates(self, m):
        """Coordinates of m in the generator basis, or None if m is not in the sublattice."""
        a, b = int(m[0]), int(m[1])
        # Solve u*g1 + v*g2 = m by Cramer's rule.
        num_u = a * self.g2.b - b * self.g2.a
        num_v = self.g1.a * b - self.g1.b * a
        if num_u % self._det or num_v % self._det:
            return None
        return (num_u // self._det, num_v // self._det)

    def __contains__(self, m) -> bool:
        return self.coordinates(m) is not None

    def to_standard(self):
        """Matrix of the isomorphism sending g1, g2 to e1, e2 (rational entries)."""
        d = self._det
        return (
            (Fraction(self.g2.b, d), Fraction(-self.g2.a, d)),
            (Fraction(-self.g1.b, d), Fraction(self.g1.a, d)),
        )

    def from_standard(self):
        """Matrix sending e1, e2 back to g1, g2 (integer entries)."""
        return ((self.g1.a, self.g2.a), (self.g1.b, self.g2.b))


STANDARD = Sublattice((1, 0), (0, 1))


def nu(m, sub: Sublattice) -> int:
    """Index of the integral annihilator of m inside its sublattice-dual annihilator.

    Depends only on the ray through m, so it is defined for any nonzero
    integer vector: with m0 the primitive direction and k0 the least k >= 1
    with k*m0 in the sublattice, nu = index / k0.
    """
    m = as_vector(m)
    if m == (0, 0):
        raise ValueError("nu is undefined on the zero vector")
    m0 = primitive_part(m)
    for k in range(1, sub.index + 1):
        if sub.index % k:
            continue
        if (k * m0.a, k * m0.b) in sub:
            return sub.index // k
    raise AssertionError("index * m0 must lie in every finite-index sublattice")


def map_diagram(diagram: ScatteringDiagram, matrix, lattice=None) -> ScatteringDiagram:
    """Push a diagram through a linear change of coordinates on the lattice.

    Wall rays map to the rays through their images (re-primitivized); labels
    are substituted monomial-by-monomial.  Consistency is preserved for any
    lattice isomorphism.
    """
    walls = []
    for w in diagram.walls:
        (r00, r01), (r10, r11) = matrix
        image = (
            Fraction(r00) * w.direction.a + Fraction(r01) * w.direction.b,
            Fraction(r10) * w.direction.a + Fraction(r11) * w.direction.b,
        )
        if image[0].denominator != 1 or image[1].denominator != 1:
            raise ValueError("wall direction maps outside the integer lattice")
        direction = primitive_part((image[0].numerator, image[1].numerator))
        walls.append(Wall(direction, w.incoming, w.label.substitute(matrix)))
    return ScatteringDiagram(walls, diagram.order, lattice)


def root_diagram(diagram: ScatteringDiagram, sub: Sublattice | None = None) -> ScatteringDiagram:
    """Replace each wall label by its nu(ray)-th root.

    Applied to a diagram that is consistent over the sublattice, the result
    is consistent over Z^2 (completion and rooting commute).
    """
    if sub is None:
        sub = diagram.lattice
    if sub is None:
        raise ValueError("root_diagram needs a sublattice descriptor")
    walls = []
    for w in diagram.walls:
        exponent = nu(w.direction, sub)
        label = w.label if exponent == 1 else nth_root(w.label, exponent)
        walls.append(w.with_label(label))
    return ScatteringDiagram(walls, diagram.order)


# -- reduction of basic two-wall diagrams -------------------------------------


def _check_pair(m1, m2):
    m1, m2 = as_vector(m1), as_vector(m2)
    if not (is_primitive(m1) and is_primitive(m2)):
        raise ValueError("directions must be primitive")
    if m1.a * m2.b - m1.b * m2.a == 0:
        raise ValueError("directions must be noncolinear")
    return m1, m2


def reduced_multiplicities(m1, m2, ell1: int, ell2: int):
    """The standard-diagram exponents (nu(m1)*ell1, nu(m2)*ell2)."""
    m1, m2 = _check_pair(m1, m2)
    sub = Sublattice(m1, m2)
    return nu(m1, sub) * ell1, nu(m2, sub) * ell2


def standard_completion(m1, m2, ell1: int, ell2: int, order: int) -> ScatteringDiagram:
    """Completed standard diagram carrying the reduction of the (m1, m2) diagram."""
    L1, L2 = reduced_multiplicities(m1, m2, ell1, ell2)
    return complete(make_basic([(1, 0), (0, 1)], [L1, L2], order))


def reduce_basic(m1, m2, ell1: int, ell2: int, m, order: int, *, completed=None) -> TruncatedSeries:
    """Ray function of the basic (m1, m2) diagram at m, via one standard completion.

    m must lie in the nonnegative span of m1 and m2; the result is the
    nu(m)-th root of the transported standard label on the matching ray.
    """
    m1, m2 = _check_pair(m1, m2)
    m = as_vector(m)
    if m == (0, 0):
        raise ValueError("ray direction must be nonzero")
    sub = Sublattice(m1, m2)
    coords = sub.coordinates(m)
    if coords is None or coords[0] < 0 or coords[1] < 0:
        raise ValueError("(%d,%d) is not in the nonnegative span of the directions" % tuple(m))
    if completed is None:
        completed = standard_completion(m1, m2, ell1, ell2, order)
    f_std = ray_function(completed, primitive_part(coords))
    f = f_std.substitute(sub.from_standard())
    return nth_root(f, nu(m, sub))


def coef_via_reduction(m1, m2, ell1: int, ell2: int, m, order: int, *, completed=None) -> list:
    """Scattering coefficient of the (m1, m2) diagram at z^m, as (k, coeff) pairs.

    Returns the empty polynomial when m is outside the sublattice spanned by
    m1 and m2.
    """
    m1, m2 = _check_pair(m1, m2)
    m = as_vector(m)
    if m == (0, 0):
        raise ValueError("scattering coefficient of z^0 is undefined")
    sub = Sublattice(m1, m2)
    coords = sub.coordinates(m)
    if coords is None:
        return []
    if completed is None:
        completed = standard_completion(m1, m2, ell1, ell2, order)
    scale = Fraction(1, nu(m, sub))
    return [(k, c * scale) for k, c in scattering_coef(completed, coords)]
