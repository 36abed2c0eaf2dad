"""Walls, scattering diagrams, wall-crossing monodromy, and consistent completion.

A wall is an oriented ray through the origin of R^2 together with a series
label supported on positive multiples of the ray's primitive direction.
Incoming walls occupy the ray set R_{<=0} * m (pointing toward the origin),
outgoing walls occupy R_{>=0} * m.  Crossing a wall acts on the monomial ring
by z^v -> label^<n, v> z^v with n the primitive annihilator of the ray that
pairs positively with the crossing velocity.

``complete`` adds outgoing walls order-by-order in t until the total
counterclockwise monodromy around the origin is the identity modulo t^(K+1),
then returns the (unique) minimal consistent diagram at that truncation.

Orientation conventions fixed here: loops run counterclockwise, the base
direction sits just before the first wall in angle order, and a
counterclockwise crossing of a ray with primitive direction d uses the
annihilator rot90(d).  The completed two-wall diagram with unit
multiplicities, whose only new wall is (R_{>=0}(1,1), 1 + t^2 x y), pins all
residual sign choices.
"""

from __future__ import annotations

import functools
import json
from fractions import Fraction

from .series import (
    LatticeVector,
    TruncatedSeries,
    as_vector,
    cross,
    is_primitive,
    log,
    primitive_part,
    rot90,
)


class CompletionError(RuntimeError):
    """Raised when the completion cannot cancel the monodromy at some order.

    This signals an internal inconsistency (a convention or arithmetic bug),
    never a property of the input; an inconsistent diagram is never returned.
    """


class Wall:
    """Labeled oriented ray through the origin."""

    __slots__ = ("direction", "incoming", "label", "_pow_cache")

    def __init__(self, direction, incoming: bool, label: TruncatedSeries):
        direction = as_vector(direction)
        if not is_primitive(direction):
            raise ValueError("wall direction must be a primitive nonzero vector")
        if label.constant_term() != 1:
            raise ValueError("wall label must have constant term 1")
        da, db = direction
        for (a, b, k) in label.terms:
            if (a, b, k) == (0, 0, 0):
                continue
            if k < 1:
                raise ValueError("wall label must be 1 modulo t")
            # kappa * direction with kappa >= 1
            if da != 0:
                kappa, rem = divmod(a, da)
            else:
                kappa, rem = divmod(b, db)
            if rem != 0 or kappa < 1 or (a, b) != (kappa * da, kappa * db):
                raise ValueError(
                    "wall label monomial (%d,%d) is not a positive multiple of %s"
                    % (a, b, (da, db))
                )
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "incoming", bool(incoming))
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_pow_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Wall is immutable")

    @property
    def ray_vector(self) -> LatticeVector:
        """Primitive vector spanning the underlying ray set."""
        if self.incoming:
            return LatticeVector(-self.direction.a, -self.direction.b)
        return self.direction

    def with_label(self, label: TruncatedSeries) -> "Wall":
        return Wall(self.direction, self.incoming, label)

    def __eq__(self, other):
        if not isinstance(other, Wall):
            return NotImplemented
        return (
            self.direction == other.direction
            and self.incoming == other.incoming
            and self.label == other.label
        )

    def __hash__(self):
        return hash((self.direction, self.incoming, self.label))

    def __repr__(self):
        kind = "in" if self.incoming else "out"
        return "Wall(%s, dir=(%d,%d), %r)" % (kind, self.direction.a, self.direction.b, self.label)


def _half_plane(v) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2*pi), measured from the positive x-axis.
    a, b = v
    return 0 if (b > 0 or (b == 0 and a > 0)) else 1


def _ray_angle_cmp(u, v) -> int:
    """Exact counterclockwise comparison of ray directions from angle 0."""
    hu, hv = _half_plane(u), _half_plane(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = cross(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def _wall_sort_key(indexed_wall):
    index, wall = indexed_wall
    return (
        functools.cmp_to_key(_ray_angle_cmp)(wall.ray_vector),
        wall.incoming,
        index,
    )


class ScatteringDiagram:
    """Multiset of walls at a common truncation order.

    ``lattice`` is an optional ambient-lattice descriptor (a
    ``tropvert.lattice.Sublattice``); when absent the ambient lattice is Z^2.
    It is bookkeeping for the change-of-lattice operations and does not enter
    the monodromy, which always pairs against the standard dual lattice.
    """

    __slots__ = ("walls", "order", "lattice")

    def __init__(self, walls, order: int, lattice=None):
        walls = list(walls)
        for w in walls:
            if w.label.order != order:
                raise ValueError("wall label truncation differs from diagram order")
        object.__setattr__(self, "walls", walls)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "lattice", lattice)

    def __setattr__(self, name, value):
        raise AttributeError("ScatteringDiagram is immutable")

    def __eq__(self, other):
        if not isinstance(other, ScatteringDiagram):
            return NotImplemented
        return self.order == other.order and self.sorted_walls() == other.sorted_walls()

    def __repr__(self):
        return "ScatteringDiagram(order=%d, %d walls)" % (self.order, len(self.walls))

    def sorted_walls(self) -> list:
        return _sort_walls(self.walls)

    def incoming_walls(self) -> list:
        return [w for w in self.walls if w.incoming]

    def outgoing_walls(self) -> list:
        return [w for w in self.walls if not w.incoming]

    def wall_on_ray(self, ray_vector, incoming: bool):
        ray_vector = as_vector(ray_vector)
        for w in self.walls:
            if w.incoming == incoming and w.ray_vector == ray_vector:
                return w
        return None


def make_basic(directions, multiplicities, order: int) -> ScatteringDiagram:
    """Initial diagram with incoming walls (R_{<=0} m_i, (1 + t z^(m_i))^(l_i))."""
    directions = [as_vector(m) for m in directions]
    if len(directions) != len(multiplicities):
        raise ValueError("directions and multiplicities must have equal length")
    if len(directions) < 2:
        raise ValueError("a basic diagram needs at least two incoming walls")
    if len(set(directions)) != len(directions):
        raise ValueError("directions must be pairwise distinct")
    walls = []
    for m, ell in zip(directions, multiplicities):
        if not is_primitive(m):
            raise ValueError("direction (%d,%d) is not primitive" % tuple(m))
        ell = int(ell)
        if ell < 1:
            raise ValueError("multiplicities must be positive integers")
        base = TruncatedSeries.one(order) + TruncatedSeries.monomial(m, 1, order=order)
        walls.append(Wall(m, True, base.int_pow(ell)))
    return ScatteringDiagram(walls, order)


# -- wall crossing --------------------------------------------------------------


def _label_power(wall: Wall, s: int, order: int) -> TruncatedSeries:
    """wall.label^s at the given truncation, cached on the wall."""
    cache = wall._pow_cache
    key = (order, s)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if s == 0:
        result = TruncatedSeries.one(order)
    elif s == 1:
        result = wall.label.truncate(order)
    elif s == -1:
        result = wall.label.truncate(order).inverse()
    elif s > 0:
        result = _label_power(wall, s - 1, order) * _label_power(wall, 1, order)
    else:
        result = _label_power(wall, s + 1, order) * _label_power(wall, -1, order)
    cache[key] = result
    return result


def cross_wall(f: TruncatedSeries, wall: Wall, side: int = 1) -> TruncatedSeries:
    """Apply the wall-crossing automorphism z^v -> label^<n, v> z^v to f.

    ``side`` selects the primitive annihilator: +1 takes n = rot90(d) for d
    the primitive ray vector (a counterclockwise crossing), -1 the opposite.
    """
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    n = rot90(wall.ray_vector)
    if side == -1:
        n = LatticeVector(-n.a, -n.b)
    order = f.order
    groups: dict = {}
    for (a, b, k), c in f.terms.items():
        s = n.a * a + n.b * b
        groups.setdefault(s, {})[(a, b, k)] = c
    total = TruncatedSeries.zero(order)
    for s, terms in groups.items():
        part = TruncatedSeries(order, terms)
        if s != 0:
            part = part * _label_power(wall, s, order)
        total = total + part
    return total


def _sort_walls(walls) -> list:
    return [w for _, w in sorted(enumerate(walls), key=_wall_sort_key)]


def _monodromy_images(walls, order: int):
    fx = TruncatedSeries.monomial((1, 0), order=order)
    fy = TruncatedSeries.monomial((0, 1), order=order)
    for wall in _sort_walls(walls):
        fx = cross_wall(fx, wall, 1)
        fy = cross_wall(fy, wall, 1)
    return fx, fy


def loop_monodromy(diagram: ScatteringDiagram, order=None):
    """Total counterclockwise monodromy, as the images of x and y.

    Walls are crossed in exact angle order starting just before the first
    ray; walls sharing a ray commute (their labels pair to zero against the
    shared annihilator), so ties are composed in insertion order.
    """
    if order is None:
        order = diagram.order
    if order > diagram.order:
        raise ValueError("cannot compute monodromy above the diagram truncation")
    return _monodromy_images(diagram.walls, order)


def is_consistent(diagram: ScatteringDiagram, order=None) -> bool:
    fx, fy = loop_monodromy(diagram, order)
    K = fx.order
    return fx == TruncatedSeries.monomial((1, 0), order=K) and fy == TruncatedSeries.monomial(
        (0, 1), order=K
    )


# -- completion ------------------------------------------------------------------


def _deviation_slices(walls, k: int):
    """t^k part of theta(x)/x - 1 and theta(y)/y - 1 for the current walls.

    Also asserts that every order below k has already been cancelled.
    """
    fx, fy = _monodromy_images(walls, k)
    gx = fx.shift((-1, 0)) - TruncatedSeries.one(k)
    gy = fy.shift((0, -1)) - TruncatedSeries.one(k)
    for g, name in ((gx, "x"), (gy, "y")):
        for (_, _, kk) in g.terms:
            if kk < k:
                raise CompletionError(
                    "monodromy deviation of order t^%d survives below the active order %d (%s image)"
                    % (kk, k, name)
                )
    return gx.t_slice(k), gy.t_slice(k)


def _derivation_coefficients(slice_x, slice_y, k: int):
    """Decompose the order-k deviation as a sum of derivations c z^m d_n(m).

    Returns a map m -> c.  The deviation of a product of wall crossings is a
    Hamiltonian derivation, so each monomial's coefficients in the x and y
    images must be proportional to the annihilator pairing; anything else
    aborts the completion.
    """
    coefficients = {}
    for m in set(slice_x) | set(slice_y):
        if m == (0, 0):
            raise CompletionError("z^0 term in monodromy deviation at order %d" % k)
        m0 = primitive_part(m)
        n = rot90(m0)
        cx = slice_x.get(m, 0)
        cy = slice_y.get(m, 0)
        if n.a != 0:
            c = Fraction(cx, n.a)
        else:
            c = Fraction(cy, n.b)
        if cx != c * n.a or cy != c * n.b:
            raise CompletionError(
                "deviation at z^(%d,%d), order %d, is not a wall derivation" % (m[0], m[1], k)
            )
        if c != 0:
            coefficients[m] = c
    return coefficients


def complete(diagram: ScatteringDiagram, *, verify_each_order: bool = True) -> ScatteringDiagram:
    """Minimal consistent completion by outgoing walls, modulo t^(order+1).

    For k = 1..order: read the order-k deviation of the loop monodromy as a
    sum of derivations c t^k z^m d_n over outgoing directions, append or
    merge an outgoing wall factor (1 - c t^k z^m) on each ray, and re-verify
    the order before moving on.  Same-ray corrections are merged into one
    wall, so the output is minimal by construction.
    """
    K = diagram.order
    walls = _merge_same_rays(diagram.walls)
    out_index = {w.ray_vector: i for i, w in enumerate(walls) if not w.incoming}

    for k in range(1, K + 1):
        slice_x, slice_y = _deviation_slices(walls, k)
        if not slice_x and not slice_y:
            continue
        corrections = _derivation_coefficients(slice_x, slice_y, k)
        by_ray: dict = {}
        for m, c in corrections.items():
            by_ray.setdefault(primitive_part(m), []).append((m, c))
        for m0, terms in by_ray.items():
            factor = TruncatedSeries.one(K)
            for m, c in terms:
                factor = factor - TruncatedSeries.monomial(m, k, c, order=K)
            i = out_index.get(m0)
            if i is None:
                out_index[m0] = len(walls)
                walls.append(Wall(m0, False, factor))
            else:
                walls[i] = walls[i].with_label(walls[i].label * factor)
        if verify_each_order:
            check_x, check_y = _deviation_slices(walls, k)
            if check_x or check_y:
                raise CompletionError("order-%d correction failed to cancel the monodromy" % k)

    walls = [w for w in walls if not w.label.is_one()]
    result = ScatteringDiagram(_sort_walls(walls), K, diagram.lattice)
    if not is_consistent(result):
        raise CompletionError("completed diagram failed the final consistency check")
    return result


def _merge_same_rays(walls) -> list:
    merged: list = []
    index: dict = {}
    for w in walls:
        key = (w.ray_vector, w.incoming)
        i = index.get(key)
        if i is None:
            index[key] = len(merged)
            merged.append(w)
        else:
            merged[i] = merged[i].with_label(merged[i].label * w.label)
    return [w for w in merged if not w.label.is_one()]


def merge_equivalent(diagram: ScatteringDiagram) -> ScatteringDiagram:
    """The minimal representative: same-ray walls multiplied, trivial labels dropped."""
    return ScatteringDiagram(_merge_same_rays(diagram.walls), diagram.order, diagram.lattice)


# -- ray functions and scattering coefficients ------------------------------------


def ray_function(diagram: ScatteringDiagram, m) -> TruncatedSeries:
    """Product of all labels living on the ray set R_{>=0} m.

    This multiplies the outgoing label on R_{>=0} m with the label of the
    incoming wall of direction -m (whose ray set is the same), each
    defaulting to 1.
    """
    m = as_vector(m)
    if not is_primitive(m):
        raise ValueError("ray direction must be primitive")
    f = TruncatedSeries.one(diagram.order)
    for w in diagram.walls:
        if w.ray_vector == m:
            f = f * w.label
    return f


def scattering_coef(diagram: ScatteringDiagram, m) -> list:
    """Coefficient of z^m in the log of the ray function, as (k, coeff) pairs.

    For an incoming wall the label is a series in z^(-m); its contribution is
    read in the wall's own monomial, so that the coefficient on an incoming
    ray (R_{<=0} m_i, (1+t z^(m_i))^l) at m = -m_i comes out as l*t.
    """
    m = as_vector(m)
    if m == (0, 0):
        raise ValueError("scattering coefficient of z^0 is undefined")
    m0 = primitive_part(m)
    L = log(ray_function(diagram, m0))
    pairs: dict = {}
    for k, c in L.coefficient(m) + L.coefficient((-m.a, -m.b)):
        pairs[k] = pairs.get(k, 0) + c
    return sorted((k, c) for k, c in pairs.items() if c != 0)


# -- positive factorization --------------------------------------------------------


def factor_label(label: TruncatedSeries, direction) -> list:
    """Factor a wall label as a product of (1 + t^k z^(kappa*direction))^c.

    Peels factors in lexicographic (kappa, k) order; the exponents are
    uniquely determined rationals.  For completed basic diagrams they are the
    nonnegative integers of the positive factorization, with k = kappa*(a+b)
    in the homogeneous case.  Returns (kappa, k, c) triples.
    """
    direction = as_vector(direction)
    if not is_primitive(direction):
        raise ValueError("direction must be primitive")
    f = label
    factors = []
    for _ in range((label.order + 1) ** 2 + 1):
        if f.is_one():
            return factors
        candidates = []
        for (a, b, k) in f.terms:
            if (a, b, k) == (0, 0, 0):
                continue
            if direction.a != 0:
                kappa = a // direction.a
            else:
                kappa = b // direction.b
            candidates.append((kappa, k))
        kappa, k = min(candidates)
        coeff = f.terms[(kappa * direction.a, kappa * direction.b, k)]
        base = TruncatedSeries.one(f.order) + TruncatedSeries.monomial(
            (kappa * direction.a, kappa * direction.b), k, order=f.order
        )
        factors.append((kappa, k, coeff))
        f = f * _rational_power(base, -coeff)
    raise CompletionError("label factorization did not terminate")


def _rational_power(f: TruncatedSeries, e) -> TruncatedSeries:
    e = Fraction(e)
    if e.denominator == 1:
        return f.int_pow(e.numerator)
    from .series import exp as series_exp

    return series_exp(log(f).scale(e))


# -- serialization -------------------------------------------------------------------


def diagram_to_json_obj(diagram: ScatteringDiagram) -> dict:
    """{"order": K, "walls": [...]} with walls sorted by (angle, incoming)."""
    return {
        "order": diagram.order,
        "walls": [
            {
                "dir": [w.direction.a, w.direction.b],
                "incoming": w.incoming,
                "fn": w.label.to_json_obj(),
            }
            for w in diagram.sorted_walls()
        ],
    }


def diagram_from_json_obj(obj) -> ScatteringDiagram:
    order = int(obj["order"])
    walls = [
        Wall(
            tuple(entry["dir"]),
            bool(entry["incoming"]),
            TruncatedSeries.from_json_obj(entry["fn"], order=order),
        )
        for entry in obj["walls"]
    ]
    return ScatteringDiagram(walls, order)


def diagram_dumps(diagram: ScatteringDiagram) -> str:
    return json.dumps(diagram_to_json_obj(diagram), sort_keys=True, separators=(",", ":"))


def diagram_loads(text: str) -> ScatteringDiagram:
    return diagram_from_json_obj(json.loads(text))
