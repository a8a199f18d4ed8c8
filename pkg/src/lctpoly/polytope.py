"""Exact rational convex polytopes.

A :class:`RationalPolytope` carries both an irredundant vertex list and an
inequality description ``<a, x> <= b`` (plus affine-hull equations for
lower-dimensional bodies). Both are computed by the double description
method in :mod:`lctpoly._dd` and cross-checked on construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ._dd import cone_generators
from ._linalg import (
    as_fraction,
    dot,
    format_rational,
    mat_vec,
    primitive,
    rank,
    sign_canonical,
    vec,
)
from .errors import (
    DegeneratePolytope,
    DimensionMismatch,
    EmptyQ,
    UnboundedPolyhedron,
    ValidationError,
)
from .lp import INFEASIBLE, UNBOUNDED, exact_lp

Point = tuple  # tuple[Fraction, ...]
Halfspace = tuple  # (tuple[int, ...], Fraction)

# ExtendedRational: a Fraction, or math.inf for +infinity.
INF = math.inf


def _normalize_halfspace(a: Sequence, b) -> Halfspace:
    """Scale ``<a, x> <= b`` so that ``a`` is a primitive integer vector."""
    a = vec(a)
    ia = primitive(a)
    k = next(i for i, x in enumerate(a) if x != 0)
    factor = Fraction(ia[k]) / a[k]
    return ia, as_fraction(b) * factor


def _normalize_equation(a: Sequence, b) -> Halfspace:
    ia, nb = _normalize_halfspace(a, b)
    if sign_canonical(ia) != ia:
        return tuple(-x for x in ia), -nb
    return ia, nb


def inequalities_from_generators(points, rays, lines, dim: int):
    """H-representation of ``conv(points) + cone(rays) + span(lines)``."""
    gens = [(Fraction(1),) + tuple(p) for p in points]
    gens += [(Fraction(0),) + tuple(r) for r in rays]
    for l in lines:
        gens.append((Fraction(0),) + tuple(l))
        gens.append((Fraction(0),) + tuple(-x for x in l))
    drays, dlin = cone_generators(gens, dim + 1)
    point_rows = [_hom_point(p) for p in points]
    ineqs = []
    for y in drays:
        a = tuple(-x for x in y[1:])
        if not any(a):
            continue
        # faces avoiding every point are the face at infinity (t >= 0)
        if not any(_idot(y, g) == 0 for g in point_rows):
            continue
        ineqs.append(_normalize_halfspace(a, y[0]))
    eqs = []
    for y in dlin:
        a = tuple(-x for x in y[1:])
        if any(a):
            eqs.append(_normalize_equation(a, y[0]))
    return sorted(set(ineqs)), sorted(set(eqs))


def generators_from_inequalities(ineqs, eqs, dim: int):
    """V-representation ``(points, rays, lines)`` of an H-described polyhedron.

    ``points`` is empty iff the polyhedron is empty.
    """
    rows = [(as_fraction(b),) + tuple(-as_fraction(x) for x in a) for a, b in ineqs]
    rows.append((Fraction(1),) + (Fraction(0),) * dim)
    for a, b in eqs:
        r = (as_fraction(b),) + tuple(-as_fraction(x) for x in a)
        rows.append(r)
        rows.append(tuple(-x for x in r))
    rays, lin = cone_generators(rows, dim + 1)
    points = [tuple(Fraction(x, r[0]) for x in r[1:]) for r in rays if r[0] > 0]
    recession = [tuple(Fraction(x) for x in r[1:]) for r in rays if r[0] == 0]
    lines = [tuple(Fraction(x) for x in l[1:]) for l in lin]
    if not points:
        return [], [], []
    return sorted(points), sorted(recession), sorted(lines)


def _hom_point(p) -> tuple[int, ...]:
    return primitive((Fraction(1),) + tuple(p))


def _hom_row(a, b) -> tuple[int, ...]:
    """Integer row ``r`` with ``<a, x> <= b  <=>  <r, (1, x)> >= 0``."""
    return primitive((as_fraction(b),) + tuple(-as_fraction(x) for x in a))


def _idot(u, v) -> int:
    return sum(x * y for x, y in zip(u, v))


def _extreme_points(points, ineqs, eqs, dim: int) -> list:
    eq_normals = [a for a, _ in eqs]
    rows = [_hom_row(a, b) for a, b in ineqs]
    cache: dict[int, bool] = {}
    out = []
    for p in points:
        g = _hom_point(p)
        m = 0
        for i, r in enumerate(rows):
            if _idot(r, g) == 0:
                m |= 1 << i
        if m not in cache:
            normals = [ineqs[i][0] for i in range(len(ineqs)) if m >> i & 1] + eq_normals
            cache[m] = rank(normals, dim) == dim
        if cache[m]:
            out.append(p)
    return out


@dataclass(frozen=True, eq=False)
class RationalPolytope:
    """Bounded convex polytope with synchronized V- and H-representations.

    ``facets`` are pairs ``(a, b)`` meaning ``<a, x> <= b`` with ``a`` a
    primitive integer vector; ``equations`` pairs mean ``<a, x> == b`` and
    describe the affine hull when the polytope is not full-dimensional.
    An empty polytope has no vertices.
    """

    dim: int
    vertices: tuple
    facets: tuple
    equations: tuple = ()

    def __post_init__(self):
        rows = [_hom_row(a, b) for a, b in self.facets]
        eq_rows = [_hom_row(a, b) for a, b in self.equations]
        for v in self.vertices:
            if len(v) != self.dim:
                raise DimensionMismatch("vertex of wrong dimension")
            g = _hom_point(v)
            if any(_idot(r, g) < 0 for r in rows):
                raise ValidationError("vertex violates facet inequality")
            if any(_idot(r, g) != 0 for r in eq_rows):
                raise ValidationError("vertex violates affine hull equation")

    # construction ---------------------------------------------------------

    @classmethod
    def empty(cls, dim: int) -> "RationalPolytope":
        return cls(dim, (), ())

    @classmethod
    def from_inequalities(cls, ineqs: Iterable, eqs: Iterable = (), dim: int | None = None) -> "RationalPolytope":
        ineqs = [(vec(a), as_fraction(b)) for a, b in ineqs]
        eqs = [(vec(a), as_fraction(b)) for a, b in eqs]
        if dim is None:
            rows = ineqs or eqs
            if not rows:
                raise ValidationError("cannot infer dimension from no constraints")
            dim = len(rows[0][0])
        points, rays, lines = generators_from_inequalities(ineqs, eqs, dim)
        if not points:
            return cls.empty(dim)
        if rays or lines:
            raise UnboundedPolyhedron("inequalities describe an unbounded set")
        return hull(points)

    @classmethod
    def box(cls, lower: Sequence, upper: Sequence) -> "RationalPolytope":
        import itertools

        lo, hi = vec(lower), vec(upper)
        return hull(itertools.product(*zip(lo, hi)))

    # basic queries --------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def affine_dim(self) -> int:
        if self.is_empty:
            return -1
        return self.dim - len(self.equations)

    @property
    def is_full_dimensional(self) -> bool:
        return not self.is_empty and not self.equations

    @property
    def affine_hull(self) -> tuple[Point, list]:
        """A base point and a direction basis of the affine span."""
        from ._linalg import nullspace

        if self.is_empty:
            raise ValidationError("empty polytope has no affine hull")
        dirs = nullspace([a for a, _ in self.equations], self.dim) if self.equations else [
            tuple(Fraction(int(i == j)) for j in range(self.dim)) for i in range(self.dim)
        ]
        return self.vertices[0], dirs

    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def support(self, y: Sequence):
        """``max <y, v>`` over the polytope (``-inf`` when empty)."""
        if self.is_empty:
            return -INF
        y = vec(y)
        return max(dot(y, v) for v in self.vertices)

    def argmax(self, y: Sequence) -> list:
        y = vec(y)
        h = self.support(y)
        return [v for v in self.vertices if dot(y, v) == h]

    def contains_point(self, x: Sequence) -> bool:
        if self.is_empty:
            return False
        x = vec(x)
        return all(dot(a, x) <= b for a, b in self.facets) and all(
            dot(a, x) == b for a, b in self.equations
        )

    def interior_contains_point(self, x: Sequence) -> bool:
        if not self.is_full_dimensional:
            return False
        x = vec(x)
        return all(dot(a, x) < b for a, b in self.facets)

    def centroid(self) -> Point:
        n = len(self.vertices)
        return tuple(sum(v[i] for v in self.vertices) / n for i in range(self.dim))

    # transformations -------------------------------------------------------

    def scale(self, c) -> "RationalPolytope":
        c = as_fraction(c)
        if self.is_empty:
            return self
        return hull([tuple(c * x for x in v) for v in self.vertices])

    def translate(self, t: Sequence) -> "RationalPolytope":
        t = vec(t)
        if self.is_empty:
            return self
        return hull([tuple(x + s for x, s in zip(v, t)) for v in self.vertices])

    def __neg__(self) -> "RationalPolytope":
        return self.scale(-1)

    def image(self, M: Sequence[Sequence]) -> "RationalPolytope":
        """Image under the linear map ``x -> M x``."""
        if self.is_empty:
            return self
        return hull([mat_vec(M, v) for v in self.vertices])

    def intersect(self, ineqs: Iterable = (), eqs: Iterable = ()) -> "RationalPolytope":
        if self.is_empty:
            return self
        return RationalPolytope.from_inequalities(
            list(self.facets) + list(ineqs), list(self.equations) + list(eqs), self.dim
        )

    def __add__(self, other: "RationalPolytope") -> "RationalPolytope":
        return minkowski_sum(self, other)

    # comparison -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RationalPolytope):
            return NotImplemented
        return self.dim == other.dim and set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash((self.dim, frozenset(self.vertices)))

    def __repr__(self):
        verts = ", ".join("(" + ", ".join(format_rational(x) for x in v) + ")" for v in self.vertices)
        return f"RationalPolytope(dim={self.dim}, vertices=[{verts}])"

    # serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "vertices": [[format_rational(x) for x in v] for v in self.vertices],
            "facets": [
                {"a": list(a), "b": format_rational(b)} for a, b in self.facets
            ],
            "equations": [
                {"a": list(a), "b": format_rational(b)} for a, b in self.equations
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalPolytope":
        dim = int(data["dim"])
        if "vertices" in data:
            pts = [vec(v) for v in data["vertices"]]
            if not pts:
                return cls.empty(dim)
            if any(len(p) != dim for p in pts):
                raise DimensionMismatch("vertex length differs from dim")
            return hull(pts)
        if "facets" in data:
            ineqs = [(vec(f["a"]), as_fraction(f["b"])) for f in data["facets"]]
            eqs = [(vec(f["a"]), as_fraction(f["b"])) for f in data.get("equations", [])]
            if any(len(a) != dim for a, _ in ineqs + eqs):
                raise DimensionMismatch("facet normal length differs from dim")
            return cls.from_inequalities(ineqs, eqs, dim)
        raise ValidationError("polytope JSON needs 'vertices' or 'facets'")


def hull(points: Iterable[Sequence]) -> RationalPolytope:
    """Convex hull of a non-empty finite point set."""
    pts = sorted({vec(p) for p in points})
    if not pts:
        raise ValidationError("hull of an empty point list")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise DimensionMismatch("points of mixed dimension")
    ineqs, eqs = inequalities_from_generators(pts, [], [], dim)
    verts = _extreme_points(pts, ineqs, eqs, dim)
    return RationalPolytope(dim, tuple(verts), tuple(ineqs), tuple(eqs))


def point(p: Sequence) -> RationalPolytope:
    return hull([p])


def support(P: RationalPolytope, y: Sequence):
    return P.support(y)


def _check_dims(P: RationalPolytope, Q: RationalPolytope) -> None:
    if P.dim != Q.dim:
        raise DimensionMismatch(f"ambient dimensions differ: {P.dim} vs {Q.dim}")


def minkowski_sum(P: RationalPolytope, Q: RationalPolytope) -> RationalPolytope:
    _check_dims(P, Q)
    if P.is_empty or Q.is_empty:
        return RationalPolytope.empty(P.dim)
    return hull({tuple(x + y for x, y in zip(p, q)) for p in P.vertices for q in Q.vertices})


def minkowski_diff(Q: RationalPolytope, P: RationalPolytope) -> RationalPolytope:
    """``Q (-) P = {x : x + P in Q}`` by facet erosion; may be empty."""
    _check_dims(P, Q)
    if Q.is_empty:
        return RationalPolytope.empty(Q.dim)
    if P.is_empty:
        raise ValidationError("Minkowski difference by an empty polytope is unbounded")
    ineqs = [(a, b - P.support(a)) for a, b in Q.facets]
    eqs = []
    for a, b in Q.equations:
        hi = P.support(a)
        lo = -P.support(tuple(-x for x in a))
        if hi != lo:
            return RationalPolytope.empty(Q.dim)
        eqs.append((a, b - hi))
    return RationalPolytope.from_inequalities(ineqs, eqs, Q.dim)


def contains(Q: RationalPolytope, P: RationalPolytope) -> bool:
    """Whether ``P`` is a subset of ``Q``."""
    _check_dims(P, Q)
    if P.is_empty:
        return True
    if Q.is_empty:
        return False
    return all(Q.contains_point(v) for v in P.vertices)


def contains_in_interior(Q: RationalPolytope, P: RationalPolytope) -> bool:
    """Whether ``P`` lies in the topological interior of ``Q``."""
    _check_dims(P, Q)
    if not Q.is_full_dimensional:
        raise DegeneratePolytope("interior test needs a full-dimensional container")
    if P.is_empty:
        return True
    return all(Q.interior_contains_point(v) for v in P.vertices)


def facet_slacks(Q: RationalPolytope, P: RationalPolytope) -> list[Fraction]:
    """Per facet ``(a, b)`` of ``Q``: ``b - support(P, a)``."""
    _check_dims(P, Q)
    return [b - P.support(a) for a, b in Q.facets]


def inradius(P: RationalPolytope, Q: RationalPolytope, with_witness: bool = False):
    """``sup{c >= 0 : x + cP in Q for some x}`` by exact linear programming.

    Returns ``math.inf`` when ``P`` is a single point that fits in ``Q``.
    With ``with_witness`` also returns the optimal translation ``x``.
    """
    _check_dims(P, Q)
    if Q.is_empty:
        raise EmptyQ("inradius into an empty polytope")
    if not Q.is_full_dimensional:
        raise DegeneratePolytope("inradius needs a full-dimensional container")
    if P.is_empty:
        raise ValidationError("inradius of an empty polytope")
    d = Q.dim
    cons = []
    for a, b in Q.facets:
        cons.append((tuple(Fraction(x) for x in a) + (P.support(a),), b))
    cons.append(((Fraction(0),) * d + (Fraction(-1),), Fraction(0)))
    res = exact_lp((Fraction(0),) * d + (Fraction(1),), cons)
    if res.status == INFEASIBLE:  # pragma: no cover - Q non-empty makes c = 0 feasible
        raise EmptyQ("no feasible translation")
    if res.status == UNBOUNDED:
        value, x = INF, None
    else:
        value, x = res.value, res.x[:d]
    return (value, x) if with_witness else value
