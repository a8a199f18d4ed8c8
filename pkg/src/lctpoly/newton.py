"""Newton sets of piecewise-linear convex functions and Newton bodies of metrics.

The Newton set of ``f`` on a cone ``sigma`` is the set of slopes ``m`` for
which ``f - m`` stays bounded below on ``sigma``. For a convex function of
full domain it equals ``N(f) + (-sigma^vee)`` with ``N(f)`` the Newton set
on the whole space; for ``f = max_i (m_i + c_i)`` that is
``conv{m_i} + (-sigma^vee)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from ._linalg import as_fraction, dot, inverse, mat_vec, vec
from .errors import DimensionMismatch, NewtonBodyOutOfRange, NotWInvariant, ValidationError
from .fan import PolyhedralCone, dual_cone
from .polytope import (
    RationalPolytope,
    contains,
    generators_from_inequalities,
    hull,
    inequalities_from_generators,
)
from .rootsys import WeylGroup


def _neg(v):
    return tuple(-x for x in v)


@dataclass(frozen=True, eq=False)
class Polyhedron:
    """``conv(points) + cone(rays) + span(lines)`` with its H-representation.

    Points, rays and lines are canonical (minimal generators; points are the
    vertices of the section orthogonal to the lines).
    """

    dim: int
    points: tuple
    rays: tuple
    lines: tuple
    facets: tuple
    equations: tuple

    @classmethod
    def from_generators(cls, points: Iterable, rays: Iterable = (), lines: Iterable = (), dim: int | None = None):
        points = [vec(p) for p in points]
        rays = [vec(r) for r in rays if any(r)]
        lines = [vec(l) for l in lines if any(l)]
        if dim is None:
            if not points:
                raise ValidationError("dimension needed for an empty polyhedron")
            dim = len(points[0])
        if not points:
            return cls(dim, (), (), (), (), ())
        ineqs, eqs = inequalities_from_generators(points, rays, lines, dim)
        return cls._from_h(ineqs, eqs, dim)

    @classmethod
    def from_inequalities(cls, ineqs: Iterable, eqs: Iterable = (), dim: int | None = None):
        ineqs = [(vec(a), as_fraction(b)) for a, b in ineqs]
        eqs = [(vec(a), as_fraction(b)) for a, b in eqs]
        if dim is None:
            dim = len((ineqs or eqs)[0][0])
        points, rays, lines = generators_from_inequalities(ineqs, eqs, dim)
        if not points:
            return cls(dim, (), (), (), (), ())
        ineqs, eqs = inequalities_from_generators(points, rays, lines, dim)
        return cls._from_h(ineqs, eqs, dim)

    @classmethod
    def _from_h(cls, ineqs, eqs, dim):
        points, rays, lines = generators_from_inequalities(ineqs, eqs, dim)
        return cls(dim, tuple(points), tuple(rays), tuple(lines), tuple(ineqs), tuple(eqs))

    @classmethod
    def from_polytope(cls, P: RationalPolytope) -> "Polyhedron":
        return cls.from_generators(P.vertices, dim=P.dim)

    @property
    def is_empty(self) -> bool:
        return not self.points

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lines

    @property
    def polytope_part(self) -> RationalPolytope:
        if self.is_empty:
            return RationalPolytope.empty(self.dim)
        return hull(self.points)

    @property
    def recession_cone(self) -> PolyhedralCone:
        return PolyhedralCone.from_rays(self.rays, self.lines, self.dim)

    def to_polytope(self) -> RationalPolytope:
        if not self.is_bounded:
            raise ValidationError("polyhedron is unbounded")
        return self.polytope_part

    def contains_point(self, x: Sequence) -> bool:
        if self.is_empty:
            return False
        x = vec(x)
        return all(dot(a, x) <= b for a, b in self.facets) and all(dot(a, x) == b for a, b in self.equations)

    def interior_contains_point(self, x: Sequence) -> bool:
        if self.is_empty or self.equations:
            return False
        x = vec(x)
        return all(dot(a, x) < b for a, b in self.facets)

    def _contains_direction(self, r) -> bool:
        return all(dot(a, r) <= 0 for a, _ in self.facets) and all(dot(a, r) == 0 for a, _ in self.equations)

    def contains(self, other: "Polyhedron") -> bool:
        if other.is_empty:
            return True
        return (
            all(self.contains_point(p) for p in other.points)
            and all(self._contains_direction(r) for r in other.rays)
            and all(self._contains_direction(l) and self._contains_direction(_neg(l)) for l in other.lines)
        )

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return self.dim == other.dim and self.contains(other) and other.contains(self)

    __hash__ = None

    def __add__(self, other: "Polyhedron") -> "Polyhedron":
        if self.dim != other.dim:
            raise DimensionMismatch("polyhedra live in different spaces")
        if self.is_empty or other.is_empty:
            return Polyhedron.from_generators([], dim=self.dim)
        pts = {tuple(x + y for x, y in zip(p, q)) for p in self.points for q in other.points}
        return Polyhedron.from_generators(pts, self.rays + other.rays, self.lines + other.lines, self.dim)

    def scale(self, c) -> "Polyhedron":
        c = as_fraction(c)
        if c < 0:
            raise ValidationError("only non-negative scalings keep the recession cone")
        if c == 0:
            return Polyhedron.from_generators([(Fraction(0),) * self.dim]) if not self.is_empty else self
        return Polyhedron.from_generators(
            [tuple(c * x for x in p) for p in self.points], self.rays, self.lines, self.dim
        )

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        if self.dim != other.dim:
            raise DimensionMismatch("polyhedra live in different spaces")
        if self.is_empty or other.is_empty:
            return Polyhedron.from_generators([], dim=self.dim)
        return Polyhedron.from_inequalities(
            self.facets + other.facets, self.equations + other.equations, self.dim
        )

    def __repr__(self):
        return f"Polyhedron(dim={self.dim}, points={len(self.points)}, rays={len(self.rays)}, lines={len(self.lines)})"


@dataclass(frozen=True, eq=False)
class PLConvexFunction:
    """``f(x) = max_i (<m_i, x> + c_i)`` with never-active pieces pruned."""

    pieces: tuple

    def __init__(self, pieces: Iterable[tuple[Sequence, object]], prune: bool = True):
        raw = [(vec(m), as_fraction(c)) for m, c in pieces]
        if not raw:
            raise ValidationError("a piecewise-linear function needs at least one piece")
        d = len(raw[0][0])
        if any(len(m) != d for m, _ in raw):
            raise DimensionMismatch("slopes of different dimensions")
        object.__setattr__(self, "pieces", tuple(_prune(raw) if prune else sorted(set(raw))))

    @classmethod
    def support_function(cls, P: RationalPolytope) -> "PLConvexFunction":
        return cls([(v, 0) for v in P.vertices])

    @classmethod
    def linear(cls, m: Sequence) -> "PLConvexFunction":
        return cls([(m, 0)])

    @property
    def dim(self) -> int:
        return len(self.pieces[0][0])

    @property
    def slopes(self) -> list:
        return [m for m, _ in self.pieces]

    def __call__(self, x: Sequence) -> Fraction:
        x = vec(x)
        return max(dot(m, x) + c for m, c in self.pieces)

    def evaluate(self, X: np.ndarray) -> np.ndarray:
        """Floating evaluation on an ``(n, dim)`` array of points."""
        M = np.array([[float(v) for v in m] for m, _ in self.pieces])
        C = np.array([float(c) for _, c in self.pieces])
        return (np.atleast_2d(X) @ M.T + C).max(axis=1)

    def __add__(self, other: "PLConvexFunction") -> "PLConvexFunction":
        if isinstance(other, (int, Fraction)):
            return self.shift(other)
        return PLConvexFunction(
            (tuple(a + b for a, b in zip(m1, m2)), c1 + c2)
            for m1, c1 in self.pieces
            for m2, c2 in other.pieces
        )

    def shift(self, c) -> "PLConvexFunction":
        c = as_fraction(c)
        return PLConvexFunction((m, k + c) for m, k in self.pieces)

    def scale(self, c) -> "PLConvexFunction":
        c = as_fraction(c)
        if c < 0:
            raise ValidationError("negative multiples of convex functions are concave")
        return PLConvexFunction((tuple(c * x for x in m), c * k) for m, k in self.pieces)

    def pullback(self, w) -> "PLConvexFunction":
        """``x -> f(w . x)`` for a Weyl element ``w`` given on the dual space."""
        winv = inverse(w)
        return PLConvexFunction((mat_vec(winv, m), c) for m, c in self.pieces)

    def __eq__(self, other):
        if not isinstance(other, PLConvexFunction):
            return NotImplemented
        return set(self.pieces) == set(other.pieces)

    def __hash__(self):
        return hash(frozenset(self.pieces))

    def to_json(self) -> dict:
        return {
            "type": "pl_potential",
            "pieces": [{"slope": [str(x) for x in m], "const": str(c)} for m, c in self.pieces],
        }


def _prune(raw: list) -> list:
    best: dict[tuple, Fraction] = {}
    for m, c in raw:
        if m not in best or c > best[m]:
            best[m] = c
    if len(best) == 1:
        return list(best.items())
    d = len(raw[0][0])
    # pieces that matter are the vertices of conv{(m_i, c_i)} + cone(-e_last)
    lifted = [m + (c,) for m, c in best.items()]
    down = (Fraction(0),) * d + (Fraction(-1),)
    P = Polyhedron.from_generators(lifted, [down], [], d + 1)
    keep = set(P.points)
    return sorted((p[:-1], p[-1]) for p in lifted if p in keep)


def newton_set_on_cone(f: PLConvexFunction, sigma: PolyhedralCone | None = None) -> Polyhedron:
    """Newton set of ``f`` over ``sigma`` (whole space when omitted):
    ``conv(slopes) + (-sigma^vee)``.
    """
    if sigma is None:
        return Polyhedron.from_generators(f.slopes, dim=f.dim)
    if sigma.dim != f.dim:
        raise DimensionMismatch("cone and function live in different spaces")
    dual = dual_cone(sigma)
    return Polyhedron.from_generators(
        f.slopes, [_neg(r) for r in dual.rays], list(dual.lineality), f.dim
    )


def newton_sum(f: PLConvexFunction, g: PLConvexFunction, sigma: PolyhedralCone | None = None, verify: bool = True) -> Polyhedron:
    """Newton set of ``f + g`` computed as a Minkowski sum of Newton sets."""
    out = newton_set_on_cone(f, sigma) + newton_set_on_cone(g, sigma)
    if verify:
        direct = newton_set_on_cone(f + g, sigma)
        if direct != out:  # pragma: no cover - would mean a bug in the engine
            raise AssertionError("Newton set of a sum differs from the Minkowski sum")
    return out


# metric specifications -------------------------------------------------------


@dataclass(frozen=True)
class ReferenceBT:
    """The continuous reference metric; its Newton body is ``2P``."""


@dataclass(frozen=True)
class NewtonBodyExplicit:
    body: RationalPolytope


@dataclass(frozen=True)
class PLPotential:
    potential: PLConvexFunction


@dataclass(frozen=True)
class PointMetric:
    """Metric whose convex potential is the linear function ``x -> <p, x>``."""

    p: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", vec(self.p))


MetricSpec = Union[ReferenceBT, NewtonBodyExplicit, PLPotential, PointMetric]


def check_w_invariance(B: RationalPolytope | PLConvexFunction, W: WeylGroup) -> bool:
    """Whether every simple reflection maps ``B`` to itself."""
    if isinstance(B, PLConvexFunction):
        pieces = set(B.pieces)
        return all({(mat_vec(w, m), c) for m, c in pieces} == pieces for w in W.generators)
    verts = set(B.vertices)
    return all({mat_vec(w, v) for v in verts} == verts for w in W.generators)


def newton_body(spec: MetricSpec, P: RationalPolytope, W: WeylGroup | None = None) -> RationalPolytope:
    """Newton body ``N(h)`` of a metric on the line bundle with polytope ``P``.

    Validates ``N(h) in 2P`` and, when ``W`` is given, W-invariance.
    """
    twoP = P.scale(2)
    if isinstance(spec, ReferenceBT):
        return twoP
    if isinstance(spec, NewtonBodyExplicit):
        body = spec.body
    elif isinstance(spec, PLPotential):
        body = hull(spec.potential.slopes)
    elif isinstance(spec, PointMetric):
        if W is not None and not W.is_fixed(spec.p):
            raise NotWInvariant(f"point metric slope {spec.p} is not W-fixed")
        body = hull([spec.p])
    else:
        raise ValidationError(f"unknown metric specification {spec!r}")
    if body.dim != P.dim:
        raise DimensionMismatch("Newton body and polytope live in different spaces")
    if body.is_empty:
        raise ValidationError("Newton body is empty")
    if not contains(twoP, body):
        raise NewtonBodyOutOfRange("Newton body is not contained in 2P")
    if W is not None and not check_w_invariance(body, W):
        raise NotWInvariant("Newton body is not W-invariant")
    return body


def metric_from_json(data: dict, dim: int | None = None) -> MetricSpec:
    kind = data.get("type")
    if kind == "reference":
        return ReferenceBT()
    if kind == "newton_body":
        return NewtonBodyExplicit(RationalPolytope.from_json(data["polytope"]))
    if kind == "pl_potential":
        return PLPotential(PLConvexFunction((p["slope"], p.get("const", 0)) for p in data["pieces"]))
    if kind == "point":
        return PointMetric(vec(data["p"]))
    raise ValidationError(f"unknown metric type {kind!r}")


def metric_to_json(spec: MetricSpec) -> dict:
    if isinstance(spec, ReferenceBT):
        return {"type": "reference"}
    if isinstance(spec, NewtonBodyExplicit):
        return {"type": "newton_body", "polytope": spec.body.to_json()}
    if isinstance(spec, PLPotential):
        return spec.potential.to_json()
    if isinstance(spec, PointMetric):
        return {"type": "point", "p": [str(x) for x in spec.p]}
    raise ValidationError(f"unknown metric specification {spec!r}")
