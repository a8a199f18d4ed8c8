"""Rational polyhedral cones and fans."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from ._dd import cone_generators
from ._linalg import primitive, sign_canonical
from .errors import DimensionMismatch, ValidationError
from .polytope import RationalPolytope


def _idot(u, v):
    return sum(x * y for x, y in zip(u, v))


@dataclass(frozen=True, eq=False)
class PolyhedralCone:
    """Cone ``cone(rays) + span(lineality)``, equivalently
    ``{x : <n, x> >= 0 for n in facet_normals, <e, x> = 0 for e in equations}``.

    Build with :meth:`from_rays` or :meth:`from_inequalities`; both normalize
    every vector to a primitive integer one and sort lexicographically.
    """

    dim: int
    rays: tuple
    lineality: tuple
    facet_normals: tuple
    equations: tuple

    @classmethod
    def from_rays(cls, rays: Iterable[Sequence], lineality: Iterable[Sequence] = (), dim: int | None = None):
        rays = [primitive(r) for r in rays]
        lineality = [primitive(l) for l in lineality]
        if dim is None:
            if not rays and not lineality:
                raise ValidationError("cannot infer dimension of an empty generator list")
            dim = len((rays or lineality)[0])
        rows = [r for r in rays if any(r)]
        for l in lineality:
            if any(l):
                rows.append(l)
                rows.append(tuple(-x for x in l))
        if not rows:
            # the zero cone
            unit = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
            return cls(dim, (), (), (), tuple(unit))
        normals, eqs = cone_generators(rows, dim)
        return cls.from_inequalities(normals, eqs, dim)

    @classmethod
    def from_inequalities(cls, normals: Iterable[Sequence], equations: Iterable[Sequence] = (), dim: int | None = None):
        normals = [primitive(n) for n in normals]
        equations = [primitive(e) for e in equations]
        if dim is None:
            if not normals and not equations:
                raise ValidationError("cannot infer dimension of an empty constraint list")
            dim = len((normals or equations)[0])
        rows = [n for n in normals if any(n)]
        for e in equations:
            if any(e):
                rows.append(e)
                rows.append(tuple(-x for x in e))
        rays, lin = cone_generators(rows, dim)
        grows = list(rays)
        for l in lin:
            grows.append(l)
            grows.append(tuple(-x for x in l))
        if grows:
            fnormals, feqs = cone_generators(grows, dim)
        else:
            fnormals, feqs = [], [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
        return cls(
            dim,
            tuple(sorted(rays)),
            tuple(sorted(sign_canonical(l) for l in lin)),
            tuple(sorted(fnormals)),
            tuple(sorted(sign_canonical(e) for e in feqs)),
        )

    @classmethod
    def full_space(cls, dim: int) -> "PolyhedralCone":
        return cls.from_inequalities([], [], dim)

    @classmethod
    def orthant(cls, dim: int) -> "PolyhedralCone":
        return cls.from_rays([tuple(int(i == j) for j in range(dim)) for i in range(dim)], dim=dim)

    @property
    def cone_dim(self) -> int:
        return self.dim - len(self.equations)

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    def contains(self, x: Sequence) -> bool:
        return all(_idot(n, x) >= 0 for n in self.facet_normals) and all(
            _idot(e, x) == 0 for e in self.equations
        )

    def contains_in_interior(self, x: Sequence) -> bool:
        return self.is_full_dimensional and all(_idot(n, x) > 0 for n in self.facet_normals)

    def contains_cone(self, other: "PolyhedralCone") -> bool:
        return all(self.contains(r) for r in other.rays) and all(
            self.contains(l) and self.contains(tuple(-x for x in l)) for l in other.lineality
        )

    def intersect(self, other: "PolyhedralCone") -> "PolyhedralCone":
        if self.dim != other.dim:
            raise DimensionMismatch("cones live in different spaces")
        return PolyhedralCone.from_inequalities(
            list(self.facet_normals) + list(other.facet_normals),
            list(self.equations) + list(other.equations),
            self.dim,
        )

    def relative_interior_point(self) -> tuple[int, ...]:
        p = [0] * self.dim
        for r in self.rays:
            p = [a + b for a, b in zip(p, r)]
        return tuple(p)

    def face_containing(self, x: Sequence) -> "PolyhedralCone":
        """Smallest face of the cone containing ``x`` (which must lie in it)."""
        tight = [n for n in self.facet_normals if _idot(n, x) == 0]
        return PolyhedralCone.from_inequalities(
            self.facet_normals, list(self.equations) + tight, self.dim
        )

    def is_face_of(self, other: "PolyhedralCone") -> bool:
        if not other.contains_cone(self):
            return False
        return other.face_containing(self.relative_interior_point()) == self

    def __eq__(self, other):
        if not isinstance(other, PolyhedralCone):
            return NotImplemented
        return self.dim == other.dim and self.contains_cone(other) and other.contains_cone(self)

    def __hash__(self):
        return hash((self.dim, self.rays, len(self.lineality)))

    def to_json(self) -> dict:
        out = {"rays": [list(r) for r in self.rays]}
        if self.lineality:
            out["lineality"] = [list(l) for l in self.lineality]
        return out

    @classmethod
    def from_json(cls, data: dict, dim: int | None = None) -> "PolyhedralCone":
        if "dim" in data:
            dim = int(data["dim"])
        return cls.from_rays(data.get("rays", []), data.get("lineality", []), dim)


def dual_cone(sigma: PolyhedralCone) -> PolyhedralCone:
    """``{m : <m, x> >= 0 for all x in sigma}``."""
    return PolyhedralCone(
        sigma.dim, sigma.facet_normals, sigma.equations, sigma.rays, sigma.lineality
    )


@dataclass(frozen=True, eq=False)
class Fan:
    """A finite collection of full-dimensional cones meeting along faces."""

    dim: int
    cones: tuple
    complete: bool = True
    validate: bool = True

    def __post_init__(self):
        for c in self.cones:
            if c.dim != self.dim:
                raise DimensionMismatch("cone of wrong dimension in fan")
            if not c.is_full_dimensional:
                raise ValidationError("fan cones must be full-dimensional")
        if not self.validate:
            return
        if len(self.cones) <= 40:
            for i, s in enumerate(self.cones):
                for t in self.cones[i + 1:]:
                    inter = s.intersect(t)
                    if not (inter.is_face_of(s) and inter.is_face_of(t)):
                        raise ValidationError("fan cones do not meet along a common face")
        if self.complete:
            rng = random.Random(0)
            for _ in range(64):
                y = tuple(rng.randint(-1000, 1000) for _ in range(self.dim))
                if not any(c.contains(y) for c in self.cones):
                    raise ValidationError(f"fan is not complete: direction {y} uncovered")

    def to_json(self) -> list:
        return [c.to_json() for c in self.cones]

    @classmethod
    def from_json(cls, data: list, dim: int, complete: bool = True) -> "Fan":
        return cls(dim, tuple(PolyhedralCone.from_json(c, dim) for c in data), complete)


def normal_fan(P: RationalPolytope) -> Fan:
    """Outer normal fan: one cone ``{y : <y, v> = support(P, y)}`` per vertex.

    For a lower-dimensional ``P`` every cone contains the orthogonal
    complement of the affine hull as lineality.
    """
    if P.is_empty:
        raise ValidationError("normal fan of an empty polytope")
    eq_normals = [a for a, _ in P.equations]
    cones = []
    for v in P.vertices:
        tight = [a for a, b in P.facets if sum(x * y for x, y in zip(a, v)) == b]
        cones.append(PolyhedralCone.from_rays(tight, eq_normals, P.dim))
    return Fan(P.dim, tuple(cones), complete=True, validate=len(cones) <= 40)


def single_cone_fan(dim: int) -> Fan:
    return Fan(dim, (PolyhedralCone.full_space(dim),))


def common_refinement(F1: Fan, F2: Fan) -> Fan:
    """All full-dimensional intersections of a cone of ``F1`` with one of ``F2``."""
    if F1.dim != F2.dim:
        raise DimensionMismatch("fans live in different spaces")
    cones = []
    seen = set()
    for s in F1.cones:
        for t in F2.cones:
            c = s.intersect(t)
            if not c.is_full_dimensional:
                continue
            key = (c.facet_normals, c.rays)
            if key in seen:
                continue
            seen.add(key)
            cones.append(c)
    return Fan(F1.dim, tuple(cones), complete=F1.complete and F2.complete, validate=False)


def rays_of(F: Fan) -> list[tuple[int, ...]]:
    """Primitive generators of the one-dimensional faces, sorted."""
    return sorted({r for c in F.cones for r in c.rays})
