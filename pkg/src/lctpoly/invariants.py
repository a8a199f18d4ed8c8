"""Log canonical thresholds and alpha invariants of polarized group compactifications.

Both quantities reduce to the largest ``c`` making one polytope inclusion
hold. Inclusion ``A in B`` of polytopes is tested on the facet normals ``y``
of ``B`` through support functions, and along a fixed set of normals each
test is linear in ``c``, which turns the supremum into a minimum of ratios.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._linalg import format_rational, nullspace, scale, vec
from .errors import (
    DimensionMismatch,
    EmptyErosion,
    NotFano,
    NotSemisimple,
    NotWInvariant,
    SymmetryViolation,
    ValidationError,
)
from .fan import common_refinement, normal_fan, rays_of
from .newton import MetricSpec, check_w_invariance, newton_body
from .polytope import (
    INF,
    RationalPolytope,
    facet_slacks,
    inradius,
    minkowski_diff,
    minkowski_sum,
)
from .rootsys import (
    DEFAULT_MAX_WEYL,
    RootSystem,
    WeylGroup,
    fixed_subspace,
    group_closure,
    orbit_hull,
    weyl_group,
    wonderful_polytope,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FanoReport:
    ok: bool
    slacks: tuple  # b - support(H, a) for every facet (a, b) of Q

    def to_json(self) -> dict:
        return {"fano": self.ok, "slacks": [format_rational(s) for s in self.slacks]}


def fano_check(Q: RationalPolytope, H: RationalPolytope) -> FanoReport:
    """Whether ``H`` lies in the interior of ``Q``, with per-facet slack."""
    if not Q.is_full_dimensional:
        return FanoReport(False, ())
    slacks = tuple(facet_slacks(Q, H))
    return FanoReport(all(s > 0 for s in slacks), slacks)


@dataclass(frozen=True, eq=False)
class CompactificationData:
    """Root data plus the polarization polytope ``P`` and anticanonical ``Q``.

    ``H`` is the Weyl orbit hull of ``2 rho``. Construction fails unless
    ``P`` and ``Q`` are full-dimensional, W-invariant and ``H`` sits in the
    interior of ``Q``.
    """

    rs: RootSystem
    W: WeylGroup
    P: RationalPolytope
    Q: RationalPolytope
    H: RationalPolytope

    @classmethod
    def build(cls, rs: RootSystem, P: RationalPolytope, Q: RationalPolytope, W: WeylGroup | None = None,
              max_weyl: int = DEFAULT_MAX_WEYL) -> "CompactificationData":
        W = W or weyl_group(rs, max_weyl)
        for name, poly in (("P", P), ("Q", Q)):
            if poly.dim != rs.ambient_dim:
                raise DimensionMismatch(f"{name} has dimension {poly.dim}, root system {rs.ambient_dim}")
            if not poly.is_full_dimensional:
                raise ValidationError(f"{name} must be full-dimensional")
            if not check_w_invariance(poly, W):
                raise NotWInvariant(f"{name} is not W-invariant")
            if not poly.is_lattice():
                # nothing downstream needs integrality, so this is only a hint
                log.warning("%s has non-integral vertices", name)
        H = orbit_hull(W, scale(2, rs.rho))
        if not fano_check(Q, H).ok:
            raise NotFano("H is not contained in the interior of Q")
        return cls(rs, W, P, Q, H)

    @classmethod
    def wonderful(cls, rs: RootSystem, W: WeylGroup | None = None, max_weyl: int = DEFAULT_MAX_WEYL):
        """Wonderful compactification polarized by its anticanonical bundle."""
        W = W or weyl_group(rs, max_weyl)
        Q = wonderful_polytope(rs, W)
        return cls.build(rs, Q, Q, W)

    def with_polarization(self, P: RationalPolytope) -> "CompactificationData":
        return CompactificationData.build(self.rs, P, self.Q, self.W)


@dataclass(frozen=True)
class ThresholdResult:
    value: Fraction | float
    witness_ray: tuple | None = None
    active_constraints: tuple = ()
    info: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "value": format_rational(self.value),
            "witness_ray": None if self.witness_ray is None else [format_rational(x) for x in self.witness_ray],
            "active_constraints": [
                {k: (format_rational(v) if not isinstance(v, (list, tuple)) else [format_rational(x) for x in v])
                 for k, v in c.items()}
                for c in self.active_constraints
            ],
        }
        out.update(self.info)
        return out


def _min_ratio(candidates) -> tuple:
    """candidates: iterable of (direction, numerator, coefficient)."""
    best = INF
    active = []
    for y, num, coef in candidates:
        if coef <= 0:
            continue
        r = num / coef
        if r < best:
            best, active = r, [(y, num, coef)]
        elif r == best:
            active.append((y, num, coef))
    return best, active


def lct_normals(N: RationalPolytope, Q: RationalPolytope, route: str = "sum") -> list:
    """Facet normals of ``cN + 2Q`` (the same for every ``c > 0``).

    ``route="sum"`` reads them off ``N + Q``; ``route="fan"`` takes the rays
    of the common refinement of the two normal fans.
    """
    if route == "sum":
        S = minkowski_sum(N, Q)
        return [a for a, _ in S.facets]
    if route == "fan":
        return rays_of(common_refinement(normal_fan(N), normal_fan(Q)))
    raise ValidationError(f"unknown route {route!r}")


def lct_report(data: CompactificationData, spec: MetricSpec, route: str = "sum") -> ThresholdResult:
    """``sup{c > 0 : 2H + 2cP in cN(h) + 2Q}`` with the constraints that bind."""
    N = newton_body(spec, data.P, data.W)
    twoP = data.P.scale(2)
    if N == twoP:
        # every inclusion constraint has zero slope in c
        return ThresholdResult(INF)
    P, Q, H = data.P, data.Q, data.H
    cands = []
    for y in lct_normals(N, Q, route):
        coef = 2 * P.support(y) - N.support(y)
        num = 2 * (Q.support(y) - H.support(y))
        cands.append((y, num, coef))
    value, active = _min_ratio(cands)
    if value == INF:
        return ThresholdResult(INF)
    return ThresholdResult(
        value,
        tuple(Fraction(x) for x in active[0][0]),
        tuple({"ray": y, "bound": num, "coefficient": coef} for y, num, coef in active),
    )


def lct(data: CompactificationData, spec: MetricSpec, route: str = "sum"):
    """Log canonical threshold of a K x K-invariant metric (``math.inf`` if unbounded)."""
    return lct_report(data, spec, route).value


def invariant_part(P: RationalPolytope, group_generators: Sequence) -> RationalPolytope:
    """``P`` intersected with the common fixed space of the given matrices."""
    basis = fixed_subspace(group_generators, P.dim)
    if len(basis) == P.dim:
        return P
    normals = nullspace(basis, P.dim) if basis else [
        tuple(Fraction(int(i == j)) for j in range(P.dim)) for i in range(P.dim)
    ]
    return P.intersect(eqs=[(n, 0) for n in normals])


def _alpha_pipeline(data: CompactificationData, generators: Sequence) -> ThresholdResult:
    PW = invariant_part(data.P, generators)
    if PW.is_empty:  # pragma: no cover - orbit barycenters are fixed points of P
        raise ValidationError("P has no invariant point")
    K = minkowski_sum(data.P, -PW)
    D = minkowski_diff(data.Q, data.H)
    if D.is_empty:
        raise EmptyErosion("Q eroded by H is empty")
    cands = [(a, b, K.support(a)) for a, b in D.facets]
    value, active = _min_ratio(cands)
    fixed_dim = len(fixed_subspace(generators, data.P.dim))
    info = {"fixed_subspace_dim": fixed_dim}
    if value == INF:
        return ThresholdResult(INF, info=info)
    return ThresholdResult(
        value,
        tuple(Fraction(x) for x in active[0][0]),
        tuple({"facet_normal": a, "facet_offset": b, "support": h} for a, b, h in active),
        info,
    )


def alpha_report(data: CompactificationData) -> ThresholdResult:
    return _alpha_pipeline(data, data.W.generators)


def alpha(data: CompactificationData):
    """``sup{c > 0 : c(P + (-P^W)) in Q (-) H}``."""
    return alpha_report(data).value


def alpha_semisimple(data: CompactificationData):
    """Inradius of ``P`` in ``Q (-) H``; only valid when ``P^W = {0}``."""
    if fixed_subspace(data.W.generators, data.P.dim):
        raise NotSemisimple("the Weyl group fixes a nonzero subspace")
    D = minkowski_diff(data.Q, data.H)
    if D.is_empty:
        raise EmptyErosion("Q eroded by H is empty")
    return inradius(data.P, D)


def _check_symmetries(data: CompactificationData, O: Sequence) -> list:
    from ._linalg import mat_vec

    gens = []
    for g in O:
        g = tuple(vec(row) for row in g)
        if len(g) != data.P.dim or any(len(row) != data.P.dim for row in g):
            raise DimensionMismatch("symmetry matrix of wrong size")
        for name, poly in (("P", data.P), ("Q", data.Q)):
            verts = set(poly.vertices)
            if {mat_vec(g, v) for v in verts} != verts:
                raise SymmetryViolation(f"symmetry does not preserve {name}")
        gens.append(g)
    return gens


def alpha_with_symmetries_report(data: CompactificationData, O: Sequence, max_order: int = DEFAULT_MAX_WEYL) -> ThresholdResult:
    gens = list(data.W.generators) + _check_symmetries(data, O)
    group_closure(gens, data.P.dim, max_order)  # raises if the group is too large
    return _alpha_pipeline(data, gens)


def alpha_with_symmetries(data: CompactificationData, O: Sequence, max_order: int = DEFAULT_MAX_WEYL):
    """Alpha invariant for the group generated by ``K x K`` and extra symmetries ``O``."""
    return alpha_with_symmetries_report(data, O, max_order).value
