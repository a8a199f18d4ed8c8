"""Floating-point cross-check of the integrability criterion.

Monte-Carlo estimates of ``int_{chamber} exp(-l(x)) J(x) dx`` over growing
boxes, with ``J(x) = prod_{positive roots} sinh(alpha(x))^2``, are compared
against the exact test ``4 rho in Int N_chamber(l)``. Nothing in here feeds
back into the exact modules.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._linalg import as_fraction, dot, vec
from .errors import InconclusiveNumerics, OutsideChamber, ValidationError
from .fan import PolyhedralCone
from .newton import PLConvexFunction, newton_set_on_cone
from .rootsys import RootSystem

CONVERGING = "converging"
DIVERGING = "diverging"
INCONCLUSIVE = "inconclusive"

DEFAULT_RADII = (2, 4, 8, 16)
DEFAULT_SAMPLES = 20000
CONVERGE_BELOW = 0.9
DIVERGE_ABOVE = 1.1


def kak_density(rs: RootSystem, x: Sequence) -> float:
    """``prod sinh(alpha(x))^2`` over positive roots, for ``x`` in the closed chamber."""
    x = vec(x)
    if len(x) != rs.ambient_dim:
        raise ValidationError("point of wrong dimension")
    for i, a in enumerate(rs.simple_roots):
        if dot(a, x) < 0:
            raise OutsideChamber(f"alpha_{i}(x) < 0")
    out = 1.0
    for a in rs.positive_roots:
        out *= math.sinh(float(dot(a, x))) ** 2
    return out


def log_kak_density(rs: RootSystem, X: np.ndarray) -> np.ndarray:
    """Vectorized ``log J`` on chamber points; ``-inf`` on walls."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    out = np.zeros(X.shape[0])
    if not rs.positive_roots:
        return out
    A = np.array([[float(v) for v in a] for a in rs.positive_roots])
    Z = X @ A.T
    with np.errstate(divide="ignore"):
        # log sinh z = z + log(1 - exp(-2z)) - log 2, stable for large z
        logsinh = Z + np.log1p(-np.exp(-2.0 * Z)) - math.log(2.0)
    return 2.0 * logsinh.sum(axis=1)


@dataclass(frozen=True)
class IntegrandSpec:
    rs: RootSystem
    l: PLConvexFunction
    truncation_radii: tuple = DEFAULT_RADII
    samples_per_cell: int = DEFAULT_SAMPLES

    def __post_init__(self):
        radii = tuple(as_fraction(r) for r in self.truncation_radii)
        if not radii or radii[0] <= 0 or any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValidationError("truncation radii must be positive and strictly increasing")
        if self.samples_per_cell < 1:
            raise ValidationError("need at least one sample per cell")
        if self.l.dim != self.rs.ambient_dim:
            raise ValidationError("exponent and root system live in different spaces")
        object.__setattr__(self, "truncation_radii", radii)


@dataclass(frozen=True)
class ConvergenceVerdict:
    partial_integrals: list
    increments: list
    verdict: str
    ratio_trend: list
    fitted_ratio: float

    def to_json(self) -> dict:
        return {
            "partial_integrals": self.partial_integrals,
            "increments": self.increments,
            "verdict": self.verdict,
            "ratio_trend": self.ratio_trend,
            "fitted_ratio": self.fitted_ratio,
        }


def _orthant_coordinates(rs: RootSystem) -> list[bool]:
    """Coordinates ``i`` for which ``x_i >= 0`` is a chamber inequality."""
    flags = [False] * rs.ambient_dim
    for a in rs.simple_roots:
        nz = [i for i, v in enumerate(a) if v != 0]
        if len(nz) == 1 and a[nz[0]] > 0:
            flags[nz[0]] = True
    return flags


def _shell_estimate(rs, l, inner: float, outer: float, n: int, rng: np.random.Generator) -> float:
    half = _orthant_coordinates(rs)
    lo = np.array([0.0 if h else -outer for h in half])
    hi = np.full(rs.ambient_dim, outer)
    volume = float(np.prod(hi - lo))
    X = rng.uniform(lo, hi, size=(n, rs.ambient_dim))
    keep = np.abs(X).max(axis=1) > inner
    if rs.simple_roots:
        S = np.array([[float(v) for v in a] for a in rs.simple_roots])
        keep &= (X @ S.T >= 0).all(axis=1)
    vals = np.zeros(n)
    if keep.any():
        Y = X[keep]
        with np.errstate(over="ignore", under="ignore"):
            vals[keep] = np.exp(log_kak_density(rs, Y) - l.evaluate(Y))
    return volume * float(vals.mean())


def _fit_ratio(increments: list[float]) -> tuple[float, list[float]]:
    trend = []
    for a, b in zip(increments, increments[1:]):
        if a > 0:
            trend.append(b / a)
        else:
            trend.append(0.0 if b == 0 else math.inf)
    tail = increments[1:] if len(increments) >= 3 else increments
    if all(v == 0 for v in tail):
        return 0.0, trend
    logs = np.log(np.maximum(np.array(tail), 1e-300))
    k = np.arange(len(tail), dtype=float)
    slope = float(np.polyfit(k, logs, 1)[0]) if len(tail) > 1 else 0.0
    return math.exp(slope), trend


def estimate_integral(spec: IntegrandSpec, seed: int = 0) -> ConvergenceVerdict:
    """Shell-by-shell Monte-Carlo estimates and a geometric-trend verdict.

    Shell ``k`` is the part of the chamber with ``R_{k-1} < |x|_inf <= R_k``
    (``R_0 = 0``); each shell draws from its own seeded substream so the
    result does not depend on evaluation order.
    """
    radii = [float(r) for r in spec.truncation_radii]
    streams = np.random.SeedSequence(seed).spawn(len(radii))
    increments = []
    inner = 0.0
    for R, ss in zip(radii, streams):
        rng = np.random.default_rng(ss)
        increments.append(_shell_estimate(spec.rs, spec.l, inner, R, spec.samples_per_cell, rng))
        inner = R
    partial = list(np.cumsum(increments).tolist())
    ratio, trend = _fit_ratio(increments)
    if ratio < CONVERGE_BELOW:
        verdict = CONVERGING
    elif ratio > DIVERGE_ABOVE:
        verdict = DIVERGING
    else:
        verdict = INCONCLUSIVE
    return ConvergenceVerdict(partial, increments, verdict, trend, ratio)


def exact_integrable(rs: RootSystem, l: PLConvexFunction, cones: Sequence[PolyhedralCone] | None = None) -> bool:
    """``4 rho in Int N(l)`` where ``N(l)`` is the Newton set over the chamber,
    computed as the intersection of the Newton sets over ``cones`` when a
    decomposition of the chamber is given.
    """
    cones = list(cones) if cones else [rs.weyl_chamber()]
    N = newton_set_on_cone(l, cones[0])
    for c in cones[1:]:
        N = N.intersect(newton_set_on_cone(l, c))
    return N.interior_contains_point(tuple(4 * x for x in rs.rho))


@dataclass(frozen=True)
class AgreementReport:
    exact_integrable: bool
    numeric: ConvergenceVerdict
    agree: bool | None  # None when the numerics are inconclusive

    def to_json(self) -> dict:
        return {
            "exact": "integrable" if self.exact_integrable else "non-integrable",
            "numeric": self.numeric.to_json(),
            "agree": self.agree,
        }


def criterion_report(
    rs: RootSystem,
    l: PLConvexFunction,
    cones: Sequence[PolyhedralCone] | None = None,
    radii: Sequence = DEFAULT_RADII,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> AgreementReport:
    exact = exact_integrable(rs, l, cones)
    numeric = estimate_integral(IntegrandSpec(rs, l, tuple(radii), samples), seed)
    if numeric.verdict == INCONCLUSIVE:
        agree = None
    else:
        agree = (numeric.verdict == CONVERGING) == exact
    return AgreementReport(exact, numeric, agree)


def criterion_agreement(
    rs: RootSystem,
    l: PLConvexFunction,
    cones: Sequence[PolyhedralCone] | None = None,
    radii: Sequence = DEFAULT_RADII,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> bool:
    """Whether the numerical verdict matches the exact criterion.

    Raises :class:`InconclusiveNumerics` instead of guessing.
    """
    rep = criterion_report(rs, l, cones, radii, samples, seed)
    if rep.agree is None:
        raise InconclusiveNumerics(f"fitted ratio {rep.numeric.fitted_ratio:.3f} inside the undecided band")
    return rep.agree
