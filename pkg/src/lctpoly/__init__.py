"""Exact log canonical thresholds and alpha invariants of polarized group compactifications."""
from .errors import *  # noqa: F401,F403
from .fan import Fan, PolyhedralCone, common_refinement, dual_cone, normal_fan, rays_of
from .invariants import (
    CompactificationData,
    FanoReport,
    ThresholdResult,
    alpha,
    alpha_report,
    alpha_semisimple,
    alpha_with_symmetries,
    fano_check,
    lct,
    lct_report,
)
from .lp import LPResult, exact_lp
from .newton import (
    NewtonBodyExplicit,
    PLConvexFunction,
    PLPotential,
    PointMetric,
    Polyhedron,
    ReferenceBT,
    newton_body,
    newton_set_on_cone,
    newton_sum,
)
from .numcheck import (
    ConvergenceVerdict,
    IntegrandSpec,
    criterion_agreement,
    estimate_integral,
    exact_integrable,
    kak_density,
)
from .polytope import (
    INF,
    RationalPolytope,
    contains,
    contains_in_interior,
    hull,
    inradius,
    minkowski_diff,
    minkowski_sum,
    support,
)
from .rootsys import (
    RootSystem,
    WeylGroup,
    build_root_system,
    fixed_subspace,
    orbit_hull,
    weyl_group,
    wonderful_polytope,
)

__version__ = "0.1.0"
