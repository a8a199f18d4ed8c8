import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lctpoly.errors import InconclusiveNumerics, OutsideChamber, ValidationError
from lctpoly.fan import PolyhedralCone
from lctpoly.newton import PLConvexFunction, newton_set_on_cone
from lctpoly.numcheck import (
    CONVERGING,
    DIVERGING,
    INCONCLUSIVE,
    IntegrandSpec,
    criterion_agreement,
    criterion_report,
    estimate_integral,
    exact_integrable,
    kak_density,
    log_kak_density,
)
from lctpoly.invariants import CompactificationData
from lctpoly.rootsys import build_root_system

A1 = build_root_system("A1")


def linear(*m):
    return PLConvexFunction.linear(m)


class TestDensity:
    def test_wall(self):
        assert kak_density(A1, (0,)) == 0.0

    def test_value(self):
        assert kak_density(A1, (1,)) == pytest.approx(math.sinh(1) ** 2)
        assert kak_density(A1, (1,)) == pytest.approx(1.3811, abs=1e-4)

    def test_empty_product(self):
        assert kak_density(build_root_system("T2"), (3, -7)) == 1.0

    def test_outside(self):
        with pytest.raises(OutsideChamber):
            kak_density(A1, (-1,))

    def test_log_density_matches(self):
        rs = build_root_system("B2")
        x = (0.7, 1.3)
        assert math.exp(log_kak_density(rs, [x])[0]) == pytest.approx(kak_density(rs, x))

    @pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
    @given(data=st.data())
    def test_exponential_bounds(self, label, data):
        rs = build_root_system(label)
        # a point with every simple root value at least 1
        x = np.array([data.draw(st.floats(1, 6)) for _ in range(rs.ambient_dim)])
        n = len(rs.positive_roots)
        four_rho = 4 * float(sum(float(r) * v for r, v in zip(rs.rho, x)))
        log_j = log_kak_density(rs, [x])[0]
        upper = four_rho - 2 * n * math.log(2)
        lower = upper + 2 * n * math.log(1 - math.exp(-2))
        assert lower - 1e-9 <= log_j <= upper + 1e-9


class TestEstimates:
    def test_spec_validation(self):
        with pytest.raises(ValidationError):
            IntegrandSpec(A1, linear(4), (2, 2))
        with pytest.raises(ValidationError):
            IntegrandSpec(A1, linear(4), (2, 4), 0)
        with pytest.raises(ValidationError):
            IntegrandSpec(A1, linear(4, 1))

    def test_converging_limit(self):
        v = estimate_integral(IntegrandSpec(A1, linear(4)), seed=1)
        assert v.verdict == CONVERGING
        assert v.partial_integrals[-1] == pytest.approx(1 / 24, rel=0.02)

    def test_boundary_diverges(self):
        assert estimate_integral(IntegrandSpec(A1, linear(2))).verdict == DIVERGING

    def test_three_converges(self):
        assert estimate_integral(IntegrandSpec(A1, linear(3))).verdict == CONVERGING

    def test_equal_shells_are_inconclusive(self):
        spec = IntegrandSpec(A1, linear(2), (2, 4, 6, 8), 20000)
        assert estimate_integral(spec).verdict == INCONCLUSIVE
        with pytest.raises(InconclusiveNumerics):
            criterion_agreement(A1, linear(2), radii=(2, 4, 6, 8))

    def test_partial_integrals_nondecreasing(self):
        v = estimate_integral(IntegrandSpec(build_root_system("A2"), linear(5, 5), samples_per_cell=5000))
        assert all(b >= a for a, b in zip(v.partial_integrals, v.partial_integrals[1:]))
        assert all(i >= 0 for i in v.increments)

    def test_seeded_determinism(self):
        spec = IntegrandSpec(A1, linear(3), samples_per_cell=2000)
        assert estimate_integral(spec, 9).to_json() == estimate_integral(spec, 9).to_json()
        assert estimate_integral(spec, 9).to_json() != estimate_integral(spec, 10).to_json()

    def test_shell_streams_are_independent_of_later_radii(self):
        short = estimate_integral(IntegrandSpec(A1, linear(3), (2, 4), 2000), 4)
        long = estimate_integral(IntegrandSpec(A1, linear(3), (2, 4, 8), 2000), 4)
        # the first shell uses the first substream in both runs
        assert short.increments[0] == long.increments[0]

    def test_underflow_counts_as_converging(self):
        v = estimate_integral(IntegrandSpec(A1, linear(2000), samples_per_cell=100))
        assert v.verdict == CONVERGING


class TestCriterion:
    @pytest.mark.parametrize("label,m", [("A2", (5, 5)), ("B2", None), ("G2", None), ("A1xA1", (3, 3))])
    def test_strictly_dominant_linear_exponent_converges(self, label, m):
        rs = build_root_system(label)
        if m is None:
            m = tuple(4 * r + 1 for r in rs.rho)
        l = PLConvexFunction.linear(m)
        assert exact_integrable(rs, l)
        assert criterion_agreement(rs, l, samples=5000)

    @pytest.mark.parametrize("t,expected", [(1, False), (2, False), (3, True), (4, True), (6, True)])
    def test_a1_exact_side(self, t, expected):
        assert exact_integrable(A1, linear(t)) is expected

    def test_a2_large_dilate(self):
        rs = build_root_system("A2")
        Q = CompactificationData.wonderful(rs).Q
        l = PLConvexFunction.support_function(Q.scale(4))
        assert exact_integrable(rs, l)
        assert criterion_agreement(rs, l, samples=5000)

    @pytest.mark.parametrize("pieces,expected", [
        ([((1,), 0), ((-1,), 0)], True),   # |x|: 0 in the interior of [-1, 1]
        ([((1,), 0), ((0,), 0)], False),   # max(x, 0): 0 on the boundary
        ([((1, 0), 0), ((-1, 0), 0), ((0, 1), 0), ((0, -1), 0)], True),
        ([((1, 0), 0), ((-1, 0), 0), ((0, 1), 0)], False),
    ])
    def test_empty_system(self, pieces, expected):
        l = PLConvexFunction(pieces)
        rs = build_root_system(f"T{l.dim}")
        assert exact_integrable(rs, l) is expected
        assert newton_set_on_cone(l).interior_contains_point((0,) * l.dim) is expected
        rep = criterion_report(rs, l, samples=5000)
        assert rep.agree is True

    def test_cone_decomposition(self):
        rs = build_root_system("A2")
        l = linear(5, 5)
        halves = [
            PolyhedralCone.from_rays([(1, 0), (1, 1)]),
            PolyhedralCone.from_rays([(1, 1), (0, 1)]),
        ]
        assert exact_integrable(rs, l, halves) == exact_integrable(rs, l)
