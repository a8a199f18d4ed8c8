import pytest
from hypothesis import given
from hypothesis import strategies as st

from lctpoly.errors import ValidationError
from lctpoly.fan import (
    Fan,
    PolyhedralCone,
    common_refinement,
    dual_cone,
    normal_fan,
    rays_of,
    single_cone_fan,
)
from lctpoly.polytope import contains, hull, minkowski_sum, support
from lctpoly.rootsys import build_root_system, orbit_hull, weyl_group
from strategies import directions, full_dim_polytopes

SQUARE = hull([(-1, -1), (1, -1), (-1, 1), (1, 1)])


def hexagon():
    rs = build_root_system("A2")
    return orbit_hull(weyl_group(rs), (2, 2))


class TestCones:
    def test_orthant_self_dual(self):
        O = PolyhedralCone.orthant(3)
        assert dual_cone(O) == O

    def test_zero_cone_dual_is_everything(self):
        Z = PolyhedralCone.from_rays([], dim=2)
        assert Z.cone_dim == 0
        assert dual_cone(Z) == PolyhedralCone.full_space(2)

    def test_a2_chamber_is_spanned_by_fundamental_coweights(self):
        rs = build_root_system("A2")
        C = rs.weyl_chamber()
        # fundamental coweights: alpha_i(w_j) = delta_ij
        for w in C.rays:
            vals = sorted(sum(a * x for a, x in zip(alpha, w)) for alpha in rs.simple_roots)
            assert vals == [0, 1]
        assert len(C.rays) == 2
        assert dual_cone(C) == PolyhedralCone.from_rays(rs.simple_roots)

    def test_rays_and_normals_agree(self):
        C = PolyhedralCone.from_rays([(1, 0, 0), (1, 1, 0), (0, 1, 0), (1, 1, 1), (2, 1, 1)])
        assert C == PolyhedralCone.from_inequalities(C.facet_normals, C.equations, 3)
        # (1, 1, 0) and (2, 1, 1) are sums of other generators
        assert C.rays == ((0, 1, 0), (1, 0, 0), (1, 1, 1))

    def test_lineality(self):
        half = PolyhedralCone.from_rays([(1, 0)], lineality=[(0, 1)])
        assert not half.is_pointed
        assert half.contains((3, -7)) and not half.contains((-1, 0))

    def test_json_round_trip(self):
        C = PolyhedralCone.from_rays([(1, 2), (3, -1)])
        assert PolyhedralCone.from_json(C.to_json(), 2) == C

    @given(st.integers(2, 3).flatmap(lambda d: st.lists(directions(d), min_size=d, max_size=6)))
    def test_dual_involution(self, gens):
        C = PolyhedralCone.from_rays(gens)
        if not (C.is_full_dimensional and C.is_pointed):
            return
        D = dual_cone(dual_cone(C))
        assert D == C and D.rays == C.rays and D.facet_normals == C.facet_normals


class TestNormalFan:
    def test_segment(self):
        F = normal_fan(hull([(-1,), (1,)]))
        assert sorted(c.rays for c in F.cones) == [((-1,),), ((1,),)]

    def test_square_quadrants(self):
        F = normal_fan(SQUARE)
        assert len(F.cones) == 4
        assert rays_of(F) == [(-1, 0), (0, -1), (0, 1), (1, 0)]

    def test_hexagon(self):
        F = normal_fan(hexagon())
        assert len(F.cones) == 6
        assert len(rays_of(F)) == 6

    def test_incomplete_fan_rejected(self):
        with pytest.raises(ValidationError):
            Fan(2, (PolyhedralCone.orthant(2),))

    def test_overlapping_cones_rejected(self):
        a = PolyhedralCone.from_rays([(1, 0), (0, 1)])
        b = PolyhedralCone.from_rays([(1, 1), (-1, 1)])
        with pytest.raises(ValidationError):
            Fan(2, (a, b), complete=False)

    @given(st.integers(1, 3).flatmap(lambda d: st.tuples(full_dim_polytopes(dim=d), directions(d))))
    def test_maximizer_cone_contains_direction(self, data):
        P, y = data
        F = normal_fan(P)
        h = support(P, y)
        for v, cone in zip(P.vertices, F.cones):
            at_v = sum(a * b for a, b in zip(y, v)) == h
            assert cone.contains(y) == at_v


class TestRefinement:
    def test_identity(self):
        F = normal_fan(hexagon())
        R = common_refinement(F, single_cone_fan(2))
        assert sorted(c.rays for c in R.cones) == sorted(c.rays for c in F.cones)

    def test_orthogonal_segments(self):
        F1 = normal_fan(hull([(-1, 0), (1, 0)]))
        F2 = normal_fan(hull([(0, -1), (0, 1)]))
        R = common_refinement(F1, F2)
        assert len(R.cones) == 4
        assert rays_of(R) == [(-1, 0), (0, -1), (0, 1), (1, 0)]

    def test_hexagon_and_diamond(self):
        diamond = hull([(1, 0), (0, 1), (-1, 0), (0, -1)])
        F = common_refinement(normal_fan(hexagon()), normal_fan(diamond))
        rays = set(rays_of(F))
        assert set(rays_of(normal_fan(hexagon()))) <= rays
        assert set(rays_of(normal_fan(diamond))) <= rays
        # the diamond normals (1, -1), (-1, 1) are shared with the hexagon
        assert len(rays) == 8

    def test_single_cone_fan_has_no_rays(self):
        assert rays_of(single_cone_fan(3)) == []

    @given(st.integers(1, 3).flatmap(lambda d: st.tuples(full_dim_polytopes(dim=d), full_dim_polytopes(dim=d), full_dim_polytopes(dim=d))))
    def test_sum_normals_are_refinement_rays(self, data):
        P, Q, B = data
        S = minkowski_sum(P, Q)
        rays = rays_of(common_refinement(normal_fan(P), normal_fan(Q)))
        assert {a for a, _ in S.facets} <= set(rays)
        # containment decided on the rays matches the H-rep route
        via_rays = all(support(B, y) <= support(S, y) for y in rays)
        assert via_rays == contains(S, B)
