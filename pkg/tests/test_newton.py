from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from lctpoly._linalg import inverse
from lctpoly.errors import NewtonBodyOutOfRange, NotWInvariant, ValidationError
from lctpoly.fan import PolyhedralCone, dual_cone
from lctpoly.lp import OPTIMAL, exact_lp
from lctpoly.newton import (
    NewtonBodyExplicit,
    PLConvexFunction,
    PLPotential,
    PointMetric,
    Polyhedron,
    ReferenceBT,
    check_w_invariance,
    metric_from_json,
    metric_to_json,
    newton_body,
    newton_set_on_cone,
    newton_sum,
)
from lctpoly.polytope import hull, point
from lctpoly.rootsys import build_root_system, orbit_hull, weyl_group, wonderful_polytope


@st.composite
def pl_functions(draw, dim, max_pieces=5):
    n = draw(st.integers(1, max_pieces))
    pieces = [
        (tuple(draw(st.integers(-3, 3)) for _ in range(dim)), draw(st.integers(-3, 3)))
        for _ in range(n)
    ]
    return PLConvexFunction(pieces)


@st.composite
def cones(draw, dim):
    gens = draw(st.lists(st.tuples(*[st.integers(-2, 2)] * dim), min_size=1, max_size=dim + 1))
    assume(any(any(g) for g in gens))
    return gens, PolyhedralCone.from_rays(gens, dim=dim)


def pairs(dim_max=3):
    return st.integers(1, dim_max).flatmap(lambda d: st.tuples(pl_functions(d), pl_functions(d), cones(d)))


def _bounded_below(f, m, gens):
    """f - m bounded below on cone(gens) iff min of its recession function over
    the truncated cone {sum l_j g_j : l >= 0, sum l_j <= 1} is zero."""
    k = len(gens)
    cons = []
    for mi, _ in f.pieces:
        row = [sum((a - b) * g for a, b, g in zip(mi, m, gen)) for gen in gens]
        cons.append((row + [-1], 0))  # <m_i - m, x> <= t
    cons.append(([1] * k + [0], 1))
    res = exact_lp([0] * k + [-1], cons, nonneg=[True] * k + [False])
    assert res.status == OPTIMAL
    return -res.value >= 0


class TestPLFunctions:
    def test_pruning_drops_inactive_pieces(self):
        f = PLConvexFunction([((1,), 0), ((-1,), 0), ((0,), -5), ((0,), -1)])
        assert f.slopes == [(-1,), (1,)]

    def test_evaluation(self):
        f = PLConvexFunction([((1, 0), 1), ((0, 1), F(-1, 2))])
        assert f((2, 5)) == F(9, 2)
        assert f.evaluate([[2.0, 5.0]])[0] == pytest.approx(4.5)

    def test_needs_a_piece(self):
        with pytest.raises(ValidationError):
            PLConvexFunction([])

    @given(st.integers(1, 3).flatmap(lambda d: st.tuples(pl_functions(d), pl_functions(d), st.lists(st.tuples(*[st.integers(-5, 5)] * d), min_size=1, max_size=5))))
    def test_sum_is_pointwise(self, data):
        f, g, xs = data
        h = f + g
        for x in xs:
            assert h(x) == f(x) + g(x)

    @given(st.integers(1, 3).flatmap(lambda d: st.tuples(pl_functions(d, 8), st.lists(st.tuples(*[st.integers(-5, 5)] * d), min_size=1, max_size=5))))
    def test_pruning_keeps_values(self, data):
        f, xs = data
        raw = PLConvexFunction(f.pieces, prune=False)
        for x in xs:
            assert f(x) == raw(x)


class TestNewtonSets:
    def test_affine_function(self):
        sigma = PolyhedralCone.from_rays([(1, 0), (1, 2)])
        N = newton_set_on_cone(PLConvexFunction([((3, -1), 7)]), sigma)
        expected = Polyhedron.from_generators([(3, -1)], [tuple(-x for x in r) for r in dual_cone(sigma).rays])
        assert N == expected

    def test_reference_potential(self):
        P = hull([(0, 0), (2, 0), (1, 3)])
        N = newton_set_on_cone(PLConvexFunction.support_function(P.scale(2)))
        assert N.to_polytope() == P.scale(2)

    def test_abs_on_half_line(self):
        f = PLConvexFunction([((1,), 0), ((-1,), 0)])
        N = newton_set_on_cone(f, PolyhedralCone.orthant(1))
        assert N == Polyhedron.from_generators([(1,)], [(-1,)])
        for k in range(-12, 12):
            m = (F(k, 4),)
            assert N.contains_point(m) == _bounded_below(f, m, [(1,)])

    @given(st.integers(1, 3).flatmap(lambda d: st.tuples(pl_functions(d), cones(d), st.lists(st.tuples(*[st.fractions(-4, 4, max_denominator=3)] * d), min_size=1, max_size=6))))
    def test_defining_condition(self, data):
        f, (gens, sigma), ms = data
        N = newton_set_on_cone(f, sigma)
        for m in ms + f.slopes:
            assert N.contains_point(m) == _bounded_below(f, m, gens)

    def test_sum_of_affines(self):
        sigma = PolyhedralCone.orthant(2)
        f = PLConvexFunction.linear((1, 2))
        g = PLConvexFunction.linear((-3, 1))
        expected = newton_set_on_cone(PLConvexFunction.linear((-2, 3)), sigma)
        assert newton_sum(f, g, sigma) == expected

    def test_doubling(self):
        f = PLConvexFunction.support_function(hull([(-1,), (1,)]))
        assert newton_sum(f, f).to_polytope() == hull([(-2,), (2,)])

    @given(pairs())
    def test_newsum(self, data):
        f, g, (_, sigma) = data
        assert newton_set_on_cone(f + g, sigma) == newton_set_on_cone(f, sigma) + newton_set_on_cone(g, sigma)

    @given(pairs(), st.fractions(min_value=F(1, 4), max_value=4, max_denominator=4), st.integers(-5, 5))
    def test_scaling_and_translation(self, data, c, k):
        f, _, (_, sigma) = data
        N = newton_set_on_cone(f, sigma)
        assert newton_set_on_cone(f.scale(c), sigma) == N.scale(c)
        assert newton_set_on_cone(f.shift(k), sigma) == N

    @given(pairs())
    def test_monotone(self, data):
        f, g, (_, sigma) = data
        bigger = PLConvexFunction(f.pieces + g.pieces)  # max(f, g) >= f
        assert newton_set_on_cone(bigger, sigma).contains(newton_set_on_cone(f, sigma))

    @given(pairs(), st.data())
    def test_sandwich(self, data, draw):
        f, _, (_, sigma) = data
        # slopes inside conv(slopes of f) keep max(f, extra) within a constant of f
        extra = []
        for _ in range(draw.draw(st.integers(1, 3))):
            m1 = draw.draw(st.sampled_from(f.slopes))
            m2 = draw.draw(st.sampled_from(f.slopes))
            extra.append((tuple((a + b) / 2 for a, b in zip(m1, m2)), draw.draw(st.integers(-5, 9))))
        g = PLConvexFunction(list(f.pieces) + extra)
        assert newton_set_on_cone(g, sigma) == newton_set_on_cone(f, sigma)

    @given(st.integers(2, 3).flatmap(lambda d: st.tuples(pl_functions(d), cones(d), st.tuples(*[st.integers(-2, 2)] * d))))
    def test_split_cone_intersection(self, data):
        f, (_, sigma), n = data
        assume(any(n))
        s1 = sigma.intersect(PolyhedralCone.from_inequalities([n], dim=sigma.dim))
        s2 = sigma.intersect(PolyhedralCone.from_inequalities([tuple(-x for x in n)], dim=sigma.dim))
        assert newton_set_on_cone(f, sigma) == newton_set_on_cone(f, s1).intersect(newton_set_on_cone(f, s2))

    @given(st.integers(1, 2).flatmap(pl_functions), st.data())
    def test_weyl_equivariance(self, f, data):
        label = {1: "A1", 2: data.draw(st.sampled_from(["A2", "B2", "G2"]))}[f.dim]
        W = weyl_group(build_root_system(label))
        w = data.draw(st.sampled_from(W.elements))
        N = newton_set_on_cone(f).to_polytope()
        assert newton_set_on_cone(f.pullback(w)).to_polytope() == N.image(inverse(w))


class TestNewtonBodies:
    def setup_method(self):
        self.rs = build_root_system("A1")
        self.W = weyl_group(self.rs)
        self.P = wonderful_polytope(self.rs, self.W)

    def test_reference(self):
        assert newton_body(ReferenceBT(), self.P, self.W) == hull([(-4,), (4,)])

    def test_point_zero(self):
        assert newton_body(PointMetric((0,)), self.P, self.W) == point((0,))

    def test_pl_potential(self):
        f = PLConvexFunction.support_function(self.P.scale(2))
        assert newton_body(PLPotential(f), self.P, self.W) == self.P.scale(2)

    def test_explicit_must_fit(self):
        with pytest.raises(NewtonBodyOutOfRange):
            newton_body(NewtonBodyExplicit(hull([(-5,), (5,)])), self.P, self.W)

    def test_point_must_be_fixed(self):
        with pytest.raises(NotWInvariant):
            newton_body(PointMetric((1,)), self.P, self.W)

    def test_explicit_must_be_invariant(self):
        with pytest.raises(NotWInvariant):
            newton_body(NewtonBodyExplicit(hull([(-1,), (2,)])), self.P, self.W)

    def test_w_invariance_checks(self):
        rs = build_root_system("A2")
        W = weyl_group(rs)
        H = orbit_hull(W, (2, 2))
        assert check_w_invariance(H, W)
        assert not check_w_invariance(point((2, 2)), W)
        Q = wonderful_polytope(rs, W)
        assert check_w_invariance(Q.scale(2), W)
        assert check_w_invariance(PLConvexFunction.support_function(Q), W)

    @pytest.mark.parametrize("spec", [
        ReferenceBT(),
        NewtonBodyExplicit(hull([(-1,), (1,)])),
        PLPotential(PLConvexFunction([((1,), F(1, 2)), ((-1,), 0)])),
        PointMetric((F(-3, 7),)),
    ])
    def test_json_round_trip(self, spec):
        assert metric_from_json(metric_to_json(spec)) == spec
