import itertools
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from lctpoly._linalg import solve
from lctpoly.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, exact_lp


def test_single_bound():
    res = exact_lp([1], [([1], 3)])
    assert res.status == OPTIMAL and res.value == 3 and res.x == (3,)


def test_infeasible_pair():
    res = exact_lp([1], [([1], 0), ([-1], -1)])
    assert res.status == INFEASIBLE and res.value is None


def test_unbounded():
    res = exact_lp([1, 0], [([0, 1], 1)])
    assert res.status == UNBOUNDED


def test_nonneg_flags():
    # max x + y with x, y >= 0 and x + 2y <= 4, 3x + y <= 6
    res = exact_lp([1, 1], [([1, 2], 4), ([3, 1], 6)], nonneg=[True, True])
    assert res.value == Fraction(14, 5)


def test_degenerate_cycling_example():
    # Beale's classic cycling instance; Bland's rule must terminate
    c = [Fraction(3, 4), -150, Fraction(1, 50), -6]
    A = [
        ([Fraction(1, 4), -60, Fraction(-1, 25), 9], 0),
        ([Fraction(1, 2), -90, Fraction(-1, 50), 3], 0),
        ([0, 0, 1, 0], 1),
    ]
    res = exact_lp(c, A, nonneg=[True] * 4)
    assert res.value == Fraction(1, 20)


def _brute_force(c, cons, d):
    best = None
    for rows in itertools.combinations(cons, d):
        x = solve([a for a, _ in rows], [b for _, b in rows])
        if x is None:
            continue
        if all(sum(ai * xi for ai, xi in zip(a, x)) <= b for a, b in cons):
            v = sum(ci * xi for ci, xi in zip(c, x))
            best = v if best is None else max(best, v)
    return best


@given(
    st.integers(1, 4).flatmap(
        lambda d: st.tuples(
            st.just(d),
            st.lists(st.integers(-3, 3), min_size=d, max_size=d),
            st.lists(
                st.tuples(st.lists(st.integers(-3, 3), min_size=d, max_size=d), st.integers(-3, 6)),
                max_size=10 - 2 * d if d < 4 else 2,
            ),
        )
    )
)
def test_matches_vertex_enumeration(data):
    d, c, cons = data
    # a bounding box keeps every instance bounded so vertices decide everything
    box = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        box.append((list(e), 5))
        e[i] = -1
        box.append((list(e), 5))
    cons = [(a, b) for a, b in cons] + box
    res = exact_lp(c, cons)
    brute = _brute_force([Fraction(v) for v in c], [([Fraction(v) for v in a], Fraction(b)) for a, b in cons], d)
    if brute is None:
        assert res.status == INFEASIBLE
    else:
        assert res.status == OPTIMAL
        assert res.value == brute
        assert all(sum(Fraction(ai) * xi for ai, xi in zip(a, res.x)) <= b for a, b in cons)
