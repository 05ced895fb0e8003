import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weakeff.effset import (
    CapacityError,
    PointSet,
    SolutionSet,
    TheoremInconsistency,
    TheoremVerdict,
    condition_alpha,
    condition_beta,
    efficient_set,
    efficient_set_fast,
    efficient_solutions,
    is_efficient_point,
    strictly_efficient,
    theorem_verdict,
    weakly_efficient_set,
)
from weakeff.order import InvalidArgument, lneq, lt, nonempty_subsets


def brute_eff(P, I=None):
    I = I or tuple(range(1, len(P[0]) + 1))
    return [j for j, p in enumerate(P) if not any(lneq(q, p, I) for q in P)]


def brute_weak(P, I=None):
    I = I or tuple(range(1, len(P[0]) + 1))
    return [j for j, p in enumerate(P) if not any(lt(q, p, I) for q in P)]


def test_small_set():
    Y = [(0, 1), (1, 0), (1, 1)]
    assert efficient_set(Y) == [0, 1]
    assert weakly_efficient_set(Y) == [0, 1, 2]
    assert efficient_set(Y, (1,)) == [0]
    assert efficient_set(Y, (2,)) == [1]


def test_duplicates_are_kept():
    Y = [(1, 1), (1, 1), (2, 0)]
    assert efficient_set(Y) == [0, 1, 2]
    assert efficient_set_fast(Y) == [0, 1, 2]


def test_empty_and_singleton():
    assert efficient_set(PointSet(np.zeros((0, 2)))) == []
    assert efficient_set([(3.0, 4.0)]) == [0]
    assert condition_alpha([(3.0, 4.0)]) == (True, [])
    assert condition_beta([(3.0, 4.0)]) == (True, [])


def test_point_set_validation():
    with pytest.raises(InvalidArgument):
        PointSet([[0.0, np.nan]])
    with pytest.raises(InvalidArgument):
        PointSet([[0.0, 1.0]], labels=["a", "b"])
    Y = PointSet([[0, 1]], labels=["first"])
    assert Y.label(0) == "first" and Y[0] == (0.0, 1.0)
    with pytest.raises(ValueError):
        Y.points[0, 0] = 5


def test_index_set_dimension_checked():
    with pytest.raises(InvalidArgument):
        efficient_set([(0, 1)], (3,))


def test_is_efficient_point_outside_set():
    Y = [(0, 2), (2, 0)]
    assert is_efficient_point(Y, (1, 1))
    assert not is_efficient_point(Y, (2, 2))
    assert is_efficient_point(Y, (0, 3), strict=True)
    assert not is_efficient_point(Y, (0, 3))


def test_solution_sets():
    S = SolutionSet([("a", (0, 1)), ("b", (0, 1)), ("c", (1, 0)), ("d", (2, 2))])
    assert efficient_solutions(S) == ["a", "b", "c"]
    assert strictly_efficient(S) == ["c"]
    with pytest.raises(InvalidArgument):
        SolutionSet([("a", (0, 1)), ("a", (1, 0))])


def test_alpha_beta_witnesses():
    Y = [(0, 0), (0, 1)]
    assert condition_alpha(Y) == (False, [1])
    holds, viol = condition_beta(Y)
    assert not holds
    assert [(I.members, j) for I, j in viol] == [((1,), 1)]


def test_beta_capacity():
    with pytest.raises(CapacityError):
        condition_beta(np.zeros((1, 21)))


def test_verdict_consistency_guard():
    with pytest.raises(TheoremInconsistency):
        TheoremVerdict(fdh_convex=None, alpha_holds=True, beta_holds=False)
    with pytest.raises(TheoremInconsistency):
        TheoremVerdict(fdh_convex=True, alpha_holds=False, beta_holds=True)
    v = theorem_verdict([(0, 1), (1, 0)])
    assert v.to_dict()["fdh_convex"] == "unknown"


points = st.integers(1, 4).flatmap(
    lambda m: st.lists(st.tuples(*[st.integers(0, 3)] * m), min_size=1, max_size=25)
)


@settings(max_examples=200, deadline=None)
@given(points)
def test_kernel_matches_definition(P):
    m = len(P[0])
    for I in nonempty_subsets(m):
        assert efficient_set(P, I) == brute_eff(P, I.members)
        assert weakly_efficient_set(P, I) == brute_weak(P, I.members)


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 3).flatmap(
    lambda m: st.lists(st.tuples(*[st.integers(0, 4)] * m), min_size=1, max_size=60)))
def test_fast_matches_kernel(P):
    assert efficient_set_fast(P) == efficient_set(P)


@settings(max_examples=200, deadline=None)
@given(points)
def test_set_properties(P):
    eff, weak = set(efficient_set(P)), set(weakly_efficient_set(P))
    assert eff <= weak
    assert eff  # a nonempty finite set has minimal elements
    a, _ = condition_alpha(P)
    b, _ = condition_beta(P)
    assert (not a) or b
    # adding a dominated copy changes nothing for the original indices
    worse = tuple(c + 1 for c in P[0])
    assert set(efficient_set(P + [worse])) - {len(P)} == eff


@settings(max_examples=100, deadline=None)
@given(points)
def test_permutation_equivariance(P):
    perm = list(reversed(range(len(P))))
    Q = [P[k] for k in perm]
    assert sorted(perm[j] for j in efficient_set(Q)) == efficient_set(P)


@settings(max_examples=100, deadline=None)
@given(points)
def test_monotone_transform_invariance(P):
    # strictly increasing maps per coordinate preserve both orders
    Q = [tuple(3 * c ** 3 + c - 7 for c in p) for p in P]
    assert efficient_set(Q) == efficient_set(P)
    assert weakly_efficient_set(Q) == weakly_efficient_set(P)


def test_union_over_singletons_is_weakly_efficient():
    # M_{i} points are never strictly dominated
    rng = np.random.default_rng(4)
    for _ in range(50):
        P = rng.integers(0, 4, size=(20, 3)).astype(float)
        weak = set(weakly_efficient_set(P))
        for i in (1, 2, 3):
            assert set(efficient_set(P, (i,))) <= weak
        assert set(itertools.chain.from_iterable(efficient_set(P, I) for I in nonempty_subsets(3))) <= weak


def test_polygon_vertex_fronts():
    # (0, 1) lies below (0, 2) and (1, 0) left of (2, 0)
    assert efficient_set([(0, 2), (0, 1), (1, 0), (2, 0)]) == [1, 2]
    assert efficient_set([(0, 1), (1, 0), (2, 1), (1, 2)]) == [0, 1]


def test_staircase_and_single_dominator():
    n = 50
    stair = [(i, n - i) for i in range(n)]
    assert efficient_set_fast(stair) == list(range(n))
    assert efficient_set_fast([(5, 5, 5), (0, 0, 0), (3, 1, 4)]) == [1]


@settings(max_examples=150, deadline=None)
@given(points, st.data())
def test_removing_dominated_point_keeps_front(P, data):
    eff = efficient_set(P)
    losers = [j for j in range(len(P)) if j not in eff]
    if not losers:
        return
    drop = data.draw(st.sampled_from(losers))
    rest = [p for j, p in enumerate(P) if j != drop]
    kept = [P[j] for j in eff]
    assert sorted(rest[j] for j in efficient_set(rest)) == sorted(kept)


@settings(max_examples=100, deadline=None)
@given(points)
def test_subset_chain_of_inclusions(P):
    weak_all = set(weakly_efficient_set(P))
    for I in nonempty_subsets(len(P[0])):
        assert set(efficient_set(P, I)) <= set(weakly_efficient_set(P, I)) <= weak_all
