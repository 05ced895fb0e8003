import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weakeff.convexopt import (
    ConvexDomain,
    SampledMapping,
    check_convex,
    check_fdh_convexity_sampled,
    check_injectivity_on_efficient,
    check_strongly_convex,
    corollary_harness,
    fdh_membership,
    finite_fdh_is_convex,
    identity_on_polygon,
    instance,
    random_psd_quadratic,
    recheck_violation,
    simplex_domain,
)
from weakeff.effset import SolutionSet
from weakeff.geom2d import Polygon2, example_polygon
from weakeff.order import InvalidArgument


def scalar(fn, lo, hi):
    return SampledMapping(fn, ConvexDomain([lo], [hi]))


square = scalar(lambda x: x ** 2, -1, 1)


def test_square_is_convex_and_strongly_convex_at_two():
    assert check_convex(square).verdict == "consistent with"
    assert check_strongly_convex(square, 2.0).verdict == "consistent with"


def test_square_refuted_above_two():
    rep = check_strongly_convex(square, 2.5)
    assert rep.verdict == "refuted"
    assert recheck_violation(square, rep.violations[0], 2.5) > rep.tol


def test_sine_refuted_with_witness():
    f = scalar(np.sin, 0, np.pi)
    rep = check_convex(f)
    assert rep.violations
    v = rep.violations[0]
    assert v.lhs > v.rhs + rep.tol
    assert recheck_violation(f, v) > 0


def test_affine_passes():
    f = SampledMapping(lambda x: np.array([2 * x[0] - x[1], x[0] + 3]), ConvexDomain([-1, -1], [1, 1]))
    assert not check_convex(f, trials=200).violations


def test_abs_is_not_strongly_convex():
    assert check_strongly_convex(scalar(np.abs, -1, 1), 0.1).verdict == "refuted"


def test_alpha_must_be_positive():
    with pytest.raises(InvalidArgument):
        check_strongly_convex(square, 0.0)


def test_reports_carry_seed_and_are_reproducible():
    a = check_strongly_convex(square, 2.5, trials=50, seed=7)
    b = check_strongly_convex(square, 2.5, trials=50, seed=7)
    assert a.seed == 7 and a.to_dict() == b.to_dict()


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 2.0), st.integers(0, 1000))
def test_smaller_modulus_still_passes(alpha, seed):
    assert not check_strongly_convex(square, alpha, trials=60, seed=seed).violations


def test_fdh_membership_cases():
    imgs = [(0, 1), (1, 0)]
    assert fdh_membership(imgs, (2, 2))
    assert not fdh_membership(imgs, (0.5, 0.5))
    assert fdh_membership(imgs, (1, 0))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=1, max_size=10),
       st.tuples(st.integers(0, 6), st.integers(0, 6)), st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_fdh_membership_monotone(imgs, z, d):
    if fdh_membership(imgs, z):
        assert fdh_membership(imgs, (z[0] + d[0], z[1] + d[1]))


def test_sampled_hull_convexity():
    assert check_fdh_convexity_sampled(random_psd_quadratic(3, 2, 5)).rate == 0.0
    const = SampledMapping(lambda x: np.array([1.0, 2.0]), ConvexDomain([0, 0], [1, 1]))
    assert check_fdh_convexity_sampled(const, samples=500).rate == 0.0
    rep = check_fdh_convexity_sampled(identity_on_polygon(example_polygon("3.4")), seed=0)
    assert rep.rate > 0 and rep.verdict == "refuted"


def test_injectivity():
    assert check_injectivity_on_efficient(SolutionSet([(0, (1.0, 2.0))]))
    assert not check_injectivity_on_efficient(SolutionSet([(0, (1.0, 2.0)), (1, (1.0, 2.0))]))
    # duplicated dominated images are irrelevant
    assert check_injectivity_on_efficient(SolutionSet([(0, (0.0, 0.0)), (1, (3.0, 3.0)), (2, (3.0, 3.0))]))


@pytest.mark.parametrize("seed", range(5))
def test_strongly_convex_harness(seed):
    rep = corollary_harness(random_psd_quadratic(3, 2 + seed % 2, seed), "strongly-convex", seed=seed)
    assert rep.agrees and rep.injective
    assert rep.we == rep.e == rep.se


def test_flat_piece_breaks_alpha_and_beta():
    f = SampledMapping(lambda x: np.array([x[0], max(0.0, x[0])]), ConvexDomain([-1], [1]))
    rep = corollary_harness(f, "convex-map", samples=200)
    assert rep.alpha is False and rep.beta is False and rep.agrees


def test_constrained_matches_unconstrained_on_same_samples():
    Q = random_psd_quadratic(2, 2, 3)
    f = SampledMapping(Q.evaluate, simplex_domain(2))
    a = corollary_harness(f, "constrained", samples=300, seed=4)
    b = corollary_harness(f, "convex-map", samples=300, seed=4)
    assert (a.alpha, a.beta) == (b.alpha, b.beta) and a.agrees


def test_harness_rejects_unknown_kind():
    with pytest.raises(InvalidArgument):
        corollary_harness(square, "concave")
    with pytest.raises(InvalidArgument):
        corollary_harness(square, "strongly-convex")


def test_finite_hull_convexity():
    assert finite_fdh_is_convex([(0, 0), (1, 2), (0, 0)])
    assert not finite_fdh_is_convex([(0, 1), (1, 0)])
    assert finite_fdh_is_convex(np.zeros((0, 2)))


def test_domain_sampling():
    D = simplex_domain(3)
    X = D.sample(np.random.default_rng(0), 100)
    assert (X >= 0).all() and (X.sum(axis=1) <= 1).all()
    with pytest.raises(RuntimeError):
        ConvexDomain([0], [1], constraints=(lambda x: 1.0,), max_rejections=3).sample(np.random.default_rng(0), 5)
    with pytest.raises(InvalidArgument):
        ConvexDomain([1], [0])


def test_named_instances():
    assert isinstance(instance("example-3.2"), Polygon2)
    assert isinstance(instance("random-polygon", 3), Polygon2)
    assert isinstance(instance("convex-polygon", 3), Polygon2)
    assert instance("psd-quadratic", 1).modulus > 0
    with pytest.raises(InvalidArgument):
        instance("nope")
