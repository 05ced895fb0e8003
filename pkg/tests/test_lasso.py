import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weakeff import lasso
from weakeff.lasso import (
    LassoProblem,
    SweepResult,
    check_front_efficiency,
    kkt_residual,
    lambda_eff,
    objectives,
    pareto_sweep,
    soft_threshold,
    solve_lasso,
    solve_scalarized,
)
from weakeff.order import InvalidArgument


def test_objective_values():
    I = np.eye(2)
    assert objectives(LassoProblem(I, [0, 0], 0.1), [0, 0]) == (0, 0, 0, 0)
    assert objectives(LassoProblem(I, [2, 0], 0.1), [0, 0]) == (1.0, 0.0, 1.0, 0.0)
    f = objectives(LassoProblem(np.zeros((3, 2)), [1, 1, 1], 0.5), [1, -1])
    assert f[1] == 2 and f[3] == 3
    with pytest.raises(InvalidArgument):
        objectives(LassoProblem(I, [0, 0], 0.1), [0, 0, 0])


def test_soft_threshold():
    assert soft_threshold(3, 1) == 2
    assert soft_threshold(-0.5, 1) == 0
    assert soft_threshold(-1.5, 0) == -1.5
    with pytest.raises(InvalidArgument):
        soft_threshold(1, -1)


def test_lambda_eff():
    assert lambda_eff(1.0, 0.3) == 0.3
    assert lambda_eff(0.5, 0.0) == 1.0
    with pytest.raises(InvalidArgument):
        lambda_eff(0.0, 0.1)
    assert lasso.weight_for(lambda_eff(0.37, 0.2), 0.2) == pytest.approx(0.37)


def test_identity_design_closed_form():
    y = np.array([3.0, -0.5, 1.2, 0.0])
    p = LassoProblem(np.eye(4), y, 0.1)
    lam = 0.2
    theta, res = solve_lasso(p, lam)
    assert np.allclose(theta, soft_threshold(y, lam * 4), atol=1e-8)
    assert res <= 1e-8


def test_zero_response_gives_zero():
    p = LassoProblem(np.random.default_rng(0).normal(size=(10, 4)), np.zeros(10), 0.1)
    theta, _ = solve_scalarized(p, 0.5)
    assert not theta.any()


def test_mismatched_shapes():
    with pytest.raises(InvalidArgument):
        LassoProblem(np.eye(2), [1, 2, 3], 0.1)


def test_solver_failure_carries_residual():
    p = lasso.synthetic(seed=2)
    with pytest.raises(lasso.SolverError) as ei:
        solve_lasso(p, 0.01, max_iter=5, polish=False)
    assert ei.value.best_residual > 1e-8


def test_sweep_failures_stay_per_entry():
    p = lasso.synthetic(seed=2)
    sr = pareto_sweep(p, [0.3, 1.0], max_iter=5, polish=False)
    assert len(sr.entries) == 2 and all(not e.ok for e in sr.entries)
    assert check_front_efficiency(sr).n_entries == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.floats(0.05, 0.99))
def test_kkt_conditions_hold(seed, w):
    p = lasso.synthetic(30, 8, 3, 0.2, 0.01, seed)
    theta, res = solve_scalarized(p, w)
    lam = lambda_eff(w, p.epsilon)
    g = p.gradient(theta)
    nz = theta != 0
    assert np.all(np.abs(g[nz] + lam * np.sign(theta[nz])) <= 1e-8)
    assert np.all(np.abs(g[~nz]) <= lam + 1e-8)
    assert res == kkt_residual(p, theta, lam)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.floats(0.01, 1.0))
def test_weighted_sum_reduction(seed, w):
    rng = np.random.default_rng(seed)
    p = LassoProblem(rng.normal(size=(6, 3)), rng.normal(size=6), 0.05)
    theta = rng.normal(size=3)
    f1, f2, g1, g2 = objectives(p, theta)
    assert g2 == (1 + p.epsilon) * f2
    assert w * g1 + (1 - w) * g2 == pytest.approx(w * (f1 + lambda_eff(w, p.epsilon) * f2))


def test_sweep_path_monotone():
    p = lasso.synthetic(seed=0)
    sr = pareto_sweep(p)
    assert all(e.ok and e.kkt_residual <= 1e-8 for e in sr.entries)
    ordered = sorted(sr.entries, key=lambda e: e.lambda_eff)
    for a, b in zip(ordered, ordered[1:]):
        assert b.objectives[1] <= a.objectives[1] + 2e-8
        assert b.objectives[0] >= a.objectives[0] - 2e-8


def test_full_weight_entry_is_plain_solve():
    p = lasso.synthetic(seed=4)
    sr = pareto_sweep(p, [0.5, 1.0])
    theta, _ = solve_lasso(p, p.epsilon)
    assert np.allclose(sr.entries[-1].theta, theta, atol=1e-6)


def test_zero_response_sweep_all_zero():
    p = LassoProblem(np.ones((3, 2)), np.zeros(3), 0.1)
    sr = pareto_sweep(p, [0.2, 0.9])
    assert all(not e.theta.any() for e in sr.entries)
    assert sr.entries[0].objectives == sr.entries[1].objectives


def test_theorem_check_on_hand_lists():
    assert check_front_efficiency([(1, 0), (1, 1)]).weak_only == [1]
    assert check_front_efficiency([(1, 0)]).holds
    # differences inside the tolerance count as ties
    assert check_front_efficiency([(1, 0), (1 + 1e-7, 1)]).weak_only == [1]
    assert check_front_efficiency([(0, 1), (1, 0)]).holds


def test_sweep_serializes():
    sr = pareto_sweep(lasso.synthetic(20, 5, 2, 0.1, 0.01, 1), [0.5, 1.0])
    d = sr.to_dict()
    assert isinstance(sr, SweepResult) and len(d["entries"]) == 2
    assert d["endpoint"]["weight"] == 0.0


def test_zero_matrix_demo():
    r = lasso.zero_matrix_counterexample(n=1, thetas=[[0.0], [1.0], [2.0]], epsilon=0.0, y=[1.0, 1.0])
    c = 2 / (2 * 2)
    assert r["images"] == [[c, 0.0], [c, 1.0], [c, 2.0]]
    assert r["WM"] == [0, 1, 2] and r["M"] == [0]
    r = lasso.zero_matrix_counterexample(n=1, thetas=[[0.0], [1.0], [2.0]], epsilon=0.1, y=[1.0, 1.0])
    assert r["WM"] == [0] and r["M"] == [0]
    r = lasso.zero_matrix_counterexample(n=1, sample=1)
    assert r["WM"] == r["M"] == [0]


def test_duplicated_columns():
    r = lasso.duplicated_column_check(starts=[[0.0, 1.5], [1.5, 0.0], [0.0, 0.0], [3.0, -1.0], [0.7, 0.2]])
    assert r["agree"]
    for run in r["runs"]:
        assert run["sq_residual"] == pytest.approx(0.25, abs=1e-6)
        assert run["l1"] == pytest.approx(1.5, abs=1e-6)
    full_rank = lasso.duplicated_column_check(X=np.eye(2), y=[1.0, 2.0], epsilon=0.1)
    assert full_rank["agree"]
