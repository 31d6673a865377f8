import cvxpy as cp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bipartite_suite, complete, connected_er, cycle, graphs, petersen
from signlesslap.exceptions import DomainError
from signlesslap.functional import iplus, norm_subgradient, normalize
from signlesslap.ipm import IpmConfig, inner_solve, ipm_multistart, ipm_run, random_start
from signlesslap.oracle import oracle_dual_cheeger


def inner_objective(g, lam, v, x):
    return iplus(g, x) - lam * v @ x


def exact_inner(g, lam, v):
    x = cp.Variable(g.n)
    B = g.incidence.toarray()
    prob = cp.Problem(cp.Minimize(g.w @ cp.abs(B @ x) - lam * v @ x), [cp.norm(x, 2) <= 1])
    prob.solve()
    return prob.value


@pytest.mark.parametrize("g", [cycle(4), complete(4), petersen(), connected_er(8, seed=3)], ids=["C4", "K4", "Petersen", "ER8"])
def test_inner_solve_matches_conic_solver(g):
    rng = np.random.default_rng(1)
    x = normalize(g, random_start(g, rng))
    lam = iplus(g, x)
    v = norm_subgradient(g, x)
    got = inner_objective(g, lam, v, inner_solve(g, lam, v, x))
    assert got == pytest.approx(exact_inner(g, lam, v), abs=1e-6)


def test_inner_solve_k3_from_all_ones(k3):
    x = np.ones(3) / 6
    v = norm_subgradient(k3, x)
    xh = inner_solve(k3, 1.0, v, x)
    assert np.linalg.norm(xh) <= 1 + 1e-12
    f = inner_objective(k3, 1.0, v, xh)
    assert f <= 1e-12
    # dense sampling of the unit sphere cannot beat the solver
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(20000, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    grid = min(inner_objective(k3, 1.0, v, p) for p in pts)
    assert f <= grid + 1e-6


def test_inner_solve_lambda_zero_is_nonpositive(c4):
    xh = inner_solve(c4, 0.0, np.zeros(4), np.array([1.0, -1.0, 1.0, -1.0]))
    assert iplus(c4, xh) <= 1e-12


def test_inner_solve_rejects_zero_warm_start(k3):
    with pytest.raises(DomainError):
        inner_solve(k3, 1.0, np.zeros(3), np.zeros(3))


def test_ipm_run_single_edge_stops_at_zero(edge):
    tr = ipm_run(edge, [1.0, -1.0])
    assert tr.lambdas == [0.0]
    assert tr.reason == "zero" and tr.iterations == 0
    assert tr.verified


def test_ipm_run_config_validation():
    with pytest.raises(ValueError):
        IpmConfig(outer_tol=0)
    with pytest.raises(ValueError):
        IpmConfig(max_outer=0)
    assert IpmConfig().replace(rng_seed=4).rng_seed == 4


@pytest.mark.parametrize("g, expected", [(complete(3), 1 / 3), (cycle(5), 0.2), (cycle(4), 0.0), (petersen(), None)], ids=["K3", "C5", "C4", "Petersen"])
def test_multistart_hits_oracle(g, expected):
    res = ipm_multistart(g, restarts=10)
    target = 1 - oracle_dual_cheeger(g).value
    if expected is not None:
        assert target == pytest.approx(expected)
    assert res.trace.eigenvalue == pytest.approx(target, abs=1e-6)
    assert res.trace.verified


def test_multistart_is_deterministic():
    g = connected_er(8, seed=11)
    a = ipm_multistart(g, restarts=5, cfg=IpmConfig(rng_seed=7))
    b = ipm_multistart(g, restarts=5, cfg=IpmConfig(rng_seed=7))
    assert [t.lambdas for t in a.traces] == [t.lambdas for t in b.traces]
    np.testing.assert_array_equal(a.trace.x, b.trace.x)


def test_multistart_threads_match_serial():
    g = connected_er(7, seed=2)
    a = ipm_multistart(g, restarts=4)
    b = ipm_multistart(g, restarts=4, n_jobs=2)
    assert [t.lambdas for t in a.traces] == [t.lambdas for t in b.traces]


def test_multistart_rejects_no_restarts(k3):
    with pytest.raises(ValueError):
        ipm_multistart(k3, restarts=0)


@settings(max_examples=25, deadline=None)
@given(graphs(max_n=7), st.integers(0, 2**31))
def test_run_is_monotone_and_bracketed(g, seed):
    tr = ipm_run(g, random_start(g, np.random.default_rng(seed)))
    lam = np.array(tr.lambdas)
    assert np.all(np.diff(lam) <= 1e-12)
    assert np.all((lam >= -1e-12) & (lam <= 1 + 1e-12))
    assert tr.eigenvalue >= 1 - oracle_dual_cheeger(g).value - 1e-9


@settings(max_examples=15, deadline=None)
@given(graphs(max_n=7), st.integers(0, 2**31))
def test_run_is_scale_invariant(g, seed):
    x0 = random_start(g, np.random.default_rng(seed))
    a, b = ipm_run(g, x0), ipm_run(g, 2 * x0)
    assert a.lambdas == pytest.approx(b.lambdas, abs=1e-9)


def test_random_start_has_both_signs(k3):
    rng = np.random.default_rng(0)
    for _ in range(50):
        x = random_start(k3, rng)
        assert (x > 0).any() and (x < 0).any()


@pytest.mark.parametrize("name, g", bipartite_suite()[::3], ids=lambda v: v if isinstance(v, str) else "")
def test_multistart_bipartite_dual_cheeger_is_one(name, g):
    res = ipm_multistart(g, restarts=5)
    assert 1 - res.trace.eigenvalue == pytest.approx(1.0, abs=1e-6)
