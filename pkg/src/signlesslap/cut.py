"""Rounding vectors to set pairs, the linear (2-Laplacian) baseline, greedy
cuts and the recursive spectral cut for maxcut."""

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.optimize import minimize_scalar

from .exceptions import ConvergenceError, DomainError
from .functional import quotient
from .graph import SetPair, cut_weight

OBJECTIVES = (1, 2)


@dataclass(frozen=True)
class CutScore:
    """Edge weights around a pair: crossing ``c``, incident ``m``, frontier ``x_frontier``."""

    c: float
    m: float
    x_frontier: float

    @property
    def objective1(self):
        return self.c / self.m if self.m else 0.0

    @property
    def objective2(self):
        return (self.c + 0.5 * self.x_frontier) / self.m if self.m else 0.0

    def objective(self, which):
        return self.objective1 if which == 1 else self.objective2


@dataclass(frozen=True)
class CutResult:
    side_s: frozenset
    side_t: frozenset
    cut_weight: float
    cut_fraction: float
    provenance: str
    objective: int = None
    stages: int = 0

    def check(self, g):
        """Sides partition ``V`` and the stored weight matches a recomputation."""
        return (
            not (self.side_s & self.side_t)
            and len(self.side_s | self.side_t) == g.n
            and math.isclose(self.cut_weight, cut_weight(g, self.side_s, self.side_t), rel_tol=1e-12, abs_tol=1e-12)
        )

    def as_dict(self):
        return {
            "cut_weight": self.cut_weight,
            "cut_fraction": self.cut_fraction,
            "side_s": sorted(self.side_s),
            "provenance": self.provenance,
            "objective": self.objective,
            "stages": self.stages,
        }


def _result(g, s_mask, provenance, objective=None, stages=0):
    s = frozenset(np.flatnonzero(s_mask).tolist())
    t = frozenset(np.flatnonzero(~s_mask).tolist())
    w = float(g.w[s_mask[g.u] != s_mask[g.v]].sum())
    return CutResult(s, t, w, w / g.total_weight, provenance, objective, stages)


def _scores(g, x, thresholds):
    """Per-threshold edge statistics for ``A_t = {x >= t}``, ``B_t = {x <= -t}``."""
    a = x[None, :] >= thresholds[:, None]
    b = x[None, :] <= -thresholds[:, None]
    inside = a | b
    au, av, bu, bv = a[:, g.u], a[:, g.v], b[:, g.u], b[:, g.v]
    iu, iv = inside[:, g.u], inside[:, g.v]
    c = ((au & bv) | (bu & av)) @ g.w
    m = (iu | iv) @ g.w
    xf = (iu ^ iv) @ g.w
    vol = inside @ g.degree
    return a, b, c, m, xf, vol


def _thresholds(x):
    ax = np.abs(x)
    return np.unique(ax[ax > 0])


def score_pair(g, pair):
    a = np.zeros(g.n, dtype=bool)
    b = np.zeros(g.n, dtype=bool)
    a[list(pair.a)] = True
    b[list(pair.b)] = True
    inside = a | b
    c = float(g.w[(a[g.u] & b[g.v]) | (b[g.u] & a[g.v])].sum())
    m = float(g.w[inside[g.u] | inside[g.v]].sum())
    xf = float(g.w[inside[g.u] ^ inside[g.v]].sum())
    return CutScore(c, m, xf)


def two_threshold_round(g, x, objective=2):
    """Best pair ``({x >= t}, {x <= -t})`` over thresholds ``t`` in ``{|x_i|}``.

    ``objective`` 1 scores ``C/M``, 2 scores ``(C + X/2)/M``. Ties go to the
    smaller threshold.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be 1 or 2, got {objective!r}")
    x = np.asarray(x, dtype=float)
    thr = _thresholds(x)
    if not len(thr):
        raise DomainError("cannot round the zero vector")
    a, b, c, m, xf, _ = _scores(g, x, thr)
    with np.errstate(invalid="ignore", divide="ignore"):
        val = c / m if objective == 1 else (c + 0.5 * xf) / m
    val = np.where(m > 0, val, 0.0)
    k = int(np.argmax(val))
    pair = SetPair(np.flatnonzero(a[k]), np.flatnonzero(b[k]))
    return pair, CutScore(float(c[k]), float(m[k]), float(xf[k]))


def coarea_certified_round(g, x):
    """Pair minimizing ``1 - 2|E(A,B)|/vol(A u B)`` over the threshold sweep of ``|x|``.

    The minimum never exceeds ``iplus(x) / ||x||``; this is checked and a
    violation raises ``RuntimeError``.
    """
    x = np.asarray(x, dtype=float)
    thr = _thresholds(x)
    if not len(thr):
        raise DomainError("cannot round the zero vector")
    a, b, c, _, _, vol = _scores(g, x, thr)
    val = 1.0 - 2.0 * c / vol
    k = int(np.argmin(val))
    bound = quotient(g, x)
    if val[k] > bound + 1e-12:
        raise RuntimeError(f"co-area rounding bound violated: {val[k]!r} > {bound!r}")
    return SetPair(np.flatnonzero(a[k]), np.flatnonzero(b[k]))


def _normalized_laplacian(g):
    dinv = 1.0 / np.sqrt(g.degree)
    return sp.identity(g.n, format="csr") - sp.diags(dinv) @ g.adjacency @ sp.diags(dinv)


def d2_relaxation_vector(g, tol=1e-8, max_iter=100_000, return_eigenvalue=False):
    """Top eigenvector of the normalized Laplacian by power iteration, mapped back by ``D^{-1/2}``.

    Iterates on ``2I - D^{-1/2} Q D^{-1/2}`` (which equals the normalized
    Laplacian, with spectrum in ``[0, 2]``) from the all-ones vector with
    ``1e-3`` added at vertex 0.
    """
    op = _normalized_laplacian(g)
    u = np.ones(g.n)
    u[0] += 1e-3
    u /= np.linalg.norm(u)
    residual = np.inf
    theta = 0.0
    for _ in range(max_iter):
        lu = op @ u
        theta = float(u @ lu)
        residual = float(np.linalg.norm(lu - theta * u))
        if residual <= tol:
            break
        nrm = np.linalg.norm(lu)
        if nrm == 0:
            break
        u = lu / nrm
    else:
        raise ConvergenceError(
            f"power iteration stalled at residual {residual:.3e}", residual=residual, vector=u / np.sqrt(g.degree)
        )
    x = u / np.sqrt(g.degree)
    return (theta, x) if return_eigenvalue else x


def greedy_cut(g, order=None):
    """Place vertices one by one on the side that cuts more already-placed weight.

    Ties go to ``side_s``. Always cuts at least half of the total weight.
    """
    order = np.arange(g.n) if order is None else np.asarray(order, dtype=np.intp)
    if sorted(order.tolist()) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    adj = g.adjacency
    side = np.zeros(g.n, dtype=np.int8)  # 1 = s, -1 = t, 0 = unplaced
    for v in order:
        row = slice(adj.indptr[v], adj.indptr[v + 1])
        nbr, wts = adj.indices[row], adj.data[row]
        to_s = wts[side[nbr] == 1].sum()
        to_t = wts[side[nbr] == -1].sum()
        side[v] = 1 if to_t >= to_s else -1
    res = _result(g, side == 1, "greedy")
    assert res.cut_fraction >= 0.5 - 1e-12
    return res


def rsc_maxcut(g, solver="d1", objective=2, cfg=None, restarts=20, greedy_order=None):
    """Recursive spectral cut.

    Each stage extracts a near-bipartite pair ``(L, R)`` from the residual
    graph by rounding a spectral vector (``d1``: inverse power method for
    the signless 1-Laplacian; ``d2``: normalized Laplacian top eigenvector)
    and recurses on the rest. A stage whose pair cuts no more than half of
    its incident weight is discarded in favour of a greedy cut of the
    residual graph, which ends the recursion. Stages are merged back in the
    orientation that cuts more weight.
    """
    from .ipm import IpmConfig, ipm_multistart

    if solver not in ("d1", "d2"):
        raise ValueError(f"solver must be 'd1' or 'd2', got {solver!r}")
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be 1 or 2, got {objective!r}")
    cfg = cfg or IpmConfig()
    seeds = np.random.SeedSequence(cfg.rng_seed)

    stages = []  # (residual vertex labels, L labels, R labels)
    tail = None  # (s labels) of the final greedy cut, in original labels
    sub, labels = g, np.arange(g.n)
    while sub is not None:
        if solver == "d1":
            stage_cfg = cfg.replace(rng_seed=int(seeds.spawn(1)[0].generate_state(1)[0]))
            vec = ipm_multistart(sub, restarts, stage_cfg).trace.x
        else:
            try:
                vec = d2_relaxation_vector(sub)
            except ConvergenceError as err:
                vec = err.vector
        pair, score = two_threshold_round(sub, vec, objective)
        if score.objective2 <= 0.5:
            local_order = None
            if greedy_order is not None:
                pos = {int(v): i for i, v in enumerate(labels)}
                local_order = [pos[int(v)] for v in greedy_order if int(v) in pos]
            gr = greedy_cut(sub, local_order)
            tail = (labels, labels[sorted(gr.side_s)])
            break
        stages.append((labels, labels[sorted(pair.a)], labels[sorted(pair.b)]))
        rest = np.setdiff1d(np.arange(sub.n), np.array(sorted(pair.support)))
        nxt, sub_labels = sub.induced_subgraph(rest) if len(rest) else (None, rest)
        sub, labels = nxt, labels[sub_labels]

    side = np.zeros(g.n, dtype=bool)  # True = s; unplaced residual vertices stay on s
    side[:] = True
    if tail is not None:
        side[tail[0]] = False
        side[tail[1]] = True
    for verts, left, right in reversed(stages):
        inner = np.zeros(g.n, dtype=bool)
        inner[verts] = True
        emask = inner[g.u] & inner[g.v]
        best = None
        for flip in (False, True):
            trial = side.copy()
            trial[left] = not flip
            trial[right] = flip
            w = float(g.w[emask & (trial[g.u] != trial[g.v])].sum())
            if best is None or w > best[0]:
                best = (w, trial)
        side = best[1]
    return _result(g, side, f"{solver}-rsc", objective, len(stages))


def rsc_cost_bound(epsilon):
    """Guaranteed cut fraction ``1 - eps + eps ln(2 eps)`` for optimum ``1 - eps``."""
    if not 0 <= epsilon <= 0.5:
        raise DomainError(f"epsilon must lie in [0, 1/2], got {epsilon!r}")
    if epsilon == 0:
        return 1.0
    return 1.0 - epsilon + epsilon * math.log(2 * epsilon)


def _bound_ratio(eps):
    return rsc_cost_bound(eps) / (1.0 - eps)


def approximation_ratio_floor():
    """Minimum over ``eps in [0, 1/2]`` of ``rsc_cost_bound(eps) / (1 - eps)``."""
    grid = np.linspace(0.0, 0.5, 5001)
    vals = np.array([_bound_ratio(e) for e in grid])
    k = int(np.argmin(vals))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    res = minimize_scalar(_bound_ratio, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    return float(min(res.fun, vals[k]))
