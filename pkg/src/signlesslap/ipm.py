"""Inverse power method for the first eigenvalue of the signless 1-Laplacian."""

import dataclasses
import weakref
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .cut import coarea_certified_round, d2_relaxation_vector, two_threshold_round
from .eigen import verify_eigenpair
from .exceptions import ConvergenceError, DomainError
from .functional import iplus, norm_subgradient, normalize, ternary_vector

_DENSE_INCIDENCE = 200_000
_DENSE_INVERSE = 2000


@dataclass(frozen=True)
class IpmConfig:
    """Tolerances and caps for :func:`ipm_run`.

    ``round_iterates`` replaces an iterate by the ternary vector of its best
    threshold pair whenever that pair has a smaller quotient.
    """

    outer_tol: float = 1e-6
    max_outer: int = 200
    max_inner: int = 5000
    inner_tol: float = 1e-8
    rng_seed: int = 0
    round_iterates: bool = True
    verify_tol: float = 1e-7

    def __post_init__(self):
        if min(self.outer_tol, self.inner_tol, self.verify_tol) <= 0:
            raise ValueError("tolerances must be positive")
        if min(self.max_outer, self.max_inner) < 1:
            raise ValueError("iteration caps must be at least 1")

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


@dataclass
class IpmTrace:
    lambdas: list
    x: np.ndarray
    certificate: object = None
    reason: str = ""
    start: int = 0

    @property
    def eigenvalue(self):
        return self.lambdas[-1]

    @property
    def iterations(self):
        return len(self.lambdas) - 1

    @property
    def verified(self):
        return self.certificate is not None


@dataclass
class MultistartResult:
    trace: IpmTrace
    pair: object
    score: object
    dual_pair: object
    traces: list = field(default_factory=list)


class _AdmmOperator:
    """Cached signless incidence ``B`` and a solver for ``(B^T B + I) x = r``."""

    def __init__(self, g):
        B = g.incidence
        M = (B.T @ B + sp.identity(g.n)).tocsc()
        if g.m * g.n <= _DENSE_INCIDENCE:
            self.B = B.toarray()
            self.Bt = self.B.T.copy()
        else:
            self.B = B
            self.Bt = B.T.tocsr()
        if g.n <= _DENSE_INVERSE:
            cho = scipy.linalg.cho_factor(M.toarray())
            self.solve = scipy.linalg.cho_solve(cho, np.eye(g.n)).__matmul__
        else:
            self.solve = splu(M).solve


_operators = weakref.WeakKeyDictionary()


def _operator(g):
    op = _operators.get(g)
    if op is None:
        op = _operators[g] = _AdmmOperator(g)
    return op


def _inner_objective(g, lam, v, x):
    return iplus(g, x) - lam * float(v @ x)


def inner_solve(g, lam, v, warm, cfg=None):
    """Approximately minimize ``iplus(x) - lam <v, x>`` over the Euclidean unit ball.

    ADMM with penalty 1 on the splitting ``y = Bx`` (edge sums, handled by
    soft thresholding) and ``w = x`` (ball projection). Returns the best
    feasible iterate; never worse than the warm start scaled to the ball.
    """
    cfg = cfg or IpmConfig()
    warm = np.asarray(warm, dtype=float)
    wn = np.linalg.norm(warm)
    if wn == 0:
        raise DomainError("warm start must be nonzero")
    op = _operator(g)
    v = np.asarray(v, dtype=float)
    x = warm / wn
    best_x, best_f = x, _inner_objective(g, lam, v, x)
    y = op.B @ x
    w = x.copy()
    u = np.zeros_like(y)
    s = np.zeros_like(x)
    lv = lam * v
    thr = g.w
    tol = cfg.inner_tol
    for it in range(cfg.max_inner):
        x = op.solve(lv + op.Bt @ (y - u) + (w - s))
        bx = op.B @ x
        q = bx + u
        y_new = np.sign(q) * np.maximum(np.abs(q) - thr, 0.0)
        p = x + s
        pn = np.linalg.norm(p)
        w_new = p / pn if pn > 1 else p
        r1, r2 = bx - y_new, x - w_new
        u += r1
        s += r2
        d1 = op.Bt @ (y_new - y)
        d2 = w_new - w
        y, w = y_new, w_new
        if it % 10 == 9 or it == cfg.max_inner - 1:
            f = _inner_objective(g, lam, v, w)
            if f < best_f:
                best_x, best_f = w.copy(), f
            prim = np.sqrt(r1 @ r1 + r2 @ r2)
            dual = np.sqrt(d1 @ d1 + d2 @ d2)
            if prim <= tol and dual <= tol:
                break
    f = _inner_objective(g, lam, v, w)
    if f < best_f:
        best_x = w.copy()
    return best_x


def ipm_run(g, x0, cfg=None):
    """Run the inverse power method from ``x0``; returns an :class:`IpmTrace`.

    The recorded eigenvalue estimates are non-increasing. The loop stops
    when the relative change drops below ``cfg.outer_tol`` (immediately if
    the estimate reaches 0) or after ``cfg.max_outer`` steps, then tries to
    certify the final iterate with :func:`verify_eigenpair`.
    """
    cfg = cfg or IpmConfig()
    x = normalize(g, x0)
    lam = iplus(g, x)
    lambdas = [lam]
    reason = "max_outer"
    for _ in range(cfg.max_outer):
        if lam == 0:
            reason = "zero"
            break
        v = norm_subgradient(g, x)
        xh = inner_solve(g, lam, v, x, cfg)
        if np.any(xh):
            xn = normalize(g, xh)
            new = iplus(g, xn)
        else:
            xn, new = x, lam
        if cfg.round_iterates:
            t = ternary_vector(g, coarea_certified_round(g, xn))
            tval = iplus(g, t)
            if tval < new:
                xn, new = t, tval
        if new > lam:
            xn, new = x, lam
        change = abs(new - lam) / lam
        x, lam = xn, new
        lambdas.append(lam)
        if change < cfg.outer_tol:
            reason = "converged"
            break
    cert = verify_eigenpair(g, x, cfg.verify_tol)
    return IpmTrace(lambdas, x, cert, reason)


def random_start(g, rng):
    """Uniform ``[-1, 1]^n`` draw with at least one entry of each sign.

    A vector of a single sign is always an eigenvector with eigenvalue 1,
    so the iteration could not move from it.
    """
    while True:
        x = rng.uniform(-1.0, 1.0, g.n)
        if g.n < 2 or (np.any(x > 0) and np.any(x < 0)):
            return x


def _start_vectors(g, restarts, seed):
    children = np.random.SeedSequence(seed).spawn(restarts)
    starts = [random_start(g, np.random.default_rng(c)) for c in children]
    try:
        d2 = d2_relaxation_vector(g)
    except ConvergenceError as err:
        d2 = err.vector
    if np.any(d2):
        starts.append(d2)
    return starts


def ipm_multistart(g, restarts=20, cfg=None, objective=2, n_jobs=1):
    """Best of ``restarts`` seeded random starts plus one normalized-Laplacian start.

    Returns a :class:`MultistartResult` holding the trace with the smallest
    final eigenvalue (ties to the lower start index), its threshold-rounded
    pair under ``objective`` and its certified dual Cheeger pair.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    cfg = cfg or IpmConfig()
    starts = _start_vectors(g, restarts, cfg.rng_seed)

    def run(item):
        i, x0 = item
        tr = ipm_run(g, x0, cfg)
        tr.start = i
        return tr

    if n_jobs == 1:
        traces = [run(item) for item in enumerate(starts)]
    else:
        with ThreadPoolExecutor(max_workers=None if n_jobs in (None, -1) else n_jobs) as pool:
            traces = list(pool.map(run, enumerate(starts)))
    best = min(traces, key=lambda t: (t.eigenvalue, t.start))
    pair, score = two_threshold_round(g, best.x, objective)
    return MultistartResult(best, pair, score, coarea_certified_round(g, best.x), traces)
