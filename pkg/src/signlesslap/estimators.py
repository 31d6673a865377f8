"""scikit-learn style estimators over graphs.

``fit`` accepts anything :func:`~signlesslap.graph.check_graph` accepts: a
:class:`~signlesslap.graph.Graph`, a networkx graph, or a symmetric
adjacency matrix (dense or sparse), in the spirit of
``SpectralClustering(affinity="precomputed")``.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .cut import rsc_maxcut
from .graph import check_graph
from .ipm import IpmConfig, ipm_multistart


class DualCheeger(ClusterMixin, BaseEstimator):
    """First eigenpair of the signless 1-Laplacian by the multistart inverse power method.

    Parameters
    ----------
    restarts : int, default=20
        Number of seeded random starts (one normalized-Laplacian start is
        always added).
    random_state : int, default=0
        Seed for the random starts.
    tol : float, default=1e-6
        Relative eigenvalue change that stops each run.
    max_iter : int, default=200
        Cap on outer iterations per run.
    n_jobs : int, default=1
        Threads used across restarts.

    Attributes
    ----------
    eigenvalue_ : float
        Smallest eigenvalue found, an upper bound on ``1 - h_plus``.
    h_plus_ : float
        ``1 - eigenvalue_``.
    eigenvector_ : ndarray of shape (n_vertices,)
    pair_ : SetPair
        Threshold pair certifying ``h_plus_``.
    labels_ : ndarray of shape (n_vertices,)
        +1 on ``pair_.a``, -1 on ``pair_.b``, 0 elsewhere.
    verified_ : bool
        Whether the final eigenvector passed the eigenpair feasibility check.
    n_iter_ : int
        Outer iterations of the winning run.
    """

    def __init__(self, restarts=20, random_state=0, tol=1e-6, max_iter=200, n_jobs=1):
        self.restarts = restarts
        self.random_state = random_state
        self.tol = tol
        self.max_iter = max_iter
        self.n_jobs = n_jobs

    def _config(self):
        return IpmConfig(outer_tol=self.tol, max_outer=self.max_iter, rng_seed=int(self.random_state or 0))

    def fit(self, X, y=None):
        g = check_graph(X)
        res = ipm_multistart(g, self.restarts, self._config(), n_jobs=self.n_jobs)
        self.result_ = res
        self.eigenvalue_ = res.trace.eigenvalue
        self.h_plus_ = 1.0 - self.eigenvalue_
        self.eigenvector_ = res.trace.x
        self.pair_ = res.dual_pair
        self.labels_ = res.dual_pair.labels(g.n).astype(int)
        self.certificate_ = res.trace.certificate
        self.verified_ = res.trace.verified
        self.n_iter_ = res.trace.iterations
        return self


class RecursiveSpectralCut(ClusterMixin, BaseEstimator):
    """Maxcut by recursive spectral cut.

    Parameters
    ----------
    solver : {"d1", "d2"}, default="d1"
        Spectral vector per stage: inverse power method for the signless
        1-Laplacian, or the top normalized-Laplacian eigenvector.
    objective : {1, 2}, default=2
        Threshold score, ``C/M`` or ``(C + X/2)/M``.
    restarts : int, default=20
    random_state : int, default=0
    tol : float, default=1e-6

    Attributes
    ----------
    labels_ : ndarray of shape (n_vertices,)
        1 for vertices on ``side_s``, 0 otherwise.
    cut_weight_ : float
    cut_fraction_ : float
    result_ : CutResult
    """

    def __init__(self, solver="d1", objective=2, restarts=20, random_state=0, tol=1e-6):
        self.solver = solver
        self.objective = objective
        self.restarts = restarts
        self.random_state = random_state
        self.tol = tol

    def fit(self, X, y=None):
        g = check_graph(X)
        cfg = IpmConfig(outer_tol=self.tol, rng_seed=int(self.random_state or 0))
        res = rsc_maxcut(g, self.solver, self.objective, cfg, self.restarts)
        self.result_ = res
        self.labels_ = np.zeros(g.n, dtype=int)
        self.labels_[sorted(res.side_s)] = 1
        self.cut_weight_ = res.cut_weight
        self.cut_fraction_ = res.cut_fraction
        return self
