"""Eigenpairs of the signless 1-Laplacian: certificates, ternary enumeration,
nodal domains and sign-pattern closure."""

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import connected_components

from ._feasibility import edge_assignment, sign_threshold
from .exceptions import CapacityError, DomainError
from .functional import FEASIBILITY_TOL, iplus, normalize, ternary_vector, weighted_norm
from .graph import SetPair

DEDUP_TOL = 1e-9


def _sign_pattern(x, tau):
    return np.where(x > tau, 1, np.where(x < -tau, -1, 0))


def _vertex_bounds(g, x, mu, tau):
    sgn = _sign_pattern(x, tau)
    hi = np.where(sgn == 0, mu * g.degree, mu * g.degree * sgn)
    lo = np.where(sgn == 0, -mu * g.degree, mu * g.degree * sgn)
    return lo, hi


@dataclass(frozen=True)
class EigenCertificate:
    """Eigenvalue ``mu``, normalized eigenvector ``x`` and witness edge assignment ``z``."""

    mu: float
    x: np.ndarray
    z: np.ndarray

    def check(self, g, tol=FEASIBILITY_TOL):
        """Re-verify every defining condition from scratch."""
        x, z = self.x, self.z
        if abs(weighted_norm(g, x) - 1.0) > 1e-12 or not (-tol <= self.mu <= 1 + tol):
            return False
        if abs(iplus(g, x) - self.mu) > tol:
            return False
        tau = sign_threshold(x)
        s = x[g.u] + x[g.v]
        ok_edges = np.where(s > tau, np.abs(z - 1) <= tol, np.where(s < -tau, np.abs(z + 1) <= tol, np.abs(z) <= 1 + tol))
        if not ok_edges.all():
            return False
        total = np.bincount(g.u, weights=g.w * z, minlength=g.n) + np.bincount(g.v, weights=g.w * z, minlength=g.n)
        lo, hi = _vertex_bounds(g, x, self.mu, tau)
        scale = np.maximum(1.0, g.degree)
        return bool(np.all(total >= lo - tol * scale) and np.all(total <= hi + tol * scale))

    def as_dict(self, g):
        return {
            "mu": self.mu,
            "x": self.x.tolist(),
            "z": [[int(a), int(b), float(c)] for a, b, c in zip(g.u, g.v, self.z)],
        }


def verify_eigenpair(g, x, tol=FEASIBILITY_TOL):
    """Certify ``x`` as an eigenvector; returns an :class:`EigenCertificate` or ``None``.

    The eigenvalue is fixed to ``iplus`` of the normalized vector, and the
    remaining freedom (edges with ``x_i + x_j = 0``, vertices with
    ``x_i = 0``) is searched by a linear feasibility problem.
    """
    x = normalize(g, x)
    mu = iplus(g, x)
    tau = sign_threshold(x)
    lo, hi = _vertex_bounds(g, x, mu, tau)
    z, violation = edge_assignment(g, x, lo, hi, tol, tau)
    if violation > tol:
        return None
    return EigenCertificate(mu, x, z)


def _ternary_labels(n):
    """All labelings in ``{0, +1, -1}^n`` whose first nonzero entry is ``+1``."""
    codes = np.arange(1, 3 ** n)
    digits = (codes[:, None] // (3 ** np.arange(n))) % 3
    labels = np.where(digits == 2, -1, digits).astype(np.int8)
    first = labels[np.arange(len(labels)), np.argmax(labels != 0, axis=1)]
    return labels[first == 1]


def _ternary_mu(g, labels):
    lu = labels[:, g.u]
    lv = labels[:, g.v]
    cut = ((lu * lv) < 0) @ g.w
    vol = (labels != 0) @ g.degree
    return 1.0 - 2.0 * cut / vol


def _prefilter(g, labels, mu):
    """Cheap necessary condition: each vertex row can reach its target interval."""
    s = labels[:, g.u].astype(np.int16) + labels[:, g.v]
    z = np.sign(s)
    free = (s == 0).astype(float) * g.w
    forced = np.zeros(labels.shape, dtype=float)
    slack = np.zeros(labels.shape, dtype=float)
    np.add.at(forced.T, g.u, (z * g.w).T)
    np.add.at(forced.T, g.v, (z * g.w).T)
    np.add.at(slack.T, g.u, free.T)
    np.add.at(slack.T, g.v, free.T)
    target = mu[:, None] * g.degree[None, :]
    lo = np.where(labels == 0, -target, target * labels)
    hi = np.where(labels == 0, target, target * labels)
    eps = 1e-9 * np.maximum(1.0, g.degree)
    return np.all((forced + slack >= lo - eps) & (forced - slack <= hi + eps), axis=1)


def enumerate_ternary_eigenpairs(g, n_max=12, tol=FEASIBILITY_TOL):
    """All distinct eigenvalues attained by ternary vectors, with one witness each.

    Returns a list of ``(mu, SetPair)`` sorted by ``mu``. Since negating a
    vector preserves eigenpairs, only pairs whose smallest support vertex
    lies in ``A`` are examined.
    """
    if g.n > n_max:
        raise CapacityError(f"ternary enumeration needs n <= {n_max}, got n={g.n}")
    labels = _ternary_labels(g.n)
    mu = _ternary_mu(g, labels)
    order = np.argsort(mu, kind="stable")
    mu_sorted = mu[order]
    breaks = np.flatnonzero(np.diff(mu_sorted) > DEDUP_TOL) + 1
    found = []
    for group in np.split(order, breaks):
        cand = group[_prefilter(g, labels[group], mu[group])]
        for idx in np.sort(cand):
            pair = SetPair.from_labels(labels[idx])
            cert = verify_eigenpair(g, ternary_vector(g, pair), tol)
            if cert is not None:
                found.append((cert.mu, pair))
                break
    return found


def spectral_gap_check(eigenvalues, n):
    """Consecutive distinct eigenvalues are at least ``2 / (n^2 (n-1)^2)`` apart."""
    eig = np.sort(np.asarray(eigenvalues, dtype=float))
    if len(eig) < 2:
        return True
    bound = 2.0 / (n ** 2 * (n - 1) ** 2)
    return bool(np.all(np.diff(eig) >= bound - 1e-9))


@dataclass(frozen=True)
class NodalDecomposition:
    domains: tuple

    @property
    def count(self):
        return len(self.domains)


def nodal_domains(g, x):
    """Connected components of the subgraph induced on the support of ``x``."""
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        return NodalDecomposition(())
    support = np.abs(x) > sign_threshold(x)
    idx = np.flatnonzero(support)
    sub = g.adjacency[idx][:, idx]
    _, comp = connected_components(sub, directed=False)
    domains = {}
    for vertex, c in zip(idx, comp):
        domains.setdefault(int(c), []).append(int(vertex))
    ordered = sorted((frozenset(d) for d in domains.values()), key=min)
    return NodalDecomposition(tuple(ordered))


def restrict_to_domain(g, cert, domain_index):
    """Restriction of an eigenvector to one nodal domain, and its ternary flattening.

    Both returned vectors lie on the unit norm sphere and are eigenvectors
    with the same eigenvalue as ``cert``.
    """
    nd = nodal_domains(g, cert.x)
    if not 0 <= domain_index < nd.count:
        raise IndexError(f"domain index {domain_index} out of range for {nd.count} nodal domains")
    dom = np.array(sorted(nd.domains[domain_index]))
    x = cert.x
    restricted = np.zeros(g.n)
    restricted[dom] = x[dom] / float(g.degree[dom] @ np.abs(x[dom]))
    flat = np.zeros(g.n)
    flat[dom] = np.sign(x[dom]) / float(g.degree[dom].sum())
    return restricted, flat


def simplex_closure_check(g, cert, y):
    """Whether ``y`` lies in the closed refined simplex of ``cert.x``.

    Every vertex sign set and every edge-sum sign set of ``y`` must contain
    the corresponding sign set of ``x`` (equal signs, or zero in ``y``).
    """
    y = np.asarray(y, dtype=float)
    if not np.any(y):
        raise DomainError("zero vector")
    y = normalize(g, y)
    x = cert.x
    sx, sy = _sign_pattern(x, sign_threshold(x)), _sign_pattern(y, sign_threshold(y))
    if not np.all((sy == 0) | (sy == sx)):
        return False
    ex = _sign_pattern(x[g.u] + x[g.v], sign_threshold(x))
    ey = _sign_pattern(y[g.u] + y[g.v], sign_threshold(y))
    return bool(np.all((ey == 0) | (ey == ex)))
