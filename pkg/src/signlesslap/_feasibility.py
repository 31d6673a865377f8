"""Linear feasibility for symmetric edge assignments.

Given ``x`` and per-vertex bounds ``lo <= hi``, find ``z_e in sgn(x_u + x_v)``
with ``lo_i <= sum_{e ~ i} w_e z_e <= hi_i``. Edges whose endpoint sum is
nonzero have ``z_e`` forced to the sign; the rest are free in ``[-1, 1]``.
The free part is solved as an elastic LP with HiGHS.
"""

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog


def sign_threshold(x):
    """Magnitude below which a coordinate or edge sum counts as zero."""
    scale = float(np.max(np.abs(x))) if len(x) else 0.0
    return 1e-12 * scale


def edge_assignment(g, x, lo, hi, tol, tau=None):
    """Return ``(z, violation)``; ``z`` is the per-edge assignment found.

    ``violation`` is the largest bound violation over vertices, measured
    relative to ``max(1, d_i)``. The assignment is feasible iff
    ``violation <= tol``.
    """
    x = np.asarray(x, dtype=float)
    if tau is None:
        tau = sign_threshold(x)
    s = x[g.u] + x[g.v]
    free = np.abs(s) <= tau
    z = np.where(free, 0.0, np.sign(s))
    forced = np.bincount(g.u, weights=g.w * z, minlength=g.n) + np.bincount(g.v, weights=g.w * z, minlength=g.n)

    fidx = np.flatnonzero(free)
    if len(fidx):
        touched = np.zeros(g.n, dtype=bool)
        touched[g.u[fidx]] = True
        touched[g.v[fidx]] = True
        rows = np.flatnonzero(touched)
        rpos = np.full(g.n, -1, dtype=np.intp)
        rpos[rows] = np.arange(len(rows))
        k, r = len(fidx), len(rows)
        # columns: z_free (k) | slack s (r) | r_plus (r) | r_minus (r)
        ri = np.concatenate([rpos[g.u[fidx]], rpos[g.v[fidx]]])
        ci = np.concatenate([np.arange(k), np.arange(k)])
        vals = np.concatenate([g.w[fidx], g.w[fidx]])
        A_z = sp.csr_matrix((vals, (ri, ci)), shape=(r, k))
        eye = sp.identity(r, format="csr")
        A_eq = sp.hstack([A_z, -eye, eye, -eye], format="csr")
        b_eq = -forced[rows]
        bounds = np.vstack([
            np.column_stack([-np.ones(k), np.ones(k)]),
            np.column_stack([lo[rows], hi[rows]]),
            np.column_stack([np.zeros(2 * r), np.full(2 * r, np.inf)]),
        ])
        c = np.concatenate([np.zeros(k + r), np.ones(2 * r)])
        res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs",
                      options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10})
        if res.x is not None:
            z[fidx] = np.clip(res.x[:k], -1.0, 1.0)

    total = np.bincount(g.u, weights=g.w * z, minlength=g.n) + np.bincount(g.v, weights=g.w * z, minlength=g.n)
    excess = np.maximum(np.maximum(lo - total, total - hi), 0.0) / np.maximum(1.0, g.degree)
    return z, float(excess.max()) if g.n else 0.0
