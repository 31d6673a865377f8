"""The signless total variation ``I+``, the degree-weighted l1 norm and the
set-pair Lovasz extension.

All functions accept plain array-likes for vectors; :class:`SpectralVector`
is a convenience wrapper that caches the two functionals.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._feasibility import edge_assignment
from .exceptions import DomainError
from .graph import SetPair, cut_weight, volume

ALGEBRAIC_RTOL = 1e-12
FEASIBILITY_TOL = 1e-9


def _vec(g, x):
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise ValueError(f"vector of shape {x.shape} does not match graph with n={g.n}")
    return x


def iplus(g, x):
    """``sum_{i~j} w_ij |x_i + x_j|``."""
    x = _vec(g, x)
    return float(g.w @ np.abs(x[g.u] + x[g.v]))


def iminus(g, x):
    """``sum_{i~j} w_ij |x_i - x_j|``."""
    x = _vec(g, x)
    return float(g.w @ np.abs(x[g.u] - x[g.v]))


def weighted_norm(g, x):
    """``sum_i d_i |x_i|``."""
    x = _vec(g, x)
    return float(g.degree @ np.abs(x))


def normalize(g, x):
    """Scale ``x`` onto the unit sphere of :func:`weighted_norm`."""
    x = _vec(g, x)
    nrm = weighted_norm(g, x)
    if nrm == 0:
        raise DomainError("cannot normalize the zero vector")
    return x / nrm


def quotient(g, x):
    """``iplus(x) / weighted_norm(x)``."""
    x = _vec(g, x)
    nrm = weighted_norm(g, x)
    if nrm == 0:
        raise DomainError("quotient undefined at the zero vector")
    return iplus(g, x) / nrm


def norm_subgradient(g, x):
    """Canonical element ``d_i sgn(x_i)`` of the subdifferential of the norm (0 at zeros)."""
    x = _vec(g, x)
    return g.degree * np.sign(x)


@dataclass(frozen=True)
class SpectralVector:
    x: np.ndarray
    weighted_norm: float
    iplus: float

    @classmethod
    def from_array(cls, g, x):
        x = _vec(g, x).copy()
        x.flags.writeable = False
        return cls(x, weighted_norm(g, x), iplus(g, x))

    def check(self, g):
        """Cache coherence: recompute both functionals from scratch."""
        return (
            len(self.x) == g.n
            and np.isclose(self.weighted_norm, weighted_norm(g, self.x), rtol=ALGEBRAIC_RTOL, atol=0)
            and np.isclose(self.iplus, iplus(g, self.x), rtol=ALGEBRAIC_RTOL, atol=1e-300)
        )

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.x, dtype=dtype)


@dataclass(frozen=True)
class TernaryVector:
    """``+value`` on ``pair.a``, ``-value`` on ``pair.b``, zero elsewhere."""

    pair: SetPair
    value: float

    @classmethod
    def from_pair(cls, g, pair):
        return cls(pair, 1.0 / volume(g, pair.support))

    def vector(self, n):
        out = np.zeros(n)
        out[list(self.pair.a)] = self.value
        out[list(self.pair.b)] = -self.value
        return out


def ternary_vector(g, pair):
    """The ternary vector of ``pair`` as an array on the unit norm sphere."""
    return TernaryVector.from_pair(g, pair).vector(g.n)


def iplus_subdifferential_contains(g, x, p, tol=FEASIBILITY_TOL):
    """Whether ``p`` lies in the subdifferential of ``iplus`` at ``x``."""
    x = _vec(g, x)
    p = _vec(g, p)
    _, violation = edge_assignment(g, x, p, p, tol)
    return violation <= tol


@dataclass(frozen=True)
class SetPairFunction:
    func: Callable[[frozenset, frozenset], float]
    name: str

    def __call__(self, a, b):
        return self.func(a, b)


def volume_pair_function(g):
    return SetPairFunction(lambda a, b: volume(g, a) + volume(g, b), "vol(A)+vol(B)")


def cut_pair_function(g):
    return SetPairFunction(lambda a, b: 2.0 * cut_weight(g, a, b), "2|E(A,B)|")


def signless_pair_function(g):
    return SetPairFunction(
        lambda a, b: volume(g, a) + volume(g, b) - 2.0 * cut_weight(g, a, b),
        "vol(A)+vol(B)-2|E(A,B)|",
    )


def lovasz_extension(f, x):
    """Set-pair Lovasz extension of ``f`` evaluated at ``x``.

    Integrates ``f(V_t^+, V_t^-)`` over ``t >= 0`` where
    ``V_t^(+/-) = {i : +/- x_i > t}``. Levels where both sets are empty
    contribute nothing.
    """
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        raise DomainError("Lovasz extension is undefined at the zero vector")
    ax = np.abs(x)
    order = np.lexsort((np.arange(len(x)), ax))
    levels = np.concatenate([[0.0], ax[order]])
    total = 0.0
    for k in range(len(x)):
        width = levels[k + 1] - levels[k]
        if width == 0:
            continue
        t = levels[k]
        a = np.flatnonzero(x > t)
        b = np.flatnonzero(x < -t)
        if len(a) == 0 and len(b) == 0:
            continue
        total += width * f(frozenset(a.tolist()), frozenset(b.tolist()))
    return total


def dual_cheeger_objective(g, pair):
    """``1 - 2 |E(A,B)| / vol(A u B)``; equals ``iplus`` of the ternary vector."""
    if not isinstance(pair, SetPair):
        pair = SetPair(*pair)
    return 1.0 - 2.0 * cut_weight(g, pair.a, pair.b) / volume(g, pair.support)
