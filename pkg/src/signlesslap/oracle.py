"""Exhaustive ground truth for small graphs."""

from dataclasses import dataclass

import numpy as np

from .exceptions import CapacityError
from .graph import SetPair, cut_weight, volume

_CHUNK = 1 << 16


@dataclass(frozen=True)
class OracleResult:
    value: float
    witness: object
    enumerated: int
    fraction: float = None
    cut: float = None

    def as_dict(self):
        out = {"value": self.value, "enumerated": self.enumerated}
        if isinstance(self.witness, SetPair):
            out["witness"] = self.witness.as_dict()
        else:
            out["witness"] = {"S": sorted(self.witness[0]), "T": sorted(self.witness[1])}
        if self.fraction is not None:
            out["cut"] = self.cut
            out["fraction"] = self.fraction
        return out


def _digits(codes, n, base):
    # vertex 0 is the most significant digit, so ties keep the lexicographically first labeling
    return (codes[:, None] // (base ** np.arange(n - 1, -1, -1))) % base


def oracle_dual_cheeger(g, n_max=14):
    """``max 2|E(A,B)| / vol(A u B)`` over all disjoint, not both empty pairs."""
    if g.n > n_max:
        raise CapacityError(f"dual Cheeger oracle needs n <= {n_max}, got n={g.n}")
    total = 3 ** g.n
    best, best_code = -np.inf, None
    for start in range(1, total, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, total))
        lab = _digits(codes, g.n, 3).astype(np.int8)
        lab[lab == 2] = -1
        cut = ((lab[:, g.u] * lab[:, g.v]) < 0) @ g.w
        vol = (lab != 0) @ g.degree
        ratio = 2.0 * cut / vol
        k = int(np.argmax(ratio))
        if ratio[k] > best:
            best, best_code = float(ratio[k]), int(codes[k])
    lab = _digits(np.array([best_code]), g.n, 3)[0]
    pair = SetPair(np.flatnonzero(lab == 1), np.flatnonzero(lab == 2))
    value = 2.0 * cut_weight(g, pair.a, pair.b) / volume(g, pair.support)
    return OracleResult(value, pair, total - 1)


def oracle_maxcut(g, n_max=20):
    """Exact maximum cut over all bipartitions.

    ``value`` is the volume-normalized ratio ``2 cut / vol(V)``; ``cut`` and
    ``fraction`` (cut over total edge weight) are reported alongside.
    """
    if g.n > n_max:
        raise CapacityError(f"maxcut oracle needs n <= {n_max}, got n={g.n}")
    # vertex n-1 pinned to side T; codes enumerate the other n-1 vertices
    total = 2 ** (g.n - 1)
    best, best_code = -np.inf, None
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, total))
        side = np.zeros((len(codes), g.n), dtype=bool)
        if g.n > 1:
            side[:, :-1] = _digits(codes, g.n - 1, 2).astype(bool)
        cut = (side[:, g.u] != side[:, g.v]) @ g.w
        k = int(np.argmax(cut))
        if cut[k] > best:
            best, best_code = float(cut[k]), int(codes[k])
    side = np.zeros(g.n, dtype=bool)
    if g.n > 1:
        side[:-1] = _digits(np.array([best_code]), g.n - 1, 2)[0].astype(bool)
    s, t = frozenset(np.flatnonzero(side).tolist()), frozenset(np.flatnonzero(~side).tolist())
    cut = cut_weight(g, s, t)
    return OracleResult(2.0 * cut / g.volume_total, (s, t), total, fraction=cut / g.total_weight, cut=cut)


def oracle_ordering_check(g):
    """``0 < h_max <= h_plus <= 1``."""
    hmax = oracle_maxcut(g).value
    hplus = oracle_dual_cheeger(g).value
    return bool(0 < hmax <= hplus + 1e-12 and hplus <= 1 + 1e-12)
