"""Weighted undirected graphs, vertex set pairs and G-set I/O."""

import io
import json
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .exceptions import DomainError, GraphFormatError


class Graph:
    """Positively weighted undirected simple graph on vertices ``0..n-1``.

    Edges are stored as parallel arrays ``u < v`` with weights ``w``. The
    object is immutable after construction; derived matrices are cached.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (u, v, w)
        Edge list. Endpoint order is normalized so that ``u < v``.
    """

    def __init__(self, n, edges):
        n = int(n)
        if n < 1:
            raise DomainError("graph needs at least one vertex")
        rows = [(int(a), int(b), float(c)) for a, b, c in edges]
        u = np.array([min(a, b) for a, b, _ in rows], dtype=np.intp)
        v = np.array([max(a, b) for a, b, _ in rows], dtype=np.intp)
        w = np.array([c for _, _, c in rows], dtype=float)
        if len(rows):
            if u.min() < 0 or v.max() >= n:
                raise DomainError("edge endpoint out of range")
            if np.any(u == v):
                raise DomainError("self-loops are not allowed")
            if not np.all(np.isfinite(w)) or np.any(w <= 0):
                raise DomainError("nonpositive weight unsupported")
            keys = u * n + v
            if len(np.unique(keys)) != len(keys):
                raise DomainError("duplicate edge")
        degree = np.bincount(u, weights=w, minlength=n) + np.bincount(v, weights=w, minlength=n)
        isolated = np.flatnonzero(degree <= 0)
        if len(isolated):
            raise DomainError(f"isolated vertex {int(isolated[0])}")
        for arr in (u, v, w, degree):
            arr.flags.writeable = False
        self.n = n
        self.u, self.v, self.w = u, v, w
        self.degree = degree
        self.volume_total = float(degree.sum())

    @property
    def m(self):
        return len(self.w)

    @property
    def edges(self):
        return [(int(a), int(b), float(c)) for a, b, c in zip(self.u, self.v, self.w)]

    @property
    def total_weight(self):
        return float(self.w.sum())

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, volume={self.volume_total:g})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.u, other.u)
            and np.array_equal(self.v, other.v)
            and np.array_equal(self.w, other.w)
        )

    __hash__ = object.__hash__

    @cached_property
    def adjacency(self):
        """Weighted adjacency matrix as CSR."""
        a = sp.coo_matrix((self.w, (self.u, self.v)), shape=(self.n, self.n))
        return (a + a.T).tocsr()

    @cached_property
    def incidence(self):
        """Unweighted signless incidence matrix, shape ``(m, n)``."""
        rows = np.repeat(np.arange(self.m), 2)
        cols = np.column_stack([self.u, self.v]).ravel()
        return sp.csr_matrix((np.ones(2 * self.m), (rows, cols)), shape=(self.m, self.n))

    def check_degrees(self):
        """Recompute degrees from the adjacency matrix and compare."""
        return np.allclose(np.asarray(self.adjacency.sum(axis=1)).ravel(), self.degree, rtol=0, atol=1e-12)

    def induced_subgraph(self, vertices):
        """Subgraph induced on ``vertices``, dropping vertices left isolated.

        Returns the subgraph and the array mapping its labels back to the
        labels of ``self``. ``None`` is returned in place of the graph when
        no edge survives.
        """
        keep = np.zeros(self.n, dtype=bool)
        keep[np.asarray(list(vertices), dtype=np.intp)] = True
        emask = keep[self.u] & keep[self.v]
        used = np.zeros(self.n, dtype=bool)
        used[self.u[emask]] = True
        used[self.v[emask]] = True
        labels = np.flatnonzero(used)
        if not len(labels):
            return None, labels
        relabel = np.full(self.n, -1, dtype=np.intp)
        relabel[labels] = np.arange(len(labels))
        sub = Graph(len(labels), zip(relabel[self.u[emask]], relabel[self.v[emask]], self.w[emask]))
        return sub, labels

    def to_json(self):
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges]})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(data["n"], data["edges"])


class SetPair:
    """Ordered pair ``(a, b)`` of disjoint vertex sets, not both empty."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        a = frozenset(int(i) for i in a)
        b = frozenset(int(i) for i in b)
        if a & b:
            raise DomainError("set pair must be disjoint")
        if not (a or b):
            raise DomainError("set pair must not be empty")
        self.a, self.b = a, b

    @classmethod
    def from_labels(cls, labels):
        """Build from a vector with entries +1 (in ``a``), -1 (in ``b``), 0."""
        labels = np.asarray(labels)
        return cls(np.flatnonzero(labels > 0), np.flatnonzero(labels < 0))

    def labels(self, n):
        out = np.zeros(n, dtype=np.int8)
        out[list(self.a)] = 1
        out[list(self.b)] = -1
        return out

    @property
    def support(self):
        return self.a | self.b

    def swapped(self):
        return SetPair(self.b, self.a)

    def __eq__(self, other):
        return isinstance(other, SetPair) and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"SetPair({sorted(self.a)}, {sorted(self.b)})"

    def as_dict(self):
        return {"A": sorted(self.a), "B": sorted(self.b)}


def _mask(g, s):
    idx = np.asarray(list(s) if not isinstance(s, np.ndarray) else s, dtype=np.intp)
    if len(idx) and (idx.min() < 0 or idx.max() >= g.n):
        raise DomainError("vertex index out of range")
    mask = np.zeros(g.n, dtype=bool)
    mask[idx] = True
    return mask


def volume(g, s):
    """Sum of degrees over the vertex subset ``s``."""
    return float(g.degree[_mask(g, s)].sum())


def cut_weight(g, a, b):
    """Total weight of edges with one endpoint in ``a`` and the other in ``b``."""
    ma, mb = _mask(g, a), _mask(g, b)
    if np.any(ma & mb):
        raise ValueError("cut_weight requires disjoint vertex sets")
    crossing = (ma[g.u] & mb[g.v]) | (mb[g.u] & ma[g.v])
    return float(g.w[crossing].sum())


def parse_gset(data):
    """Parse a G-set instance (header ``n m`` then ``m`` lines ``u v w``, 1-based).

    ``data`` may be ``bytes``, ``str`` or a readable file object.
    """
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, bytes):
        data = data.decode()
    lines = [(i, ln.split()) for i, ln in enumerate(data.splitlines(), start=1)]
    lines = [(i, tok) for i, tok in lines if tok]
    if not lines:
        raise GraphFormatError("empty input", 1)
    lineno, header = lines[0]
    if len(header) != 2:
        raise GraphFormatError("header must be 'n m'", lineno)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphFormatError("header must be two integers", lineno) from None
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(body)}", body[-1][0] if body else lineno)
    edges = []
    seen = set()
    for lineno, tok in body:
        if len(tok) != 3:
            raise GraphFormatError("edge line must be 'u v w'", lineno)
        try:
            a, b, w = int(tok[0]) - 1, int(tok[1]) - 1, float(tok[2])
        except ValueError:
            raise GraphFormatError("unparseable edge line", lineno) from None
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError("vertex index out of range", lineno)
        if a == b:
            raise GraphFormatError("self-loop", lineno)
        if w <= 0:
            raise DomainError(f"line {lineno}: nonpositive weight unsupported")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphFormatError("duplicate edge", lineno)
        seen.add(key)
        edges.append((a, b, w))
    return Graph(n, edges)


def dumps_gset(g):
    """Serialize ``g`` in G-set format (1-based)."""
    buf = io.StringIO()
    buf.write(f"{g.n} {g.m}\n")
    for a, b, w in g.edges:
        buf.write(f"{a + 1} {b + 1} {w!r}\n")
    return buf.getvalue()


def read_gset(path):
    with open(path, "rb") as fh:
        return parse_gset(fh.read())


def check_graph(X):
    """Coerce ``X`` to a :class:`Graph`.

    Accepts a ``Graph``, a ``networkx`` graph, or a square symmetric
    adjacency matrix (dense or scipy sparse) with nonnegative entries.
    """
    if isinstance(X, Graph):
        return X
    if hasattr(X, "nodes") and hasattr(X, "edges"):
        return from_networkx(X)
    if sp.issparse(X):
        A = sp.coo_matrix(X)
        shape = A.shape
    else:
        A = np.asarray(X, dtype=float)
        if A.ndim != 2:
            raise ValueError(f"expected a 2-d adjacency matrix, got ndim={A.ndim}")
        shape = A.shape
        A = sp.coo_matrix(A)
    if shape[0] != shape[1]:
        raise ValueError(f"adjacency matrix must be square, got {shape}")
    if A.nnz and abs(A - A.T).max() > 1e-12:
        raise ValueError("adjacency matrix must be symmetric")
    if np.any(A.diagonal() != 0):
        raise DomainError("self-loops are not allowed")
    A = sp.triu(A, k=1).tocoo()
    if A.nnz and A.data.min() < 0:
        raise DomainError("nonpositive weight unsupported")
    keep = A.data > 0
    return Graph(shape[0], zip(A.row[keep], A.col[keep], A.data[keep]))


def from_networkx(G, weight="weight"):
    """Convert a networkx graph; nodes are relabeled ``0..n-1`` in iteration order."""
    index = {node: i for i, node in enumerate(G.nodes)}
    return Graph(len(index), [(index[a], index[b], d.get(weight, 1.0)) for a, b, d in G.edges(data=True)])
