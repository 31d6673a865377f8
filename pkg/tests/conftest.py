import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import strategies as st

from signlesslap.graph import Graph, from_networkx

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def single_edge():
    return Graph(2, [(0, 1, 1.0)])


def complete(n):
    return from_networkx(nx.complete_graph(n))


def cycle(n):
    return from_networkx(nx.cycle_graph(n))


def path(n):
    return from_networkx(nx.path_graph(n))


def petersen():
    return from_networkx(nx.petersen_graph())


def disjoint_k3_pair():
    return Graph(6, [(0, 1, 1), (0, 2, 1), (1, 2, 1), (3, 4, 1), (3, 5, 1), (4, 5, 1)])


def connected_er(n, seed, p=0.5):
    """Seeded connected G(n, p); reseeds deterministically until connected."""
    k = 0
    while True:
        G = nx.gnp_random_graph(n, p, seed=seed * 1000 + k)
        if nx.is_connected(G):
            return from_networkx(G)
        k += 1


def random_weighted(n, seed, p=0.5):
    """Seeded graph with uniform (0.5, 2) weights and no isolated vertices."""
    rng = np.random.default_rng(seed)
    G = nx.gnp_random_graph(n, p, seed=int(rng.integers(1 << 30)))
    for v in list(G.nodes):
        if G.degree(v) == 0:
            G.add_edge(v, (v + 1) % n)
    for a, b in G.edges:
        G[a][b]["weight"] = float(rng.uniform(0.5, 2.0))
    return from_networkx(G)


def acceptance_suite():
    """50 seeded connected ER graphs with n in [4, 8], plus K3, K4, C4, C5 and Petersen."""
    named = [("K3", complete(3)), ("K4", complete(4)), ("C4", cycle(4)), ("C5", cycle(5)), ("Petersen", petersen())]
    er = [(f"ER{i}", connected_er(4 + i % 5, seed=i)) for i in range(50)]
    return er + named


def bipartite_suite():
    graphs = [(f"P{n}", path(n)) for n in range(2, 11)]
    graphs += [(f"C{n}", cycle(n)) for n in range(4, 11, 2)]
    graphs += [
        (f"K{a},{b}", from_networkx(nx.complete_bipartite_graph(a, b)))
        for a in range(1, 6)
        for b in range(a, 11 - a)
    ]
    return graphs


@st.composite
def graphs(draw, min_n=2, max_n=8, weighted=True):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True))
    covered = {v for e in chosen for v in e}
    chosen += [(v, (v + 1) % n) if v + 1 < n else (v - 1, v) for v in range(n) if v not in covered]
    chosen = list(dict.fromkeys(tuple(sorted(e)) for e in chosen))
    weight = st.floats(0.25, 4.0) if weighted else st.just(1.0)
    return Graph(n, [(a, b, draw(weight)) for a, b in chosen])


@st.composite
def graph_and_vector(draw, min_n=2, max_n=8, nonzero=True):
    g = draw(graphs(min_n, max_n))
    x = draw(st.lists(st.floats(-10, 10, allow_nan=False), min_size=g.n, max_size=g.n))
    x = np.array(x)
    if nonzero and not np.any(x):
        x[0] = 1.0
    return g, x


@pytest.fixture
def k3():
    return complete(3)


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def edge():
    return single_edge()
