import itertools

import pytest
from hypothesis import given, settings

from conftest import complete, cycle, graphs, petersen
from signlesslap.exceptions import CapacityError
from signlesslap.graph import SetPair, cut_weight, volume
from signlesslap.oracle import oracle_dual_cheeger, oracle_maxcut, oracle_ordering_check


def naive_dual_cheeger(g):
    best = 0.0
    for labels in itertools.product((0, 1, -1), repeat=g.n):
        if any(labels):
            p = SetPair.from_labels(labels)
            best = max(best, 2 * cut_weight(g, p.a, p.b) / volume(g, p.support))
    return best


def test_dual_cheeger_c4(c4):
    assert oracle_dual_cheeger(c4).value == 1.0


def test_dual_cheeger_k3_witness(k3):
    res = oracle_dual_cheeger(k3)
    assert res.value == pytest.approx(2 / 3)
    assert res.witness == SetPair({0, 1}, {2})
    assert res.enumerated == 26


def test_dual_cheeger_c5(c5):
    assert oracle_dual_cheeger(c5).value == pytest.approx(0.8)


@settings(max_examples=30, deadline=None)
@given(graphs(max_n=6))
def test_dual_cheeger_matches_naive_loop(g):
    assert oracle_dual_cheeger(g).value == pytest.approx(naive_dual_cheeger(g), abs=1e-12)


@pytest.mark.parametrize("g, cut", [(cycle(5), 4), (cycle(4), 4), (complete(4), 4), (petersen(), 12)], ids=["C5", "C4", "K4", "Petersen"])
def test_maxcut_examples(g, cut):
    res = oracle_maxcut(g)
    assert res.cut == cut
    assert res.fraction == pytest.approx(cut / g.total_weight)
    assert res.value == pytest.approx(2 * cut / g.volume_total)
    s, t = res.witness
    assert cut_weight(g, s, t) == cut and g.n - 1 in t


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_ordering(g):
    assert oracle_ordering_check(g)


def test_capacity():
    with pytest.raises(CapacityError):
        oracle_dual_cheeger(cycle(15))
    with pytest.raises(CapacityError):
        oracle_maxcut(cycle(21))


def test_as_dict(k3):
    assert oracle_dual_cheeger(k3).as_dict()["witness"] == {"A": [0, 1], "B": [2]}
    assert set(oracle_maxcut(k3).as_dict()) == {"value", "enumerated", "witness", "cut", "fraction"}
