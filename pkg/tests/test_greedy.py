import math
import random

import pytest

from dynedgecolor.errors import DuplicateEdge, MissingEdge
from dynedgecolor.greedy import GreedyState


def test_first_edge_palette():
    for seed in range(30):
        g = GreedyState(4, 1.0, seed=seed)
        assert g.greedy_insert(0, 1) == [(0, 1)]
        assert g.chi[(0, 1)] in {1, 2, 3}
        assert g.insert_samples == 1


def test_insert_returns_only_new_edge():
    g = GreedyState(30, 1.0, seed=1)
    rnd = random.Random(1)
    for _ in range(100):
        u, v = rnd.sample(range(30), 2)
        if (min(u, v), max(u, v)) not in g:
            assert g.greedy_insert(u, v) == [(min(u, v), max(u, v))]


def test_matching_delete_recolors_nothing():
    g = GreedyState(20, 1.0, seed=0)
    for k in range(0, 20, 2):
        g.greedy_insert(k, k + 1)
    for k in range(0, 20, 2):
        assert g.greedy_delete(k, k + 1) == []


def test_degree_drop_two_to_one():
    hits = 0
    for seed in range(200):
        g = GreedyState(3, 1.0, seed=seed)
        g.greedy_insert(0, 1)
        g.greedy_insert(0, 2)
        if g.chi[(0, 2)] <= 3:
            continue
        hits += 1
        assert g.chi[(0, 2)] in {4, 5, 6}
        assert g.greedy_delete(0, 1) == [(0, 2)]
        assert g.chi[(0, 2)] in {1, 2, 3}
        assert g.audit() == []
    assert hits > 0


def test_star_acceptance_rate():
    d = 40
    g = GreedyState(d + 2, 1.0, seed=5)
    for k in range(1, d + 1):
        g.greedy_insert(0, k)
    # the next edge at the center draws from [3(d+1)]; d colors are taken
    top = g.bound(d + 1)
    free = sum(1 for c in range(1, top + 1) if (0, c) not in g.psi)
    assert free / top >= 1 / 3
    draws = 0
    trials = 10**5
    rnd = random.Random(0)
    for _ in range(trials):
        draws += 1
        while (0, rnd.randrange(top) + 1) in g.psi:
            draws += 1
    assert trials / draws >= 1 / 3 * 0.95


def test_errors():
    g = GreedyState(4)
    g.greedy_insert(0, 1)
    with pytest.raises(DuplicateEdge):
        g.greedy_insert(1, 0)
    with pytest.raises(MissingEdge):
        g.greedy_delete(2, 3)
    with pytest.raises(MissingEdge):
        g.greedy_color_of((2, 3))
    with pytest.raises(ValueError):
        GreedyState(4, 0.0)


@pytest.mark.parametrize("delta", [1.0, 0.5, 0.1])
def test_random_stream_contracts(delta):
    n = 60
    g = GreedyState(n, delta, seed=3)
    rnd = random.Random(3)
    live = []
    worst = 0
    for step in range(5000):
        if live and rnd.random() < 0.45:
            e = live.pop(rnd.randrange(len(live)))
            worst = max(worst, len(g.greedy_delete(*e)))
        else:
            u, v = rnd.sample(range(n), 2)
            e = (min(u, v), max(u, v))
            if e in g:
                continue
            g.greedy_insert(*e)
            live.append(e)
        if step % 100 == 0:
            assert g.audit() == []
    assert worst <= 6
    assert g.audit() == []
    assert g.insert_samples / g.inserts <= 3 / delta * 1.5
    assert g.max_color() <= math.ceil((2 + delta) * g.graph.max_degree())
