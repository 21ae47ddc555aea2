import pytest

from dynedgecolor.errors import DuplicateEdge, MissingEdge
from dynedgecolor.graph import DynGraph
from dynedgecolor.partition import PartitionState
from dynedgecolor.randomness import Rng, derive_params


def test_eta_one_routes_to_one():
    p = derive_params(0.5, 2)
    rng = Rng(0, p)
    part = PartitionState(10, p.eta, p.sub_palette_size)
    for k in range(9):
        e = (k, k + 1)
        part.route_insert(e, rng.sample_partition_index(e))
    assert set(part.subgraphs) == {1}
    assert part.color_offset(1) == 0


def test_route_and_delete():
    part = PartitionState(5, 4, 3)
    part.route_insert((0, 1), 3)
    assert part.subgraph_of((0, 1)) == 3
    assert part.color_offset(3) == 6
    with pytest.raises(DuplicateEdge):
        part.route_insert((0, 1), 2)
    assert part.route_delete((0, 1)) == 3
    assert part.subgraphs == {}
    with pytest.raises(MissingEdge):
        part.route_delete((0, 1))


def test_reroute_after_incarnation():
    p = derive_params(0.5, 2**12)
    rng = Rng(3, p)
    e = (0, 1)
    seen = set()
    for _ in range(20):
        seen.add(rng.sample_partition_index(e))
        rng.fresh_incarnation(e)
    assert len(seen) > 1


def test_subgraph_degree_concentrates():
    # a 64-regular circulant on 4000 nodes split four ways
    n, delta, eta = 4000, 64, 4
    p = derive_params(0.5, 2**12)
    p = type(p)(**{**p.__dict__, "eta": eta})
    rng = Rng(9, p)
    part = PartitionState(n, eta, 1)
    for u in range(n):
        for s in range(1, delta // 2 + 1):
            v = (u + s) % n
            e = (min(u, v), max(u, v))
            part.route_insert(e, rng.sample_partition_index(e))
    assert len(part.member) == n * delta // 2
    for j in range(1, eta + 1):
        g: DynGraph = part.subgraphs[j]
        # Binomial(64, 1/4): mean 16, sd ~3.5; the max over 4000 nodes sits well below 2x
        assert 16 <= g.max_degree() <= 32
        mean = sum(g.degree(x) for x in range(n)) / n
        assert mean == pytest.approx(16, rel=0.05)
