import copy
import random

import pytest

from dynedgecolor import Engine, derive_params, static_color
from dynedgecolor.checks import IncrementalChecker, check_engine
from dynedgecolor.errors import DuplicateEdge, MissingEdge, OracleMismatch
from dynedgecolor.graph import DynGraph
from dynedgecolor.oracle import recourse_diff, verify_proper
from dynedgecolor.streams import gen_churn, gen_regularish


def test_static_empty_and_single():
    p = derive_params(0.3, 8)
    res = static_color(DynGraph(5), p)
    assert res.coloring == {} and res.colors_used == 0
    res = static_color(DynGraph.from_edges(5, [(0, 1)]), p)
    assert res.colors_used == 1


def test_static_large_random_graph_is_proper():
    s = gen_regularish(1000, 64, 20000, seed=1)
    g = DynGraph.from_edges(1000, s.insertions(), 64)
    res = static_color(g, derive_params(0.3, 64), seed=1)
    assert verify_proper(res.coloring, g.edges()) == []
    assert len(res.coloring) == g.num_edges()
    assert res.bound == pytest.approx((1 + 61 * 0.3) * 64)


def test_insert_into_empty():
    eng = Engine.create(10, 0.3, 8, seed=0)
    rep = eng.insert(3, 1)
    assert rep.total_recourse == 1
    assert rep.edge == (1, 3)
    assert eng.color_of((3, 1)) >= 1


def test_errors():
    eng = Engine.create(10, 0.3, 8)
    eng.insert(0, 1)
    with pytest.raises(DuplicateEdge):
        eng.insert(1, 0)
    with pytest.raises(MissingEdge):
        eng.delete(2, 3)
    with pytest.raises(MissingEdge):
        eng.color_of((2, 3))
    with pytest.raises(ValueError):
        eng.apply_update("*", 0, 2)


def test_delete_unfails_neighbor():
    # search small dense instances for a deletion that clears a neighbor's failure
    for seed in range(200):
        eng = Engine.create(8, 0.5, 7, seed=seed)
        for u in range(8):
            for v in range(u + 1, 8):
                eng.insert(u, v)
        for e in sorted(eng.graph.edges()):
            trial = copy.deepcopy(eng)
            failed_before = trial.failed_edges()
            rep = trial.delete(*e)
            cleared = (failed_before - trial.failed_edges()) - {e}
            if cleared:
                f = min(cleared)
                assert rep.h_deletes >= 1
                assert eng.colors[f] > eng.greedy_offset
                assert trial.colors[f] <= trial.greedy_offset
                check_engine(trial)
                return
    pytest.fail("no fixture found")


def test_recourse_matches_snapshot_diff():
    s = gen_churn(60, 8, 1500, seed=4, delete_fraction=0.4)
    eng = Engine.create(s.n, 0.3, s.delta, seed=4)
    for op, u, v in s.updates:
        before = eng.snapshot()
        rep = eng.apply_update(op, u, v)
        assert rep.total_recourse == recourse_diff(before, eng.snapshot())


def test_colors_used_tracks_snapshot():
    s = gen_churn(40, 6, 800, seed=2)
    eng = Engine.create(s.n, 0.5, s.delta, seed=2)
    for op, u, v in s.updates:
        eng.apply_update(op, u, v)
        assert eng.colors_used() == len(set(eng.colors.values()))


@pytest.mark.slow
def test_large_stream_oracle_every_update():
    s = gen_churn(2000, 64, 10**4, seed=7, delete_fraction=0.3)
    eng = Engine.create(s.n, 0.3, s.delta, seed=7)
    checker = IncrementalChecker(eng, full_every=2500)
    for op, u, v in s.updates:
        checker.before()
        rep = eng.apply_update(op, u, v)
        checker.after(rep.edge)
    check_engine(eng)


def test_resample_empty_is_noop():
    eng = Engine.create(5, 0.3, 4)
    eng.resample_all()
    assert eng.colors == {} and eng.states == {}


def test_resample_uses_fresh_randomness():
    s = gen_churn(50, 8, 400, seed=1)
    eng = Engine.create(s.n, 0.3, s.delta, seed=1)
    for op, u, v in s.updates:
        eng.apply_update(op, u, v)
    old = dict(eng.randomness)
    inc = {e: eng.rng.incarnation(e) for e in old}
    eng.resample_all()
    check_engine(eng)
    assert set(eng.randomness) == set(old)
    assert all(eng.rng.incarnation(e) == inc[e] + 1 for e in old)
    assert all(eng.randomness[e] == eng.rng.draw(e) for e in old)
    assert sum(eng.randomness[e] != old[e] for e in old) > len(old) // 2


def test_resample_reproducible():
    s = gen_churn(50, 8, 400, seed=1)

    def run():
        eng = Engine.create(s.n, 0.3, s.delta, seed=9, resample_every=150)
        for op, u, v in s.updates:
            eng.apply_update(op, u, v)
        return eng

    a, b = run(), run()
    assert a.resamples == b.resamples == 2
    assert a.colors == b.colors
    check_engine(a)


def test_resample_threshold_triggers():
    s = gen_regularish(40, 16, 300, seed=3)
    eng = Engine.create(s.n, 0.5, s.delta, seed=3, resample_threshold=0.0, max_resample_rounds=1)
    rep = None
    for op, u, v in s.updates:
        rep = eng.apply_update(op, u, v)
        if rep.resampled:
            break
    assert rep.resampled and eng.resamples >= 1
    check_engine(eng)


def test_checker_detects_corruption():
    s = gen_churn(30, 6, 200, seed=0)
    eng = Engine.create(s.n, 0.5, s.delta, seed=0)
    for op, u, v in s.updates:
        eng.apply_update(op, u, v)
    j, st = next((j, st) for j, st in eng.states.items() if any(st.colorindex.values()))
    e = next(e for e, ell in st.colorindex.items() if ell)
    st.colorindex[e] = 0
    with pytest.raises(OracleMismatch) as info:
        check_engine(eng)
    assert info.value.diagnostics["subgraph"] == j
