import random

from hypothesis import given, settings, strategies as st

from dynedgecolor.oracle import brute_force_failed_set, recourse_diff, reference_nibble, verify_proper


def test_triangle():
    tri = [(0, 1), (1, 2), (0, 2)]
    assert verify_proper(dict(zip(tri, [1, 2, 3]))) == []
    bad = verify_proper(dict(zip(tri, [1, 1, 2])))
    assert len(bad) == 1 and set(bad[0]) == {(0, 1), (1, 2)}


def test_uncolored_edge_reported():
    assert verify_proper({(0, 1): 1}, [(0, 1), (2, 3)]) == [((2, 3), (2, 3))]


def matrix_violations(n, coloring):
    """Adjacency-matrix recount: per node, how many incident edges per color."""
    table = [[0] * (max(coloring.values(), default=0) + 1) for _ in range(n)]
    for (u, v), c in coloring.items():
        table[u][c] += 1
        table[v][c] += 1
    return sum(max(0, k - 1) for row in table for k in row)


@given(st.data())
@settings(max_examples=300, deadline=None)
def test_matches_matrix_checker(data):
    n = data.draw(st.integers(2, 20))
    pairs = data.draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=40))
    edges = sorted({(min(u, v), max(u, v)) for u, v in pairs if u != v})
    colors = data.draw(st.lists(st.integers(1, 6), min_size=len(edges), max_size=len(edges)))
    coloring = dict(zip(edges, colors))
    assert len(verify_proper(coloring)) == matrix_violations(n, coloring)


def test_reference_single_and_empty():
    assert reference_nibble([], {}, 3) == ({}, {}, set())
    e = (0, 1)
    colors, index, failed = reference_nibble([e], {e: (2, (4, 1))}, 3)
    assert index[e] == 1 and colors[e] == 4 and failed == set()
    _, index, failed = reference_nibble([e], {e: (4, (4, 1))}, 3)
    assert index[e] == 0 and failed == {e}


def test_failed_set_definition():
    colors = {(0, 1): 2, (1, 2): 2, (2, 3): 0, (3, 4): 2}
    rounds = {(0, 1): 1, (1, 2): 1, (2, 3): 1, (3, 4): 2}
    assert brute_force_failed_set(colors, rounds) == {(0, 1), (1, 2), (2, 3)}


def test_recourse_diff():
    assert recourse_diff({}, {}) == 0
    assert recourse_diff({(0, 1): 1}, {(0, 1): 1, (1, 2): 3}) == 1
    assert recourse_diff({(0, 1): 1, (1, 2): 3}, {(0, 1): 2}) == 2


def test_reference_is_proper_within_rounds_free_of_conflicts():
    rnd = random.Random(0)
    for _ in range(100):
        edges = sorted({tuple(sorted(rnd.sample(range(15), 2))) for _ in range(40)})
        rand = {e: (rnd.randint(1, 3), tuple(rnd.randint(1, 5) for _ in range(4))) for e in edges}
        colors, _, failed = reference_nibble(edges, rand, 3)
        ok = {e: c for e, c in colors.items() if e not in failed}
        assert verify_proper(ok) == []
