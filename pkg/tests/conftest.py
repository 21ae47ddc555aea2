import random
import warnings

import pytest

from dynedgecolor.randomness import Rng, derive_params


@pytest.fixture(autouse=True)
def _quiet_large_epsilon():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        yield


def random_graph(rnd: random.Random, n: int, m: int):
    """Up to ``m`` distinct normalized edges on ``n`` nodes."""
    edges = set()
    for _ in range(4 * m):
        if len(edges) >= m:
            break
        u, v = rnd.sample(range(n), 2)
        edges.add((min(u, v), max(u, v)))
    return sorted(edges)


def random_instance(rnd: random.Random, n: int, m: int, T: int, K: int, palette: int):
    """Edges plus (round, sequence) pairs with rounds spread over 1..T+1."""
    edges = random_graph(rnd, n, m)
    rand = {}
    for e in edges:
        i = rnd.randint(1, T + 1) if rnd.random() < 0.9 else T + 1
        rand[e] = (i, tuple(rnd.randint(1, palette) for _ in range(K)))
    return edges, rand


def sampled_instance(seed: int, n: int, m: int, epsilon: float, delta: int):
    """Edges with randomness drawn the way the engine draws it."""
    params = derive_params(epsilon, delta)
    rng = Rng(seed, params)
    edges = random_graph(random.Random(seed), n, m)
    return params, edges, {e: (rng.sample_round(e), rng.sample_color_sequence(e)) for e in edges}


# -- acceptance reporting ---------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance(capsys):
    """Record one PASS/FAIL line for a criterion and show it immediately."""

    def report(number: int, name: str, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name}: {detail}"
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
