"""Update-stream files and synthetic stream generators.

File format::

    # comments start with '#'
    n 1000 delta 64
    + 3 17
    - 3 17
"""

from __future__ import annotations

import io
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional, Union

from .errors import StreamParseError

Update = tuple[str, int, int]


class InvalidArgs(ValueError):
    pass


@dataclass
class Stream:
    n: int
    delta: int
    updates: list[Update] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.updates)

    def insertions(self) -> list[tuple[int, int]]:
        return [(u, v) for op, u, v in self.updates if op == "+"]

    def final_edges(self) -> list[tuple[int, int]]:
        live: dict[tuple[int, int], None] = {}
        for op, u, v in self.updates:
            e = (min(u, v), max(u, v))
            if op == "+":
                live[e] = None
            else:
                live.pop(e, None)
        return list(live)


def format_stream(stream: Stream) -> str:
    out = io.StringIO()
    out.write(f"n {stream.n} delta {stream.delta}\n")
    for op, u, v in stream.updates:
        out.write(f"{op} {u} {v}\n")
    return out.getvalue()


def write_stream(stream: Stream, path: Union[str, Path]) -> None:
    Path(path).write_text(format_stream(stream))


def _lines(source) -> Iterator[tuple[int, str]]:
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and Path(source).exists()):
        with open(source) as fh:
            yield from enumerate(fh, 1)
    elif isinstance(source, str):
        yield from enumerate(source.splitlines(), 1)
    else:
        yield from enumerate(source, 1)


def parse_stream(source) -> Stream:
    """Parse and validate a stream given as text, a path or an iterable of lines.

    Validation replays the stream: every deletion must hit a live edge and no
    insertion may push a degree above ``delta``.
    """
    stream: Optional[Stream] = None
    live: set[tuple[int, int]] = set()
    deg: list[int] = []
    for lineno, raw in _lines(source):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if stream is None:
            if len(parts) != 4 or parts[0] != "n" or parts[2] != "delta":
                raise StreamParseError("expected header 'n <n> delta <delta>'", lineno)
            try:
                n, delta = int(parts[1]), int(parts[3])
            except ValueError:
                raise StreamParseError("header values must be integers", lineno) from None
            if n < 0 or delta < 1:
                raise StreamParseError("need n >= 0 and delta >= 1", lineno)
            stream = Stream(n, delta)
            deg = [0] * n
            continue
        if len(parts) != 3 or parts[0] not in ("+", "-"):
            raise StreamParseError(f"expected '+ u v' or '- u v', got {line!r}", lineno)
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise StreamParseError(f"node ids must be integers, got {line!r}", lineno) from None
        if not (0 <= u < stream.n and 0 <= v < stream.n):
            raise StreamParseError(f"node id out of range [0, {stream.n})", lineno)
        if u == v:
            raise StreamParseError("self-loops are not allowed", lineno)
        e = (min(u, v), max(u, v))
        op = parts[0]
        if op == "+":
            if e in live:
                raise StreamParseError(f"edge {e} inserted twice", lineno)
            if deg[u] >= stream.delta or deg[v] >= stream.delta:
                raise StreamParseError(f"inserting {e} exceeds delta={stream.delta}", lineno)
            live.add(e)
            deg[u] += 1
            deg[v] += 1
        else:
            if e not in live:
                raise StreamParseError(f"deleting absent edge {e}", lineno)
            live.discard(e)
            deg[u] -= 1
            deg[v] -= 1
        stream.updates.append((op, u, v))
    if stream is None:
        raise StreamParseError("missing header")
    return stream


# -- generators -------------------------------------------------------------


class _LiveSet:
    """Live edges with O(1) uniform sampling and removal."""

    def __init__(self, n: int):
        self.items: list[tuple[int, int]] = []
        self.pos: dict[tuple[int, int], int] = {}
        self.deg = [0] * n

    def __contains__(self, e) -> bool:
        return e in self.pos

    def __len__(self) -> int:
        return len(self.items)

    def add(self, e) -> None:
        self.pos[e] = len(self.items)
        self.items.append(e)
        self.deg[e[0]] += 1
        self.deg[e[1]] += 1

    def remove(self, e) -> None:
        k = self.pos.pop(e)
        last = self.items.pop()
        if last != e:
            self.items[k] = last
            self.pos[last] = k
        self.deg[e[0]] -= 1
        self.deg[e[1]] -= 1

    def pop_random(self, rnd: random.Random):
        e = self.items[rnd.randrange(len(self.items))]
        self.remove(e)
        return e


def _random_pair(rnd: random.Random, n: int, live: _LiveSet, delta: int, tries: int = 200):
    deg = live.deg
    for _ in range(tries):
        u = rnd.randrange(n)
        v = rnd.randrange(n)
        if u == v:
            continue
        e = (u, v) if u < v else (v, u)
        if e not in live and deg[u] < delta and deg[v] < delta:
            return e
    # dense regime: enumerate what is left
    open_nodes = [x for x in range(n) if deg[x] < delta]
    cands = [
        (a, b)
        for i, a in enumerate(open_nodes)
        for b in open_nodes[i + 1 :]
        if (a, b) not in live
    ]
    return rnd.choice(cands) if cands else None


def _check(n: int, delta: int, count: int) -> None:
    if n < 0 or delta < 1 or count < 0:
        raise InvalidArgs("need n >= 0, delta >= 1, count >= 0")
    if count and n < 2:
        raise InvalidArgs("need at least two nodes to generate edges")


def gen_random(n: int, delta: int, count: int, seed: int = 0) -> Stream:
    """Insert-only, uniform among pairs that keep the degree bound."""
    _check(n, delta, count)
    rnd = random.Random(seed)
    live = _LiveSet(n)
    s = Stream(n, delta)
    for _ in range(count):
        e = _random_pair(rnd, n, live, delta)
        if e is None:
            raise InvalidArgs(f"graph saturated after {len(live)} edges")
        live.add(e)
        s.updates.append(("+", *e))
    return s


def gen_forest(n: int, delta: int, count: int, seed: int = 0) -> Stream:
    """Insert-only acyclic stream (union-find rejects cycle-closing pairs)."""
    _check(n, delta, count)
    if count > max(n - 1, 0):
        raise InvalidArgs(f"a forest on {n} nodes has at most {n - 1} edges")
    rnd = random.Random(seed)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    deg = [0] * n
    s = Stream(n, delta)
    for k in range(count):
        for _ in range(50 * n + 100):
            u, v = rnd.randrange(n), rnd.randrange(n)
            if u != v and deg[u] < delta and deg[v] < delta and find(u) != find(v):
                break
        else:
            raise InvalidArgs(f"cannot extend forest after {k} edges under delta={delta}")
        parent[find(u)] = find(v)
        deg[u] += 1
        deg[v] += 1
        s.updates.append(("+", min(u, v), max(u, v)))
    return s


def gen_regularish(n: int, delta: int, count: int, seed: int = 0) -> Stream:
    """Insert-only; sweeps over unsaturated nodes so degrees fill up evenly."""
    _check(n, delta, count)
    rnd = random.Random(seed)
    live = _LiveSet(n)
    deg = live.deg
    s = Stream(n, delta)
    pending: list[int] = []
    for k in range(count):
        e = None
        refreshed = False
        while e is None:
            if not pending:
                if refreshed:
                    break
                pending = [x for x in range(n) if deg[x] < delta]
                rnd.shuffle(pending)
                refreshed = True
                continue
            u = pending.pop()
            if deg[u] >= delta:
                continue
            for _ in range(64):
                v = rnd.randrange(n)
                p = (u, v) if u < v else (v, u)
                if v != u and deg[v] < delta and p not in live:
                    e = p
                    break
        if e is None:
            e = _random_pair(rnd, n, live, delta)
        if e is None:
            raise InvalidArgs(f"graph saturated after {k} edges")
        live.add(e)
        s.updates.append(("+", *e))
    return s


def gen_churn(
    n: int,
    delta: int,
    count: int,
    seed: int = 0,
    delete_fraction: float = 0.3,
    warmup: int = 0,
) -> Stream:
    """``warmup`` insertions, then ``count`` updates each a deletion w.p. ``delete_fraction``."""
    _check(n, delta, count + warmup)
    if not 0 <= delete_fraction <= 1:
        raise InvalidArgs("delete fraction must lie in [0, 1]")
    rnd = random.Random(seed)
    live = _LiveSet(n)
    s = Stream(n, delta)
    for k in range(warmup + count):
        delete = k >= warmup and len(live) and rnd.random() < delete_fraction
        if not delete:
            e = _random_pair(rnd, n, live, delta)
            if e is None:
                if not len(live):
                    raise InvalidArgs("no legal insertion exists")
                delete = True
        if delete:
            e = live.pop_random(rnd)
            s.updates.append(("-", *e))
        else:
            live.add(e)
            s.updates.append(("+", *e))
    return s


GENERATORS = {
    "random": gen_random,
    "forest": gen_forest,
    "regularish": gen_regularish,
    "churn": gen_churn,
}
