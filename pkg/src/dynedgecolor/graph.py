"""Dynamic undirected simple graph on a fixed node set."""

from __future__ import annotations

from typing import Iterator, Optional

from .errors import DegreeBoundViolated, DuplicateEdge, MissingEdge

Edge = tuple[int, int]


def normalize(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"self-loop ({u}, {v}) is not allowed")
    return (u, v) if u < v else (v, u)


class DynGraph:
    """Adjacency sets plus a degree histogram so ``max_degree`` stays O(1)."""

    def __init__(self, n: int, max_degree: Optional[int] = None):
        if n < 0:
            raise ValueError("node count must be non-negative")
        self.n = n
        self.bound = max_degree
        self._adj: list[set[int]] = [set() for _ in range(n)]
        # _hist[d] = number of nodes with degree d
        self._hist: list[int] = [n]
        self._max = 0
        self._edges: dict[Edge, None] = {}

    def _check_node(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise IndexError(f"node {u} out of range [0, {self.n})")

    def _bump(self, u: int, step: int) -> None:
        d = len(self._adj[u])
        old = d - step
        self._hist[old] -= 1
        if d >= len(self._hist):
            self._hist.append(0)
        self._hist[d] += 1
        if d > self._max:
            self._max = d
        while self._max > 0 and self._hist[self._max] == 0:
            self._max -= 1

    def insert_edge(self, u: int, v: int) -> Edge:
        e = normalize(u, v)
        a, b = e
        self._check_node(a)
        self._check_node(b)
        if b in self._adj[a]:
            raise DuplicateEdge(e)
        if self.bound is not None:
            for x in e:
                if len(self._adj[x]) + 1 > self.bound:
                    raise DegreeBoundViolated(
                        f"inserting {e} raises deg({x}) above {self.bound}"
                    )
        self._adj[a].add(b)
        self._adj[b].add(a)
        self._bump(a, 1)
        self._bump(b, 1)
        self._edges[e] = None
        return e

    def delete_edge(self, u: int, v: int) -> Edge:
        e = normalize(u, v)
        a, b = e
        self._check_node(a)
        self._check_node(b)
        if b not in self._adj[a]:
            raise MissingEdge(e)
        self._adj[a].discard(b)
        self._adj[b].discard(a)
        self._bump(a, -1)
        self._bump(b, -1)
        del self._edges[e]
        return e

    def has_edge(self, u: int, v: int) -> bool:
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            return False
        return v in self._adj[u]

    def degree(self, u: int) -> int:
        self._check_node(u)
        return len(self._adj[u])

    def neighbors(self, u: int) -> list[Edge]:
        """Edges incident on ``u``, normalized."""
        self._check_node(u)
        return [normalize(u, w) for w in self._adj[u]]

    def adjacent_nodes(self, u: int) -> set[int]:
        return self._adj[u]

    def max_degree(self) -> int:
        return self._max

    def num_edges(self) -> int:
        return len(self._edges)

    def edges(self) -> Iterator[Edge]:
        """Live edges in insertion order."""
        return iter(list(self._edges))

    def __contains__(self, e) -> bool:
        return self.has_edge(*e)

    def __len__(self) -> int:
        return len(self._edges)

    def copy(self) -> "DynGraph":
        g = DynGraph(self.n, self.bound)
        g._adj = [set(s) for s in self._adj]
        g._hist = list(self._hist)
        g._max = self._max
        g._edges = dict(self._edges)
        return g

    @classmethod
    def from_edges(cls, n: int, edges, max_degree: Optional[int] = None) -> "DynGraph":
        g = cls(n, max_degree)
        for u, v in edges:
            g.insert_edge(u, v)
        return g
