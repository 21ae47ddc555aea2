"""Dynamic (2+delta)*Delta edge coloring by rejection sampling.

Invariant: edge (u, v) holds a color in 1..ceil((2+delta)*max(deg u, deg v)).
A uniform draw from that range is free at both endpoints with probability at
least delta/3, so insertion needs 3/delta draws in expectation.  A deletion
lowers two degrees; only edges whose color falls in the top ``ceil(2+delta)``
slots of an endpoint's old range can become illegal, and those are recolored.
"""

from __future__ import annotations

import math
import random
from typing import Optional

from .errors import DuplicateEdge, MissingEdge
from .graph import DynGraph, Edge, normalize


class GreedyState:
    def __init__(self, n: int, delta: float = 1.0, seed: int = 0, max_attempts: Optional[int] = None):
        if not 0 < delta <= 1:
            raise ValueError("delta must lie in (0, 1]")
        self.graph = DynGraph(n)
        self.delta = delta
        self.chi: dict[Edge, int] = {}
        self.psi: dict[tuple[int, int], Edge] = {}
        self._rng = random.Random(seed)
        self.max_attempts = max_attempts or 64 * math.ceil(3 / delta)
        # counters
        self.inserts = 0
        self.insert_samples = 0
        self.recolors = 0
        self.recolor_samples = 0
        self.fallbacks = 0

    def bound(self, d: int) -> int:
        x = (2 + self.delta) * d
        r = round(x)
        return int(r) if abs(x - r) < 1e-9 else math.ceil(x)

    def edge_bound(self, e: Edge) -> int:
        u, v = e
        return self.bound(max(self.graph.degree(u), self.graph.degree(v)))

    def _assign(self, e: Edge) -> int:
        """Color ``e`` (already in the graph, uncolored); return draws used."""
        u, v = e
        top = self.edge_bound(e)
        psi = self.psi
        rand = self._rng.randrange
        for attempt in range(1, self.max_attempts + 1):
            c = rand(top) + 1
            if (u, c) not in psi and (v, c) not in psi:
                break
        else:
            self.fallbacks += 1
            c = next(c for c in range(1, top + 1) if (u, c) not in psi and (v, c) not in psi)
        self.chi[e] = c
        psi[(u, c)] = e
        psi[(v, c)] = e
        return attempt

    def _uncolor(self, e: Edge) -> None:
        c = self.chi.pop(e)
        u, v = e
        del self.psi[(u, c)]
        del self.psi[(v, c)]

    def greedy_insert(self, u: int, v: int) -> list[Edge]:
        e = normalize(u, v)
        if e in self.chi:
            raise DuplicateEdge(e)
        self.graph.insert_edge(*e)
        self.insert_samples += self._assign(e)
        self.inserts += 1
        return [e]

    def greedy_delete(self, u: int, v: int) -> list[Edge]:
        e = normalize(u, v)
        if e not in self.chi:
            raise MissingEdge(e)
        self._uncolor(e)
        self.graph.delete_edge(*e)
        recolored = []
        for x in e:
            d = self.graph.degree(x)
            lo, hi = self.bound(d), self.bound(d + 1)
            for c in range(lo + 1, hi + 1):
                f = self.psi.get((x, c))
                if f is not None and c > self.edge_bound(f):
                    self._uncolor(f)
                    self.recolor_samples += self._assign(f)
                    self.recolors += 1
                    recolored.append(f)
        return recolored

    def greedy_color_of(self, e: Edge) -> int:
        try:
            return self.chi[e]
        except KeyError:
            raise MissingEdge(e) from None

    def __contains__(self, e) -> bool:
        return e in self.chi

    def __len__(self) -> int:
        return len(self.chi)

    def colors_used(self) -> int:
        return len(set(self.chi.values()))

    def max_color(self) -> int:
        return max(self.chi.values(), default=0)

    def audit(self) -> list[str]:
        problems = []
        seen: dict[tuple[int, int], Edge] = {}
        for e, c in self.chi.items():
            if not 1 <= c <= self.edge_bound(e):
                problems.append(f"{e} color {c} exceeds bound {self.edge_bound(e)}")
            for x in e:
                if (x, c) in seen:
                    problems.append(f"{e} and {seen[(x, c)]} share color {c} at {x}")
                seen[(x, c)] = e
        if seen != self.psi:
            problems.append("psi out of sync")
        if set(self.chi) != set(self.graph.edges()):
            problems.append("chi domain differs from graph")
        return problems
