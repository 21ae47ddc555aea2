"""Static one-shot coloring and the dynamic engine built on the same pieces.

Final color of an edge: if Nibble colored it without conflict, its tentative
color shifted into its subgraph's block; otherwise its color in the greedy
coloring of the failed-edge graph H, shifted past all subgraph blocks.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

from .errors import MissingEdge
from .graph import DynGraph, Edge, normalize
from .greedy import GreedyState
from .nibble import DirtySet, deletion_update, insertion_update, static_nibble
from .palette_ds import PaletteState
from .partition import PartitionState
from .randomness import EdgeRandomness, Params, Rng, derive_params

RESAMPLE_FACTOR = 19
INSERT = "+"
DELETE = "-"


def greedy_seed(seed: int) -> int:
    h = hashlib.blake2b(b"greedy", digest_size=8, key=(int(seed) & (2**64 - 1)).to_bytes(8, "little"))
    return int.from_bytes(h.digest(), "little")


@dataclass
class UpdateReport:
    op: str
    edge: Edge
    dirty_tentative: int = 0
    h_inserts: int = 0
    h_deletes: int = 0
    greedy_recolors: int = 0
    total_recourse: int = 0
    elapsed_ns: int = 0
    resampled: bool = False

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class StaticResult:
    coloring: dict[Edge, int]
    colors_used: int
    failed: int
    h_max_degree: int
    params: Params
    nibble_states: dict[int, PaletteState] = field(repr=False, default_factory=dict)

    @property
    def bound(self) -> float:
        """The (1 + 61 eps) * Delta color budget, for reporting."""
        return (1 + 61 * self.params.epsilon) * self.params.delta_cap


def static_color(g: DynGraph, params: Params, seed: int = 0) -> StaticResult:
    """Partition, run Nibble on every part, greedily color the failures."""
    rng = Rng(seed, params)
    parts: dict[int, list[Edge]] = {}
    rand: dict[Edge, tuple[int, tuple[int, ...]]] = {}
    for e in sorted(g.edges()):
        r = rng.draw(e)
        parts.setdefault(r.j, []).append(e)
        rand[e] = (r.i, r.c)

    P = params.sub_palette_size
    coloring: dict[Edge, int] = {}
    failed: list[Edge] = []
    states = {}
    for j in sorted(parts):
        st = static_nibble(parts[j], rand, params.T, params.K, P)
        states[j] = st
        for e in parts[j]:
            if e in st.failed:
                failed.append(e)
            else:
                coloring[e] = (j - 1) * P + st.color_query(e)

    greedy = GreedyState(g.n, 1.0, seed=greedy_seed(seed))
    for e in failed:
        greedy.greedy_insert(*e)
    offset = params.nibble_colors
    for e, c in greedy.chi.items():
        coloring[e] = offset + c
    return StaticResult(
        coloring=coloring,
        colors_used=len(set(coloring.values())),
        failed=len(failed),
        h_max_degree=greedy.graph.max_degree(),
        params=params,
        nibble_states=states,
    )


class Engine:
    """Maintains a proper edge coloring under insertions and deletions.

    ``resample_every`` replays all edges with fresh randomness every N
    updates; ``resample_threshold`` (the analysis uses 19) does so
    whenever the failed-edge graph gets max degree above
    ``threshold * epsilon * Delta``.  Both are off by default.
    """

    def __init__(
        self,
        n: int,
        params: Params,
        seed: int = 0,
        resample_every: Optional[int] = None,
        resample_threshold: Optional[float] = None,
        max_resample_rounds: int = 10,
    ):
        self.n = n
        self.params = params
        self.seed = seed
        self.graph = DynGraph(n, params.delta_cap)
        self.rng = Rng(seed, params)
        self.partition = PartitionState(n, params.eta, params.sub_palette_size)
        self.states: dict[int, PaletteState] = {}
        self.randomness: dict[Edge, EdgeRandomness] = {}
        self.greedy = GreedyState(n, params.greedy_slack, seed=greedy_seed(seed))
        self.greedy_offset = params.nibble_colors
        self.colors: dict[Edge, int] = {}
        self._color_count: dict[int, int] = {}
        self.resample_every = resample_every
        self.resample_threshold = resample_threshold
        self.max_resample_rounds = max_resample_rounds
        self.updates = 0
        self.resamples = 0
        self._replaying = False

    @classmethod
    def create(cls, n: int, epsilon: float, delta: int, seed: int = 0, greedy_slack: float = 1.0, **kw) -> "Engine":
        return cls(n, derive_params(epsilon, delta, greedy_slack), seed=seed, **kw)

    # -- lookups ------------------------------------------------------------

    def _state(self, j: int) -> PaletteState:
        st = self.states.get(j)
        if st is None:
            p = self.params
            st = self.states[j] = PaletteState(p.T, p.K, p.sub_palette_size)
        return st

    def _final_color(self, e: Edge) -> Optional[int]:
        j = self.partition.member.get(e)
        if j is None:
            return None
        st = self.states[j]
        if e in st.failed:
            return self.greedy_offset + self.greedy.chi[e]
        return self.partition.color_offset(j) + st.color_query(e)

    def color_of(self, e: Edge) -> int:
        e = normalize(*e)
        try:
            return self.colors[e]
        except KeyError:
            raise MissingEdge(e) from None

    def snapshot(self) -> dict[Edge, int]:
        return dict(self.colors)

    def failed_edges(self) -> set[Edge]:
        out: set[Edge] = set()
        for st in self.states.values():
            out |= st.failed
        return out

    def colors_used(self) -> int:
        return len(self._color_count)

    def num_failed(self) -> int:
        return len(self.greedy)

    def h_max_degree(self) -> int:
        return self.greedy.graph.max_degree()

    def subgraph_input(self, j: int) -> tuple[list[Edge], dict[Edge, tuple[int, tuple[int, ...]]]]:
        """Edges of subgraph ``j`` with their (round, sequence) pairs."""
        edges = self.partition.edges_of(j)
        return edges, {e: (self.randomness[e].i, self.randomness[e].c) for e in edges}

    # -- updates ------------------------------------------------------------

    def insert(self, u: int, v: int) -> UpdateReport:
        return self.apply_update(INSERT, u, v)

    def delete(self, u: int, v: int) -> UpdateReport:
        return self.apply_update(DELETE, u, v)

    def _set_color(self, e: Edge, c: Optional[int]) -> bool:
        old = self.colors.get(e)
        if old == c:
            return False
        cc = self._color_count
        if old is not None:
            left = cc[old] - 1
            if left:
                cc[old] = left
            else:
                del cc[old]
            del self.colors[e]
        if c is not None:
            self.colors[e] = c
            cc[c] = cc.get(c, 0) + 1
        return True

    def apply_update(self, op: str, u: int, v: int) -> UpdateReport:
        t0 = time.perf_counter_ns()
        e = normalize(u, v)
        report = UpdateReport(op=op, edge=e)
        if op == INSERT:
            self.graph.insert_edge(*e)
            r = self.rng.draw(e)
            self.randomness[e] = r
            j = self.partition.route_insert(e, r.j)
            st = self._state(j)
            dirty = insertion_update(st, e, r.i, r.c)
        elif op == DELETE:
            if not self.graph.has_edge(*e):
                raise MissingEdge(e)
            j = self.partition.member[e]
            st = self.states[j]
            dirty = deletion_update(st, e)
            self.partition.route_delete(e)
            self.graph.delete_edge(*e)
            del self.randomness[e]
            self.rng.fresh_incarnation(e)
            if not len(st):
                del self.states[j]
        else:
            raise ValueError(f"unknown operation {op!r}")

        touched = self._sync_failed(st, dirty, report)
        touched.add(e)
        touched.update(dirty.changed)
        recourse = 0
        for f in touched:
            if self._set_color(f, self._final_color(f)):
                recourse += 1
        report.dirty_tentative = len(dirty)
        report.total_recourse = recourse
        report.elapsed_ns = time.perf_counter_ns() - t0

        if not self._replaying:
            self.updates += 1
            if self.resample_every and self.updates % self.resample_every == 0:
                self.resample_all()
                report.resampled = True
            if self.resample_threshold is not None:
                limit = self.resample_threshold * self.params.epsilon * self.params.delta_cap
                rounds = 0
                while self.h_max_degree() > limit and rounds < self.max_resample_rounds:
                    self.resample_all()
                    report.resampled = True
                    rounds += 1
        return report

    def _sync_failed(self, st: PaletteState, dirty: DirtySet, report: UpdateReport) -> set[Edge]:
        """Mirror net failed-set changes of one update into H and its greedy coloring."""
        first: dict[Edge, bool] = {}
        for f, entered in st.drain_transitions():
            first.setdefault(f, entered)
        leaving, entering = [], []
        for f, first_entered in first.items():
            before = not first_entered
            after = f in st.failed
            if before and not after:
                leaving.append(f)
            elif after and not before:
                entering.append(f)
        touched = set(first)
        recolored = 0
        for f in leaving:
            moved = self.greedy.greedy_delete(*f)
            recolored += len(moved)
            touched.update(moved)
        for f in entering:
            self.greedy.greedy_insert(*f)
        report.h_deletes = len(leaving)
        report.h_inserts = len(entering)
        report.greedy_recolors = recolored
        return touched

    def resample_all(self) -> None:
        """Delete and reinsert every live edge with a fresh incarnation."""
        was = self._replaying
        self._replaying = True
        try:
            for e in sorted(self.graph.edges()):
                self.apply_update(DELETE, *e)
                self.apply_update(INSERT, *e)
        finally:
            self._replaying = was
        self.resamples += 1

    def load(self, edges: Iterable[Edge]) -> None:
        for u, v in edges:
            self.apply_update(INSERT, u, v)
