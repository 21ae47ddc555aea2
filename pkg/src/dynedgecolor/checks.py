"""Compare a live engine against the brute-force oracle."""

from __future__ import annotations

from typing import Iterable, Optional

from . import oracle
from .engine import Engine
from .errors import OracleMismatch


def _fail(msg: str, **diag) -> None:
    raise OracleMismatch(msg, diag)


def check_subgraph(engine: Engine, j: int, check_randomness: bool = False) -> None:
    """Exact equality of color indices and failed set with a fresh recomputation."""
    edges, rand = engine.subgraph_input(j)
    st = engine.states.get(j)
    if st is None:
        if edges:
            _fail(f"subgraph {j} has edges but no state", subgraph=j)
        return
    if set(edges) != set(st.round):
        _fail(f"subgraph {j} edge set differs from its state", subgraph=j)
    if check_randomness:
        for e in edges:
            r = engine.randomness[e]
            if engine.rng.draw(e) != r:
                _fail(f"stored randomness of {e} is stale", subgraph=j, edge=e)
    for e in edges:
        if rand[e][0] != st.round[e]:
            _fail(f"round of {e} differs", subgraph=j, edge=e)
    _, index, failed = oracle.reference_nibble(edges, rand, engine.params.T)
    if index != st.colorindex:
        diff = {
            e: (st.colorindex.get(e), index.get(e))
            for e in set(index) | set(st.colorindex)
            if st.colorindex.get(e) != index.get(e)
        }
        first = min(diff, key=lambda e: (st.round.get(e, 0), e))
        _fail(
            f"color index mismatch in subgraph {j}: first divergent edge {first} "
            f"(round {st.round.get(first)}) dynamic={diff[first][0]} reference={diff[first][1]}",
            subgraph=j,
            seed=engine.seed,
            update=engine.updates,
            diff={str(k): v for k, v in sorted(diff.items())},
        )
    if failed != st.failed:
        _fail(
            f"failed set mismatch in subgraph {j}",
            subgraph=j,
            seed=engine.seed,
            update=engine.updates,
            extra=sorted(st.failed - failed),
            missing=sorted(failed - st.failed),
        )


def check_failed_set(engine: Engine, subgraphs: Optional[Iterable[int]] = None) -> None:
    """Maintained F against a full neighborhood scan, per subgraph."""
    for j in subgraphs if subgraphs is not None else list(engine.states):
        st = engine.states.get(j)
        if st is None:
            continue
        colors = st.tentative_colors()
        expected = oracle.brute_force_failed_set(colors, st.round)
        if expected != st.failed:
            _fail(
                f"failed set of subgraph {j} differs from brute force",
                subgraph=j,
                extra=sorted(st.failed - expected),
                missing=sorted(expected - st.failed),
            )


def check_routing(engine: Engine) -> None:
    seen = set()
    for j, g in engine.partition.subgraphs.items():
        for e in g.edges():
            if e in seen:
                _fail(f"{e} appears in two subgraphs")
            seen.add(e)
            if engine.partition.member.get(e) != j or engine.randomness[e].j != j:
                _fail(f"{e} routed inconsistently", edge=e, subgraph=j)
    if seen != set(engine.graph.edges()):
        _fail("subgraphs do not cover the live edge set exactly")


def check_proper(engine: Engine) -> None:
    bad = oracle.verify_proper(engine.colors, engine.graph.edges())
    if bad:
        _fail(f"coloring not proper: {bad[:5]}", violations=bad[:20])


def check_h_sync(engine: Engine) -> None:
    failed = engine.failed_edges()
    if failed != set(engine.greedy.chi):
        _fail(
            "greedy graph differs from the union of failed sets",
            extra=sorted(set(engine.greedy.chi) - failed),
            missing=sorted(failed - set(engine.greedy.chi)),
        )


def check_colors(engine: Engine) -> None:
    """Maintained final colors match their definition; palettes stay disjoint."""
    P = engine.params.sub_palette_size
    for e, c in engine.colors.items():
        j = engine.partition.member[e]
        st = engine.states[j]
        if e in st.failed:
            if c <= engine.greedy_offset or c != engine.greedy_offset + engine.greedy.chi[e]:
                _fail(f"{e} should carry its greedy color", edge=e)
        elif not (j - 1) * P < c <= j * P or c != (j - 1) * P + st.color_query(e):
            _fail(f"{e} should carry its tentative color", edge=e)
    if set(engine.colors) != set(engine.partition.member):
        _fail("final coloring domain differs from live edges")


def check_engine(engine: Engine, subgraphs: Optional[Iterable[int]] = None) -> None:
    """The full battery; ``subgraphs`` restricts the oracle recomputation."""
    check_routing(engine)
    for j in subgraphs if subgraphs is not None else sorted(engine.partition.subgraphs):
        check_subgraph(engine, j)
    check_failed_set(engine, subgraphs)
    check_h_sync(engine)
    check_colors(engine)
    check_proper(engine)
    problems = engine.greedy.audit()
    if problems:
        _fail(f"greedy invariant broken: {problems[:3]}")


class IncrementalChecker:
    """Per-update oracle check that only recomputes the subgraph that moved.

    Every subgraph's state carries a version counter.  After an update, the
    subgraphs whose counter moved (at most the one the edge routes to) are
    recomputed from scratch and compared exactly; all others are verified
    untouched, so by induction they still match their recomputation.  The
    combined coloring is checked for properness in full every time, and the
    whole battery runs every ``full_every`` updates.
    """

    def __init__(self, engine: Engine, full_every: int = 0, failed_scan: bool = True, audit: bool = False):
        self.engine = engine
        self.full_every = full_every
        self.failed_scan = failed_scan
        self.audit = audit
        self.checked = 0
        self._versions: dict[int, int] = {}

    def before(self) -> None:
        self._versions = {j: st.version for j, st in self.engine.states.items()}

    def after(self, edge) -> None:
        eng = self.engine
        before = self._versions
        moved = {j for j, st in eng.states.items() if before.get(j) != st.version}
        moved |= set(before) - set(eng.states)
        routed = eng.partition.member.get(edge)
        if routed is not None:
            if eng.randomness[edge].j != routed or eng.rng.sample_partition_index(edge) != routed:
                _fail(f"{edge} routed to {routed}, randomness says otherwise", edge=edge)
        if len(moved) > 1:
            _fail(f"one update touched several subgraphs: {sorted(moved)}", edge=edge)
        for j in moved:
            check_subgraph(eng, j)
            if self.failed_scan:
                check_failed_set(eng, [j])
            if self.audit and j in eng.states:
                problems = eng.states[j].audit()
                if problems:
                    _fail(f"index maps of subgraph {j} inconsistent: {problems}", subgraph=j)
            st = eng.states.get(j)
            if st is not None and not st.failed <= eng.greedy.chi.keys():
                _fail(f"failed edges of subgraph {j} missing from H", subgraph=j)
        if len(eng.greedy) != sum(len(st.failed) for st in eng.states.values()):
            _fail("H size differs from the number of failed edges")
        if len(eng.colors) != eng.graph.num_edges():
            _fail("final coloring does not cover the live edges")
        check_proper(eng)
        self.checked += 1
        if self.full_every and self.checked % self.full_every == 0:
            check_engine(eng)
