"""Nibble tentative coloring: one-shot pass and dynamic change propagation.

The dynamic updates keep every color index equal to what the static pass
would compute on the current graph with the same per-edge randomness.  A
change to an edge of round ``i`` can only affect edges of later rounds whose
color sequence contains the old or the new color, and ``psi`` indexes
exactly those, so propagation walks the rounds once, front to back.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .errors import MissingEdge
from .graph import Edge
from .palette_ds import BOTTOM, PaletteState


@dataclass
class DirtySet:
    """Edges whose tentative color changed during one update.

    ``prev`` maps each dirty edge to its tentative color before the update
    (0 when it was uncolored or absent).  ``candidates`` keeps, per round,
    the edges that were re-examined, for instrumentation.
    """

    changed: dict[Edge, int] = field(default_factory=dict)
    prev: dict[Edge, int] = field(default_factory=dict)
    candidates: dict[int, set[Edge]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.changed)

    def __contains__(self, e) -> bool:
        return e in self.changed

    def edges(self) -> set[Edge]:
        return set(self.changed)


def static_nibble(
    edges: Iterable[Edge],
    randomness: Mapping[Edge, tuple[int, tuple[int, ...]]],
    T: int,
    K: int,
    palette_size: int,
    shuffle: Optional[random.Random] = None,
) -> PaletteState:
    """Tentatively color ``edges`` round by round.

    ``randomness[e]`` is ``(round, color_sequence)``.  ``shuffle``, if given,
    permutes the processing order inside each round; the result must not
    depend on it.
    """
    state = PaletteState(T, K, palette_size)
    by_round: list[list[Edge]] = [[] for _ in range(T + 2)]
    for e in edges:
        i, c = randomness[e]
        state.ds_insert(e, i, c)
        by_round[i].append(e)
    state.static_mode = True
    try:
        for i in range(1, T + 1):
            batch = by_round[i]
            if shuffle is not None:
                batch = list(batch)
                shuffle.shuffle(batch)
            for e in batch:
                state.reset_color(e)
    finally:
        state.static_mode = False
    return state


def propagate_changes(state: PaletteState, dirty: DirtySet, start_round: int) -> DirtySet:
    """Re-examine later rounds after the edges in ``dirty`` changed color."""
    psi = state.psi
    frontier = list(dirty.changed)
    for i in range(start_round + 1, state.T + 1):
        if not frontier:
            break
        cand: set[Edge] = set()
        for e in frontier:
            u, v = e
            now = state.color_query(e) if e in state.round else BOTTOM
            for c in (now, dirty.prev[e]):
                if c == BOTTOM:
                    continue
                s = psi.get((u, i, c))
                if s:
                    cand |= s
                s = psi.get((v, i, c))
                if s:
                    cand |= s
        if not cand:
            continue
        dirty.candidates[i] = cand
        prev_here = {f: state.color_query(f) for f in cand}
        for f in sorted(cand):
            if state.reset_color(f) is not None:
                dirty.prev[f] = prev_here[f]
                dirty.changed[f] = state.color_query(f)
                frontier.append(f)
    return dirty


def insertion_update(state: PaletteState, e: Edge, i: int, c) -> DirtySet:
    state.ds_insert(e, i, c)
    dirty = DirtySet()
    if state.reset_color(e) is not None:
        dirty.prev[e] = BOTTOM
        dirty.changed[e] = state.color_query(e)
        propagate_changes(state, dirty, i)
    return dirty


def deletion_update(state: PaletteState, e: Edge) -> DirtySet:
    if e not in state.round:
        raise MissingEdge(e)
    prev = state.color_query(e)
    i = state.round[e]
    state.ds_delete(e)
    dirty = DirtySet()
    if prev != BOTTOM:
        dirty.prev[e] = prev
        dirty.changed[e] = BOTTOM
        propagate_changes(state, dirty, i)
    return dirty
