"""Tentative-coloring state for one subgraph.

Each edge carries a round ``i_e``, a color sequence ``c_e`` (K entries,
1-based palette colors) and a color index ``ell_e``; its tentative color is
``c_e[ell_e]`` with index 0 standing for "uncolored" (color 0).  Three index
maps make the dynamic updates cheap:

* ``phi[(u, i, c)]``  edges at ``u`` of round ``i`` whose tentative color is ``c``
* ``psi[(u, i, c)]``  edges at ``u`` of round ``i`` whose sequence contains ``c``
* ``phi_prime[(u, c)]`` number of edges at ``u`` with tentative color ``c``

Empty sets are removed, so key presence means non-empty.  The failed set
holds every uncolored edge and every edge sharing its tentative color with a
same-round neighbor.
"""

from __future__ import annotations

from typing import Optional

from .errors import DuplicateEdge, IndexOutOfRange, MissingEdge
from .graph import Edge

BOTTOM = 0


def _first_occurrences(seq) -> tuple[tuple[int, int], ...]:
    seen = set()
    out = []
    for pos, c in enumerate(seq, 1):
        if c not in seen:
            seen.add(c)
            out.append((pos, c))
    return tuple(out)


class PaletteState:
    def __init__(self, T: int, K: int, palette_size: int):
        self.T = T
        self.K = K
        self.palette_size = palette_size
        self.round: dict[Edge, int] = {}
        self.colorseq: dict[Edge, tuple[int, ...]] = {}
        self.colorindex: dict[Edge, int] = {}
        self.failed: set[Edge] = set()
        self.phi: dict[tuple[int, int, int], set[Edge]] = {}
        self.psi: dict[tuple[int, int, int], set[Edge]] = {}
        self.phi_prime: dict[tuple[int, int], int] = {}
        # (ell, color) for the first position of every distinct color in c_e
        self._first: dict[Edge, tuple[tuple[int, int], ...]] = {}
        # failed-set membership changes, drained by the engine
        self.transitions: list[tuple[Edge, bool]] = []
        # static fast path: valid only while no edge of a later round is colored
        self.static_mode = False
        self.version = 0

    def __len__(self) -> int:
        return len(self.round)

    def __contains__(self, e) -> bool:
        return e in self.round

    def edges(self):
        return self.round.keys()

    def _require(self, e: Edge) -> None:
        if e not in self.round:
            raise MissingEdge(e)

    # -- failed set ---------------------------------------------------------

    def _mark(self, e: Edge, failed: bool) -> None:
        if failed:
            if e not in self.failed:
                self.failed.add(e)
                self.transitions.append((e, True))
        elif e in self.failed:
            self.failed.discard(e)
            self.transitions.append((e, False))

    def _fails(self, f: Edge) -> bool:
        c = self.color_query(f)
        if c == BOTTOM:
            return True
        i = self.round[f]
        phi = self.phi
        u, v = f
        return len(phi.get((u, i, c), ())) > 1 or len(phi.get((v, i, c), ())) > 1

    def drain_transitions(self) -> list[tuple[Edge, bool]]:
        out = self.transitions
        self.transitions = []
        return out

    # -- updates ------------------------------------------------------------

    def ds_insert(self, e: Edge, i: int, c) -> None:
        if e in self.round:
            raise DuplicateEdge(e)
        if not 1 <= i <= self.T + 1:
            raise IndexOutOfRange(f"round {i} outside [1, {self.T + 1}]")
        c = tuple(c)
        if len(c) != self.K:
            raise ValueError(f"color sequence has {len(c)} entries, expected {self.K}")
        self.round[e] = i
        self.colorseq[e] = c
        self.colorindex[e] = 0
        first = _first_occurrences(c)
        self._first[e] = first
        self._mark(e, True)
        if i <= self.T:
            psi = self.psi
            u, v = e
            for _, col in first:
                for x in (u, v):
                    key = (x, i, col)
                    s = psi.get(key)
                    if s is None:
                        psi[key] = {e}
                    else:
                        s.add(e)
        self.version += 1

    def ds_delete(self, e: Edge) -> None:
        self._require(e)
        self.set_color_index(e, 0)
        i = self.round.pop(e)
        del self.colorseq[e]
        del self.colorindex[e]
        first = self._first.pop(e)
        self._mark(e, False)
        if i <= self.T:
            psi = self.psi
            u, v = e
            for _, col in first:
                for x in (u, v):
                    key = (x, i, col)
                    s = psi[key]
                    s.discard(e)
                    if not s:
                        del psi[key]
        self.version += 1

    def _phi_remove(self, x: int, i: int, c: int, e: Edge) -> None:
        key = (x, i, c)
        s = self.phi[key]
        s.discard(e)
        if not s:
            del self.phi[key]
        pk = (x, c)
        left = self.phi_prime[pk] - 1
        if left:
            self.phi_prime[pk] = left
        else:
            del self.phi_prime[pk]

    def _phi_add(self, x: int, i: int, c: int, e: Edge) -> None:
        key = (x, i, c)
        s = self.phi.get(key)
        if s is None:
            self.phi[key] = {e}
        else:
            s.add(e)
        pk = (x, c)
        self.phi_prime[pk] = self.phi_prime.get(pk, 0) + 1

    def set_color_index(self, e: Edge, ell: int) -> None:
        self._require(e)
        if not 0 <= ell <= self.K:
            raise IndexOutOfRange(f"color index {ell} outside [0, {self.K}]")
        old = self.colorindex[e]
        if ell == old:
            return
        i = self.round[e]
        if i > self.T and ell != 0:
            raise IndexOutOfRange(f"edge {e} has round {i} > T and stays uncolored")
        u, v = e
        c_prev = self.colorseq[e][old - 1] if old else BOTTOM
        self.colorindex[e] = ell
        c = self.colorseq[e][ell - 1] if ell else BOTTOM
        if c_prev != BOTTOM:
            self._phi_remove(u, i, c_prev, e)
            self._phi_remove(v, i, c_prev, e)
        if c != BOTTOM:
            self._phi_add(u, i, c, e)
            self._phi_add(v, i, c, e)

        # Only e, up to two new partners sharing c and up to two former
        # partners left alone on c_prev can change failed-set membership.
        candidates = {e}
        phi = self.phi
        if c != BOTTOM:
            for x in (u, v):
                s = phi.get((x, i, c))
                if s is not None and len(s) == 2:
                    candidates |= s
        if c_prev != BOTTOM:
            for x in (u, v):
                s = phi.get((x, i, c_prev))
                if s is not None and len(s) == 1:
                    candidates |= s
        for f in candidates:
            self._mark(f, self._fails(f))
        self.version += 1

    def reset_color(self, e: Edge) -> Optional[Edge]:
        """Move ``e`` to the first sequence position free in its palette.

        Returns ``e`` if its color index changed, else ``None``.
        """
        self._require(e)
        i = self.round[e]
        if i > self.T:
            return None
        old = self.colorindex[e]
        new = 0
        for ell, col in self._first[e]:
            if self.edge_palette_query(e, i, col):
                new = ell
                break
        if new == old:
            return None
        self.set_color_index(e, new)
        return e

    # -- queries ------------------------------------------------------------

    def node_palette_query(self, u: int, i: int, c: int) -> bool:
        """Is ``c`` unused by edges at ``u`` of rounds before ``i``?"""
        if self.static_mode:
            return self.phi_prime.get((u, c), 0) == len(self.phi.get((u, i, c), ()))
        phi = self.phi
        for r in range(1, i):
            if (u, r, c) in phi:
                return False
        return True

    def edge_palette_query(self, e: Edge, i: int, c: int) -> bool:
        u, v = e
        return self.node_palette_query(u, i, c) and self.node_palette_query(v, i, c)

    def failed_edge_query(self, e: Edge) -> bool:
        self._require(e)
        return e in self.failed

    def color_query(self, e: Edge) -> int:
        ell = self.colorindex[e]
        return self.colorseq[e][ell - 1] if ell else BOTTOM

    def tentative_colors(self) -> dict[Edge, int]:
        return {e: self.color_query(e) for e in self.round}

    # -- audit --------------------------------------------------------------

    def audit(self) -> list[str]:
        """Rebuild every index from the per-edge fields and list mismatches."""
        phi: dict = {}
        psi: dict = {}
        phi_prime: dict = {}
        for e, i in self.round.items():
            c = self.color_query(e)
            for x in e:
                if c != BOTTOM:
                    phi.setdefault((x, i, c), set()).add(e)
                    phi_prime[(x, c)] = phi_prime.get((x, c), 0) + 1
                if i <= self.T:
                    for col in set(self.colorseq[e]):
                        psi.setdefault((x, i, col), set()).add(e)
        failed = {
            e
            for e in self.round
            if self.color_query(e) == BOTTOM
            or any(len(phi.get((x, self.round[e], self.color_query(e)), ())) > 1 for x in e)
        }
        problems = []
        if phi != self.phi:
            problems.append("phi")
        if psi != self.psi:
            problems.append("psi")
        if phi_prime != self.phi_prime:
            problems.append("phi_prime")
        if failed != self.failed:
            problems.append("failed")
        return problems

    def snapshot(self) -> tuple:
        """Hashable copy of the observable state, for round-trip checks."""
        return (
            tuple(sorted(self.round.items())),
            tuple(sorted(self.colorindex.items())),
            tuple(sorted(self.colorseq.items())),
            frozenset(self.failed),
            tuple(sorted((k, frozenset(v)) for k, v in self.phi.items())),
            tuple(sorted((k, frozenset(v)) for k, v in self.psi.items())),
            tuple(sorted(self.phi_prime.items())),
        )
