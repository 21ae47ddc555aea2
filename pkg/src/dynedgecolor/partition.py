"""Random split of the live edge set into ``eta`` subgraphs on a shared node set."""

from __future__ import annotations

from .errors import DuplicateEdge, MissingEdge
from .graph import DynGraph, Edge


class PartitionState:
    """Edge -> subgraph index, with one ``DynGraph`` per non-empty subgraph.

    Subgraph ``j`` owns global colors ``(j-1)*palette + 1 .. j*palette``.
    Subgraphs are created lazily: ``eta`` can be astronomically large.
    """

    def __init__(self, n: int, eta: int, palette_size: int):
        self.n = n
        self.eta = eta
        self.palette_size = palette_size
        self.member: dict[Edge, int] = {}
        self.subgraphs: dict[int, DynGraph] = {}

    def route_insert(self, e: Edge, j: int) -> int:
        if e in self.member:
            raise DuplicateEdge(e)
        if not 1 <= j <= self.eta:
            raise ValueError(f"subgraph index {j} outside [1, {self.eta}]")
        g = self.subgraphs.get(j)
        if g is None:
            g = self.subgraphs[j] = DynGraph(self.n)
        g.insert_edge(*e)
        self.member[e] = j
        return j

    def route_delete(self, e: Edge) -> int:
        j = self.member.pop(e, None)
        if j is None:
            raise MissingEdge(e)
        g = self.subgraphs[j]
        g.delete_edge(*e)
        if len(g) == 0:
            del self.subgraphs[j]
        return j

    def subgraph_of(self, e: Edge) -> int:
        try:
            return self.member[e]
        except KeyError:
            raise MissingEdge(e) from None

    def color_offset(self, j: int) -> int:
        return (j - 1) * self.palette_size

    def edges_of(self, j: int) -> list[Edge]:
        g = self.subgraphs.get(j)
        return [] if g is None else list(g.edges())
