"""Small digraphs stored as successor bitmasks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .ground import Mask, bits


@dataclass(frozen=True)
class Digraph:
    """Digraph on the vertex ids set in ``vertices``.

    ``succ[v]`` is the bitmask of out-neighbours of ``v``; it is only
    meaningful for ``v`` in ``vertices`` and never points outside it.
    """

    vertices: Mask
    succ: tuple[Mask, ...]

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]], vertices: Mask | None = None) -> Digraph:
        succ = [0] * n
        for u, v in arcs:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            succ[u] |= 1 << v
        vmask = (1 << n) - 1 if vertices is None else vertices
        for u in range(n):
            if succ[u] and not vmask >> u & 1:
                raise ValueError(f"arc tail {u} is not a vertex")
            if succ[u] & ~vmask:
                raise ValueError(f"arc from {u} leaves the vertex set")
        return cls(vmask, tuple(succ))

    @property
    def size(self) -> int:
        return len(self.succ)

    def vertex_list(self) -> list[int]:
        return list(bits(self.vertices))

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.succ[u] >> v & 1)

    def arcs(self) -> Iterator[tuple[int, int]]:
        for u in bits(self.vertices):
            for v in bits(self.succ[u]):
                yield u, v

    def arc_count(self) -> int:
        return sum(bin(self.succ[u]).count("1") for u in bits(self.vertices))

    def pred(self) -> tuple[Mask, ...]:
        pred = [0] * self.size
        for u, v in self.arcs():
            pred[v] |= 1 << u
        return tuple(pred)

    def reverse(self) -> Digraph:
        return Digraph(self.vertices, self.pred())

    def induced(self, keep: Mask) -> Digraph:
        keep &= self.vertices
        succ = tuple(s & keep if keep >> v & 1 else 0 for v, s in enumerate(self.succ))
        return Digraph(keep, succ)

    def out_neighbors(self, X: Mask) -> Mask:
        """Out-neighbours of ``X`` lying outside ``X``."""
        out = 0
        for v in bits(X):
            out |= self.succ[v]
        return out & ~X


def closure(succ: tuple[Mask, ...], X: Mask) -> Mask:
    seen = X
    frontier = X
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= succ[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def reach(D: Digraph, X: Mask, direction: str = "out") -> Mask:
    """Vertices reachable from ``X`` (``out``) or reaching ``X`` (``in``), including ``X``."""
    if X & ~D.vertices:
        raise ValueError("reach: start set is not a set of vertices")
    if direction == "out":
        return closure(D.succ, X)
    if direction == "in":
        return closure(D.pred(), X)
    raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")


def is_closed(D: Digraph, X: Mask) -> bool:
    """True iff no arc leaves ``X``."""
    for v in bits(X):
        if D.succ[v] & ~X:
            return False
    return True


def is_independent(D: Digraph, X: Mask) -> bool:
    for v in bits(X):
        if D.succ[v] & X:
            return False
    return True
