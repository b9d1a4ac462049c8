"""Blocking digraphs of a disjoint pair ``(S, T)``.

Vertices are the free ground elements ``V - (S | T)`` plus two virtual
vertices: ``src = n`` standing for S and ``snk = n + 1`` standing for T.
An arc ``x -> y`` records that putting ``x`` on the S side and ``y`` on the T
side raises ``fstar`` above its value at ``(S, T)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph, reach
from .errors import ContractError
from .ground import Mask, bits
from .interpolation import FStar

__all__ = [
    "BlockDigraph",
    "PrunedDigraph",
    "build_blocking",
    "lemma_digraph_check",
    "prune",
    "reach",
]


@dataclass(frozen=True)
class BlockDigraph:
    S: Mask
    T: Mask
    base_value: int
    n: int
    digraph: Digraph

    @property
    def src(self) -> int:
        return self.n

    @property
    def snk(self) -> int:
        return self.n + 1

    @property
    def ground_vertices(self) -> Mask:
        return self.digraph.vertices & ((1 << self.n) - 1)

    def ground_arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in self.digraph.arcs() if u < self.n and v < self.n]


@dataclass(frozen=True)
class PrunedDigraph:
    """What is left of a blocking digraph once forced vertices are removed.

    ``conflict`` is set when some vertex is both reachable from ``src`` and
    reaches ``snk``: then no X with ``S <= X <= V - T`` attains the base value.
    """

    block: BlockDigraph
    kept: Mask
    forced_in: Mask
    forced_out: Mask
    digraph: Digraph
    conflict: bool


def build_blocking(F: FStar, S: Mask, T: Mask) -> BlockDigraph:
    if S & T:
        raise ContractError("build_blocking needs disjoint S and T")
    n = F.n
    k = F(S, T)
    free = F.ground.full & ~(S | T)
    src, snk = n, n + 1
    succ = [0] * (n + 2)
    free_list = list(bits(free))
    for x in free_list:
        bx = 1 << x
        if F(S, T | bx) > k:
            succ[src] |= bx
        if F(S | bx, T) > k:
            succ[x] |= 1 << snk
        for y in free_list:
            if y != x and F(S | bx, T | (1 << y)) > k:
                succ[x] |= 1 << y
    vertices = free | (1 << src) | (1 << snk)
    return BlockDigraph(S, T, k, n, Digraph(vertices, tuple(succ)))


def lemma_digraph_check(
    F: FStar, S: Mask, T: Mask, A: Mask, B: Mask, D: BlockDigraph | None = None
) -> tuple[bool, bool]:
    """Both sides of the blocking-digraph equivalence for the quadruple ``(S, T, A, B)``.

    ``lhs``: ``fstar(S | A, T | B) == fstar(S, T)``.
    ``rhs``: no arc from ``A + src`` to ``B + snk``.
    """
    if S & T or S & A or S & B or T & A or T & B or A & B:
        raise ContractError("lemma_digraph_check needs pairwise disjoint S, T, A, B")
    if D is None:
        D = build_blocking(F, S, T)
    lhs = F(S | A, T | B) == D.base_value
    heads = B | (1 << D.snk)
    succ = D.digraph.succ
    rhs = not any(succ[v] & heads for v in bits(A | (1 << D.src)))
    return lhs, rhs


def prune(D: BlockDigraph) -> PrunedDigraph:
    g = D.digraph
    forced_in = reach(g, 1 << D.src, "out") & ~(1 << D.src)
    forced_out = reach(g, 1 << D.snk, "in") & ~(1 << D.snk)
    conflict = bool(forced_in & forced_out)
    ground = D.ground_vertices
    forced_in &= ground
    forced_out &= ground
    kept = ground & ~(forced_in | forced_out)
    return PrunedDigraph(D, kept, forced_in, forced_out, g.induced(kept), conflict)

