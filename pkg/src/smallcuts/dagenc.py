"""Closed sets of digraphs without large skew matchings.

A *skew matching* of size l is a sequence of arcs ``(a_1, b_1) .. (a_l, b_l)``
on distinct vertices such that no ``a_i -> b_j`` arc exists for ``i < j`` and
no ``b_i -> a_j`` arc exists for any ``i, j``.  When a DAG has none of size
``l + 1``, every closed set is pinned down by a *marker pair* ``(M1, M2)`` of
at most ``l`` vertices, which yields the encodings produced here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Optional

from .digraph import Digraph, closure, is_closed, is_independent
from .errors import ContractError
from .ground import Mask, bits

__all__ = [
    "ClosedEncoding",
    "Condensation",
    "DagEncoding",
    "MarkerPair",
    "closed_encodings",
    "closed_encodings_dag",
    "condense",
    "extract_skew_matching",
    "find_skew_matching",
    "is_acyclic",
    "is_closed",
    "is_skew_matching",
    "marker_pair_ok",
    "max_skew_matching",
    "minimal_marker",
]

SkewMatching = list[tuple[int, int]]


# --------------------------------------------------------------------------
# Condensation


@dataclass(frozen=True)
class Condensation:
    """Strongly connected components of a digraph, numbered topologically.

    Every arc of ``dag`` goes from a lower component id to a higher one.
    """

    comp_of: dict[int, int]
    dag: Digraph
    members: tuple[Mask, ...]

    def expand(self, comps: Mask) -> Mask:
        out = 0
        for c in bits(comps):
            out |= self.members[c]
        return out


def _closures(D: Digraph) -> tuple[dict[int, Mask], dict[int, Mask]]:
    pred = D.pred()
    outs = {v: closure(D.succ, 1 << v) for v in bits(D.vertices)}
    ins = {v: closure(pred, 1 << v) for v in bits(D.vertices)}
    return outs, ins


def condense(D: Digraph) -> Condensation:
    outs, ins = _closures(D)
    comps: list[Mask] = []
    seen = 0
    for v in bits(D.vertices):
        if not seen >> v & 1:
            c = outs[v] & ins[v]
            comps.append(c)
            seen |= c
    owner = {v: i for i, c in enumerate(comps) for v in bits(c)}
    succ = [0] * len(comps)
    for u, v in D.arcs():
        cu, cv = owner[u], owner[v]
        if cu != cv:
            succ[cu] |= 1 << cv

    # Kahn's algorithm; among available components take the one with the smallest vertex.
    indeg = [0] * len(comps)
    for s in succ:
        for c in bits(s):
            indeg[c] += 1
    ready = [i for i in range(len(comps)) if indeg[i] == 0]
    order: list[int] = []
    while ready:
        ready.sort(key=lambda i: comps[i] & -comps[i])
        i = ready.pop(0)
        order.append(i)
        for c in bits(succ[i]):
            indeg[c] -= 1
            if indeg[c] == 0:
                ready.append(c)
    rank = {old: new for new, old in enumerate(order)}
    members = tuple(comps[old] for old in order)
    new_succ = [0] * len(order)
    for old, s in enumerate(succ):
        for c in bits(s):
            new_succ[rank[old]] |= 1 << rank[c]
    comp_of = {v: rank[c] for v, c in owner.items()}
    return Condensation(comp_of, Digraph((1 << len(order)) - 1, tuple(new_succ)), members)


def is_acyclic(D: Digraph) -> bool:
    outs, ins = _closures(D)
    return all(outs[v] & ins[v] == 1 << v for v in outs)


# --------------------------------------------------------------------------
# Skew matchings


def is_skew_matching(D: Digraph, pairs: SkewMatching) -> bool:
    used = [v for p in pairs for v in p]
    if len(set(used)) != len(used) or any(not D.vertices >> v & 1 for v in used):
        return False
    for i, (a, b) in enumerate(pairs):
        if not D.has_arc(a, b):
            return False
        for j, (a2, b2) in enumerate(pairs):
            if D.has_arc(b, a2):
                return False
            if i < j and D.has_arc(a, b2):
                return False
    return True


def find_skew_matching(D: Digraph, ell: int) -> Optional[SkewMatching]:
    """Exhaustive backtracking search for a skew matching of size ``ell``."""
    if ell <= 0:
        return []
    arcs = [(a, b) for a, b in D.arcs() if not D.has_arc(b, a)]
    if len(arcs) < ell or D.vertices.bit_count() < 2 * ell:
        return None
    # follow[i]: arcs that may come after arc i in a skew matching
    follow = []
    for a, b in arcs:
        ok = 0
        for j, (a2, b2) in enumerate(arcs):
            if len({a, b, a2, b2}) != 4:
                continue
            if D.has_arc(a, b2) or D.has_arc(b, a2) or D.has_arc(b2, a):
                continue
            ok |= 1 << j
        follow.append(ok)

    chosen: list[int] = []

    def search(cand: Mask) -> bool:
        if len(chosen) == ell:
            return True
        if cand.bit_count() < ell - len(chosen):
            return False
        for j in bits(cand):
            chosen.append(j)
            if search(cand & follow[j]):
                return True
            chosen.pop()
        return False

    if search((1 << len(arcs)) - 1):
        return [arcs[j] for j in chosen]
    return None


def max_skew_matching(D: Digraph, cap: int) -> int:
    """Largest skew matching size, searching no further than ``cap``."""
    size = 0
    while size < cap and find_skew_matching(D, size + 1) is not None:
        size += 1
    return size


# --------------------------------------------------------------------------
# Marker pairs


class MarkerPair(NamedTuple):
    M1: Mask
    M2: Mask


def _marker_equations(D: Digraph, R: Digraph, S1: Mask, S2: Mask):
    np1, nm1 = D.out_neighbors(S1), R.out_neighbors(S1)
    np2, nm2 = D.out_neighbors(S2) & ~np1, R.out_neighbors(S2) & ~nm1

    def holds(M: Mask) -> bool:
        m1, m2 = M & S1, M & S2
        return (
            D.out_neighbors(m1) == np1
            and R.out_neighbors(m1) == nm1
            and D.out_neighbors(m2) & ~np1 == np2
            and R.out_neighbors(m2) & ~nm1 == nm2
        )

    return holds


def minimal_marker(D: Digraph, S1: Mask, S2: Mask) -> MarkerPair:
    """Greedy single-deletion-minimal ``M <= S1 | S2`` keeping the four neighbourhood identities.

    The identities are: out- and in-neighbourhoods of ``M & S1`` equal those of
    ``S1``; out- and in-neighbourhoods of ``M & S2`` equal those of ``S2``
    outside the corresponding neighbourhoods of ``S1``.
    """
    if S1 & S2:
        raise ContractError("minimal_marker needs disjoint S1 and S2")
    holds = _marker_equations(D, D.reverse(), S1, S2)
    M = S1 | S2
    for v in bits(S1 | S2):
        if holds(M & ~(1 << v)):
            M &= ~(1 << v)
    return MarkerPair(M & S1, M & S2)


def _short_path(D: Digraph, u: int, targets: Mask, max_len: int) -> Optional[list[int]]:
    """A directed path of length 1..max_len from ``u`` to a vertex of ``targets``."""
    layer = {u: [u]}
    for _ in range(max_len):
        nxt: dict[int, list[int]] = {}
        for v, path in layer.items():
            for w in bits(D.succ[v]):
                if targets >> w & 1 and w != u:
                    return path + [w]
                if w not in nxt:
                    nxt[w] = path + [w]
        layer = nxt
    return None


def extract_skew_matching(D: Digraph, S1: Mask, S2: Mask, marker: MarkerPair) -> SkewMatching:
    """Skew matching of size ``|M1 | M2|`` read off a minimal marker.

    Requires that no two vertices of ``S1 | S2`` are joined by a directed path
    of length at most 3.
    """
    both = S1 | S2
    for u in bits(both):
        path = _short_path(D, u, both, 3)
        if path is not None:
            raise ContractError(f"vertices joined by a short path: {'->'.join(map(str, path))}")
    R = D.reverse()
    M = marker.M1 | marker.M2
    m1, m2 = M & S1, M & S2
    np1, nm1 = D.out_neighbors(S1), R.out_neighbors(S1)
    np2, nm2 = D.out_neighbors(S2) & ~np1, R.out_neighbors(S2) & ~nm1

    part1 = [x for x in bits(M) if D.out_neighbors(m1 & ~(1 << x)) != np1]
    rest = M & ~sum(1 << x for x in part1)
    part2 = [x for x in bits(rest) if D.out_neighbors(m2 & ~(1 << x)) & ~np1 != np2]
    rest &= ~sum(1 << x for x in part2)
    part3 = [x for x in bits(rest) if R.out_neighbors(m2 & ~(1 << x)) & ~nm1 != nm2]
    rest &= ~sum(1 << x for x in part3)
    part4 = [x for x in bits(rest) if R.out_neighbors(m1 & ~(1 << x)) != nm1]
    rest &= ~sum(1 << x for x in part4)
    if rest:
        raise ContractError("marker is not minimal")

    def lowest(mask: Mask) -> int:
        if not mask:
            raise ContractError("marker does not satisfy the neighbourhood identities")
        return (mask & -mask).bit_length() - 1

    pairs: SkewMatching = []
    for a in part1:
        pairs.append((a, lowest(np1 & ~D.out_neighbors(m1 & ~(1 << a)))))
    for a in part2:
        pairs.append((a, lowest(np2 & ~D.out_neighbors(m2 & ~(1 << a)))))
    for b in part3:
        pairs.append((lowest(nm2 & ~R.out_neighbors(m2 & ~(1 << b))), b))
    for b in part4:
        pairs.append((lowest(nm1 & ~R.out_neighbors(m1 & ~(1 << b))), b))
    if not is_skew_matching(D, pairs):
        raise ContractError(f"constructed pairs {pairs} are not a skew matching")
    return pairs


def marker_pair_ok(D: Digraph, M1: Mask, M2: Mask, ell: int) -> bool:
    """Filter applied to candidate marker pairs of an acyclic ``D``."""
    if M1 & M2 or (M1 | M2).bit_count() > ell:
        return False
    out1 = closure(D.succ, M1)
    if out1 & M2:
        return False
    pred = D.pred()
    U = out1 | closure(pred, M1) | closure(pred, M2)
    return is_independent(D, M1 | M2 | (D.vertices & ~U))


# --------------------------------------------------------------------------
# Encodings of closed sets


class DagEncoding(NamedTuple):
    X: Mask
    Y: Mask
    M1: Mask
    M2: Mask


class ClosedEncoding(NamedTuple):
    X: Mask
    Y: Mask
    P: tuple[Mask, ...]
    M1: Mask
    M2: Mask


def _independent(succ: tuple[Mask, ...], X: Mask) -> bool:
    return not any(succ[v] & X for v in bits(X))


def closed_encodings_dag(D: Digraph, ell: int) -> list[DagEncoding]:
    """Pairs ``(X, Y)`` covering all closed sets of the DAG ``D``.

    For every listed pair, ``X | U`` is closed for each ``U`` avoiding
    ``X | Y``.  If ``D`` has no skew matching of size ``ell + 1``, every closed
    set ``K`` satisfies ``K & (X | Y) == X`` for some listed pair.
    """
    outs, ins = _closures(D)
    if any(outs[v] & ins[v] != 1 << v for v in outs):
        raise ContractError("closed_encodings_dag needs an acyclic digraph")
    succ = D.succ
    verts = list(bits(D.vertices))
    V = D.vertices
    seen: set[tuple[Mask, Mask]] = set()
    result: list[DagEncoding] = []
    for size in range(min(ell, len(verts)) + 1):
        for chosen in combinations(verts, size):
            M = sum(1 << v for v in chosen)
            if not _independent(succ, M):
                continue
            for sub in range(1 << size):
                M1 = M2 = out1 = in1 = in2 = 0
                for i, v in enumerate(chosen):
                    if sub >> i & 1:
                        M1 |= 1 << v
                        out1 |= outs[v]
                        in1 |= ins[v]
                    else:
                        M2 |= 1 << v
                        in2 |= ins[v]
                if out1 & M2:
                    continue
                indep = M | (V & ~(out1 | in1 | in2))
                if not _independent(succ, indep):
                    continue
                X, Y = out1, (in1 | in2) & ~M1
                if (X, Y) not in seen:
                    seen.add((X, Y))
                    result.append(DagEncoding(X, Y, M1, M2))
    return result


def closed_encodings(D: Digraph, ell: int) -> list[ClosedEncoding]:
    """Triples ``(X, Y, P)`` covering the closed sets of an arbitrary digraph.

    ``P`` lists the strongly connected components outside ``X | Y``, ordered by
    smallest member; any union of them added to ``X`` is closed.
    """
    C = condense(D)
    result = []
    for enc in closed_encodings_dag(C.dag, ell):
        rest = C.dag.vertices & ~(enc.X | enc.Y)
        P = tuple(sorted((C.members[c] for c in bits(rest)), key=lambda m: m & -m))
        result.append(
            ClosedEncoding(C.expand(enc.X), C.expand(enc.Y), P, C.expand(enc.M1), C.expand(enc.M2))
        )
    return result
