"""Seeded random instances for fuzzing and verification."""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np

from .digraph import Digraph
from .ground import GroundSet
from .oracles import Gf2Matrix, Graph


def _labels(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(chr(ord("a") + i) for i in range(n))
    return tuple(f"v{i}" for i in range(n))


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    edges = tuple((u, v) for u, v in combinations(range(n), 2) if rng.random() < p)
    return Graph(GroundSet(_labels(n)), edges)


def random_gf2_matrix(rows: int, cols: int, density: float, seed: int) -> Gf2Matrix:
    rng = np.random.default_rng(seed)
    bits = rng.random((rows, cols)) < density
    return Gf2Matrix.from_lists(bits.astype(int).tolist())


def random_digraph(n: int, p: float, seed: int) -> Digraph:
    rng = np.random.default_rng(seed)
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return Digraph.from_arcs(n, arcs)


def random_dag(n: int, p: float, seed: int) -> Digraph:
    """Random DAG whose arcs all go from a lower to a higher vertex id."""
    rng = np.random.default_rng(seed)
    arcs = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Digraph.from_arcs(n, arcs)


def all_graphs(n: int) -> list[Graph]:
    """One graph per isomorphism class on ``n`` vertices (brute-force canonical form)."""
    pairs = list(combinations(range(n), 2))
    index = {pq: i for i, pq in enumerate(pairs)}
    perms = list(permutations(range(n)))
    relabel = [
        [index[tuple(sorted((perm[u], perm[v])))] for u, v in pairs] for perm in perms
    ]
    seen: set[int] = set()
    graphs = []
    for code in range(1 << len(pairs)):
        canon = min(
            sum(1 << target[i] for i in range(len(pairs)) if code >> i & 1) for target in relabel
        )
        if canon in seen:
            continue
        seen.add(canon)
        edges = tuple(pairs[i] for i in range(len(pairs)) if canon >> i & 1)
        graphs.append(Graph(GroundSet(_labels(n)), edges))
    return graphs
