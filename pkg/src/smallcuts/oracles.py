"""Connectivity functions: edge cut, cut-rank, vertex cut, matroid connectivity.

Every oracle is an integer-valued function on subsets of its ground set.  The
:class:`ConnectivityFn` wrapper memoizes evaluations so callers can count the
number of *distinct* subsets that were ever evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import InputError
from .ground import GroundSet, Mask, bits, full_mask

BatchFn = Callable[[np.ndarray], np.ndarray]


# --------------------------------------------------------------------------
# GF(2) linear algebra on int bitsets


@dataclass(frozen=True)
class Gf2Matrix:
    """A 0-1 matrix over GF(2); ``rows[i]`` has bit ``j`` set iff entry (i, j) is 1."""

    n_rows: int
    n_cols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.n_rows:
            raise InputError(f"expected {self.n_rows} rows, got {len(self.rows)}")
        limit = 1 << self.n_cols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise InputError(f"row {r:#b} is wider than {self.n_cols} columns")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> Gf2Matrix:
        n_cols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != n_cols:
                raise InputError("ragged matrix")
            rows.append(sum(1 << j for j, v in enumerate(row) if v & 1))
        return cls(len(entries), n_cols, tuple(rows))

    def columns(self) -> list[int]:
        """Column vectors as bitsets over the row index."""
        cols = [0] * self.n_cols
        for i, row in enumerate(self.rows):
            for j in bits(row):
                cols[j] |= 1 << i
        return cols


def rank_of_vectors(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of a family of bit vectors (xor basis keyed by leading bit)."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            lead = v.bit_length() - 1
            b = basis.get(lead)
            if b is None:
                basis[lead] = v
                break
            v ^= b
    return len(basis)


def rank_gf2(m: Gf2Matrix) -> int:
    return rank_of_vectors(m.rows)


# --------------------------------------------------------------------------
# Graphs


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph on a labelled vertex set.

    ``edge_names`` labels the edges when the graph is used as the ground set of
    the vertex-cut function; it defaults to ``e0, e1, ...``.
    """

    vertices: GroundSet
    edges: tuple[tuple[int, int], ...]
    edge_names: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        n = self.vertices.n
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            if u == v:
                raise InputError(f"self-loop at {self.vertices.names[u]}")
        if self.edge_names is not None and len(self.edge_names) != len(self.edges):
            raise InputError("edge_names must label every edge")

    @classmethod
    def from_edges(cls, labels: Sequence[str], pairs: Iterable[tuple[str, str]]) -> Graph:
        ground = GroundSet(tuple(labels))
        return cls(ground, tuple((ground.index(u), ground.index(v)) for u, v in pairs))

    @property
    def n(self) -> int:
        return self.vertices.n

    def adjacency(self) -> list[int]:
        """Boolean adjacency rows as bitsets; parallel edges collapse."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def edge_ground(self) -> GroundSet:
        names = self.edge_names or tuple(f"e{i}" for i in range(len(self.edges)))
        return GroundSet(names)


# --------------------------------------------------------------------------
# The oracle wrapper


class ConnectivityFn:
    """Memoizing evaluation oracle ``X -> f(X)`` over a ground set.

    ``batch`` is an optional vectorized evaluator over an array of masks; when
    present it is used to build the full value table in one pass.
    """

    def __init__(
        self,
        ground: GroundSet,
        func: Callable[[Mask], int],
        kind: str,
        batch: Optional[BatchFn] = None,
    ) -> None:
        self.ground = ground
        self.kind = kind
        self._func = func
        self._batch = batch
        self._memo: dict[Mask, int] = {}
        self._table: Optional[np.ndarray] = None

    def __repr__(self) -> str:
        return f"ConnectivityFn(kind={self.kind!r}, n={self.n})"

    @property
    def n(self) -> int:
        return self.ground.n

    def __call__(self, mask: Mask) -> int:
        if self._table is not None:
            return int(self._table[mask])
        value = self._memo.get(mask)
        if value is None:
            value = int(self._func(mask))
            self._memo[mask] = value
        return value

    @property
    def evaluations(self) -> int:
        """Number of distinct subsets evaluated so far."""
        if self._table is not None:
            return len(self._table)
        return len(self._memo)

    def table(self) -> np.ndarray:
        """Values on all ``2**n`` subsets, indexed by mask (built once)."""
        if self._table is None:
            size = 1 << self.n
            if self._batch is not None:
                table = np.asarray(self._batch(np.arange(size, dtype=np.int64)), dtype=np.int64)
            else:
                table = np.fromiter(
                    (self._memo[m] if m in self._memo else self._func(m) for m in range(size)),
                    dtype=np.int64,
                    count=size,
                )
            self._table = table
            self._memo.clear()
        return self._table

    def eval_many(self, masks: np.ndarray) -> np.ndarray:
        return self.table()[masks]


# --------------------------------------------------------------------------
# Concrete families


def edge_cut_oracle(g: Graph) -> ConnectivityFn:
    """Number of edges with exactly one end in X (parallel edges counted)."""
    edges = g.edges

    def func(mask: Mask) -> int:
        return sum(((mask >> u) ^ (mask >> v)) & 1 for u, v in edges)

    def batch(masks: np.ndarray) -> np.ndarray:
        out = np.zeros(masks.shape, dtype=np.int64)
        for u, v in edges:
            out += ((masks >> u) ^ (masks >> v)) & 1
        return out

    return ConnectivityFn(g.vertices, func, "edgecut", batch)


def cut_rank_oracle(g: Graph) -> ConnectivityFn:
    """GF(2) rank of the adjacency submatrix with rows X and columns V - X."""
    adj = g.adjacency()
    full = full_mask(g.n)

    def func(mask: Mask) -> int:
        outside = full & ~mask
        return rank_of_vectors(adj[i] & outside for i in bits(mask))

    return ConnectivityFn(g.vertices, func, "cutrank")


def vertex_cut_oracle(g: Graph) -> ConnectivityFn:
    """On the edge set: vertices incident with an edge in X and an edge outside X."""
    incident = [0] * g.n
    for e, (u, v) in enumerate(g.edges):
        incident[u] |= 1 << e
        incident[v] |= 1 << e
    incident = [m for m in incident if m]

    def func(mask: Mask) -> int:
        return sum(1 for inc in incident if mask & inc and (mask & inc) != inc)

    def batch(masks: np.ndarray) -> np.ndarray:
        out = np.zeros(masks.shape, dtype=np.int64)
        for inc in incident:
            hit = masks & inc
            out += (hit != 0) & (hit != inc)
        return out

    return ConnectivityFn(g.edge_ground(), func, "vertexcut", batch)


def matroid_connectivity_oracle(m: Gf2Matrix, ground: Optional[GroundSet] = None) -> ConnectivityFn:
    """``r(X) + r(E - X) - r(E)`` for the column matroid of ``m`` over GF(2).

    Columns are labelled ``1 .. c`` unless ``ground`` is given.
    """
    cols = m.columns()
    if ground is None:
        ground = GroundSet(tuple(str(j + 1) for j in range(m.n_cols)))
    if ground.n != m.n_cols:
        raise InputError("ground set size must equal the number of columns")
    full = full_mask(m.n_cols)
    total = rank_of_vectors(cols)

    def rank(mask: Mask) -> int:
        return rank_of_vectors(cols[j] for j in bits(mask))

    def func(mask: Mask) -> int:
        return rank(mask) + rank(full & ~mask) - total

    return ConnectivityFn(ground, func, "matroid")


def table_oracle(ground: GroundSet, table: Mapping[Mask, int]) -> ConnectivityFn:
    """Oracle reading ``table`` verbatim; axioms are *not* checked here."""
    values = np.empty(1 << ground.n, dtype=np.int64)
    for m in range(1 << ground.n):
        try:
            values[m] = int(table[m])
        except KeyError:
            raise InputError(f"table has no entry for subset {{{ground.format(m)}}}") from None

    return ConnectivityFn(ground, lambda mask: int(values[mask]), "table", lambda ms: values[ms])


# --------------------------------------------------------------------------
# Axiom checking


@dataclass
class AxiomReport:
    ok: bool
    axiom: Optional[str] = None
    witness: tuple[Mask, ...] = field(default_factory=tuple)
    checked: int = 0

    def describe(self, ground: GroundSet) -> str:
        if self.ok:
            return "all axioms hold"
        sets = " ".join("{" + ground.format(w) + "}" for w in self.witness)
        return f"{self.axiom} violated at {sets}"


def check_axioms(f: ConnectivityFn) -> AxiomReport:
    """Exhaustively check f(empty) = 0, symmetry and submodularity.

    Submodularity is tested in its local form
    ``f(Z+a) + f(Z+b) >= f(Z+a+b) + f(Z)`` which is equivalent to the global one;
    a violation is reported as the pair ``(Z+a, Z+b)``.
    """
    n = f.n
    vals = f.table()
    size = 1 << n
    full = size - 1
    if vals[0] != 0:
        return AxiomReport(False, "empty", (0,), 1)
    masks = np.arange(size, dtype=np.int64)
    bad = np.nonzero(vals != vals[full ^ masks])[0]
    if bad.size:
        x = int(bad[0])
        return AxiomReport(False, "symmetric", (x, full ^ x), size)
    checked = 0
    for a in range(n):
        for b in range(a + 1, n):
            base = masks[((masks >> a) & 1 == 0) & ((masks >> b) & 1 == 0)]
            xa, xb = base | (1 << a), base | (1 << b)
            lhs = vals[xa] + vals[xb]
            rhs = vals[xa | xb] + vals[base]
            checked += base.size
            viol = np.nonzero(lhs < rhs)[0]
            if viol.size:
                i = viol[0]
                return AxiomReport(False, "submodular", (int(xa[i]), int(xb[i])), checked)
    return AxiomReport(True, checked=size + checked)
