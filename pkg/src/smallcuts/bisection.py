"""Cardinality-constrained search over the sets of a given value.

For every triple of the representation, a subset-sum table decides which
values of ``|A & W|`` are reachable by adding classes to ``X``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Optional

from .encoder import Representation, encode
from .errors import InputError
from .ground import Mask, popcount
from .interpolation import FStar
from .oracles import ConnectivityFn
from .sfm import EXHAUSTIVE, SfmBackend


@dataclass(frozen=True)
class CardinalityQuery:
    window: Mask
    targets: frozenset[int]
    k: int
    mode: str = "exact"

    def __post_init__(self) -> None:
        if self.k < 0:
            raise InputError("k must be non-negative")
        if self.mode not in ("exact", "at_most"):
            raise InputError(f"mode must be 'exact' or 'at_most', got {self.mode!r}")

    @classmethod
    def make(cls, window: Mask, targets: Iterable[int], k: int, mode: str = "exact") -> CardinalityQuery:
        """Build a query, dropping targets outside ``0 .. |window|`` with a warning."""
        width = popcount(window)
        targets = set(targets)
        kept = {t for t in targets if 0 <= t <= width}
        if kept != targets:
            warnings.warn(
                f"ignoring targets {sorted(targets - kept)} outside 0..{width}", stacklevel=2
            )
        return cls(window, frozenset(kept), k, mode)


@dataclass(frozen=True)
class DpTable:
    """``rows[j][t]`` is ``None`` or a tuple of 1-based class indices summing to ``t``."""

    s0: int
    sizes: tuple[int, ...]
    rows: tuple[tuple[Optional[tuple[int, ...]], ...], ...]

    def witness(self, t: int, j: Optional[int] = None) -> Optional[tuple[int, ...]]:
        row = self.rows[len(self.sizes) if j is None else j]
        if 0 <= t < len(row):
            return row[t]
        return None

    def reachable(self, j: Optional[int] = None) -> set[int]:
        row = self.rows[len(self.sizes) if j is None else j]
        return {t for t, w in enumerate(row) if w is not None}


def dp_subset_sum(s0: int, sizes: Iterable[int], max_t: int) -> DpTable:
    """Reachable totals ``s0 + sum(subset of sizes)`` up to ``max_t``, with witnesses.

    A cell keeps the previous row's witness when there is one and only
    otherwise extends ``t - s_j``.
    """
    sizes = tuple(sizes)
    if s0 < 0 or max_t < 0 or any(s < 0 for s in sizes):
        raise InputError("dp_subset_sum needs non-negative inputs")
    row: list[Optional[tuple[int, ...]]] = [None] * (max_t + 1)
    if s0 <= max_t:
        row[s0] = ()
    rows = [tuple(row)]
    for j, s in enumerate(sizes, start=1):
        prev = rows[-1]
        cur: list[Optional[tuple[int, ...]]] = []
        for t in range(max_t + 1):
            if prev[t] is not None:
                cur.append(prev[t])
            elif t >= s and prev[t - s] is not None:
                cur.append(prev[t - s] + (j,))
            else:
                cur.append(None)
        rows.append(tuple(cur))
    return DpTable(s0, sizes, tuple(rows))


def search_representation(rep: Representation, window: Mask, targets: Iterable[int]) -> Optional[Mask]:
    """First decodable set (triple order, then smallest target) with ``|A & W|`` in targets."""
    width = popcount(window)
    ordered = sorted(t for t in set(targets) if 0 <= t <= width)
    if not ordered:
        return None
    for triple in rep.triples:
        table = dp_subset_sum(
            popcount(triple.X & window), [popcount(c & window) for c in triple.P], width
        )
        for t in ordered:
            w = table.witness(t)
            if w is not None:
                out = triple.X
                for p in w:
                    out |= triple.P[p - 1]
                return out
    return None


def solve(
    f: ConnectivityFn, q: CardinalityQuery, backend: SfmBackend = EXHAUSTIVE
) -> Optional[Mask]:
    """A set ``A`` with ``|A & W|`` in the targets and ``f(A) = k`` (or ``<= k``), else ``None``."""
    F = FStar(f, backend)
    values = [q.k] if q.mode == "exact" else range(q.k + 1)
    for k in values:
        rep = encode(f, k, backend, provenance=False, fstar=F)
        found = search_representation(rep, q.window, q.targets)
        if found is not None:
            return found
    return None


def minimum_bisection(f: ConnectivityFn, k: int, backend: SfmBackend = EXHAUSTIVE) -> Optional[Mask]:
    """A set of size ``floor(n / 2)`` with ``f <= k``, or ``None``."""
    q = CardinalityQuery(f.ground.full, frozenset({f.n // 2}), k, "at_most")
    return solve(f, q, backend)
