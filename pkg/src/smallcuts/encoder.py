"""Polynomial-size representation of ``{X : f(X) = k}``.

A representation is a list of triples ``(X, Y, P)``: ``X`` and ``Y`` are
disjoint and ``P`` partitions the remaining elements.  The triple decodes to
every set ``X | (union of some classes of P)``; the union over all triples is
exactly the family of sets of value ``k``.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator, Optional

from . import blocking
from .dagenc import closed_encodings
from .errors import BudgetExceeded, ContractError, InputError
from .ground import GroundSet, Mask, bits
from .interpolation import FStar
from .oracles import ConnectivityFn
from .sfm import EXHAUSTIVE, SfmBackend

DEFAULT_BUDGET = 1 << 20


@dataclass(frozen=True)
class EncodingTriple:
    X: Mask
    Y: Mask
    P: tuple[Mask, ...]

    def check(self, n: int) -> None:
        full = (1 << n) - 1
        seen = self.X | self.Y
        if self.X & self.Y:
            raise ContractError("X and Y overlap")
        for c in self.P:
            if not c or c & seen:
                raise ContractError("classes must be non-empty and disjoint from X, Y and each other")
            seen |= c
        if seen != full:
            raise ContractError("X, Y and the classes do not cover the ground set")

    def decode(self) -> Iterator[Mask]:
        """All sets ``X | union(Q)`` for ``Q`` a subfamily of ``P``."""
        P = self.P
        for choice in range(1 << len(P)):
            out = self.X
            for j in bits(choice):
                out |= P[j]
            yield out

    def contains(self, Z: Mask) -> bool:
        if Z & (self.X | self.Y) != self.X:
            return False
        return all(Z & c in (0, c) for c in self.P)


@dataclass(frozen=True)
class Provenance:
    """The pair ``(S, T)`` and marker pair that produced a triple."""

    S: Mask
    T: Mask
    M1: Mask
    M2: Mask


@dataclass
class EncodeInfo:
    pairs_considered: int = 0
    pairs_contributing: int = 0
    fstar_evaluations: int = 0
    oracle_evaluations: int = 0
    seconds: float = 0.0


@dataclass
class Representation:
    ground: GroundSet
    k: int
    triples: list[EncodingTriple]
    provenance: Optional[list[Provenance]] = None
    info: Optional[EncodeInfo] = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return self.ground.n

    def strip_provenance(self) -> Representation:
        return Representation(self.ground, self.k, list(self.triples), None, self.info)


def size_bound(n: int, k: int) -> int:
    """Explicit upper bound on the number of triples produced by :func:`encode`."""
    pairs = sum(comb(n, i) for i in range(k + 1)) ** 2
    per_pair = sum(comb(n + 2, j) * 2**j for j in range(2 * k + 1))
    return pairs * per_pair


def candidate_pairs(n: int, k: int) -> Iterator[tuple[Mask, Mask]]:
    """Ordered disjoint pairs ``(S, T)`` with ``|S|, |T| <= k`` in canonical order."""
    everything = range(n)
    for s in range(min(k, n) + 1):
        for S_idx in combinations(everything, s):
            S = sum(1 << i for i in S_idx)
            rest = [i for i in everything if not S >> i & 1]
            for t in range(min(k, len(rest)) + 1):
                for T_idx in combinations(rest, t):
                    yield S, sum(1 << i for i in T_idx)


def _encode_pair(F: FStar, S: Mask, T: Mask, k: int):
    if F(S, T) != k:
        return None
    pruned = blocking.prune(blocking.build_blocking(F, S, T))
    if pruned.conflict:
        return None
    items = []
    for enc in closed_encodings(pruned.digraph, 2 * k):
        triple = EncodingTriple(enc.X | S | pruned.forced_in, enc.Y | T | pruned.forced_out, enc.P)
        items.append((triple, Provenance(S, T, enc.M1, enc.M2)))
    return items


def encode(
    f: ConnectivityFn,
    k: int,
    backend: SfmBackend = EXHAUSTIVE,
    *,
    provenance: bool = True,
    jobs: int = 1,
    fstar: Optional[FStar] = None,
) -> Representation:
    """Build the representation of ``{X : f(X) = k}``."""
    if k < 0:
        raise InputError("k must be non-negative")
    start = time.perf_counter()
    F = fstar if fstar is not None else FStar(f, backend)
    if F.f is not f:
        raise ContractError("fstar was built for a different function")
    pairs = list(candidate_pairs(f.n, k))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda st: _encode_pair(F, st[0], st[1], k), pairs))
    else:
        results = [_encode_pair(F, S, T, k) for S, T in pairs]

    seen: set[EncodingTriple] = set()
    triples: list[EncodingTriple] = []
    prov: list[Provenance] = []
    contributing = 0
    for items in results:
        if items is None:
            continue
        contributing += 1
        for triple, origin in items:
            if triple not in seen:
                seen.add(triple)
                triples.append(triple)
                prov.append(origin)

    bound = size_bound(f.n, k)
    if len(triples) > bound:
        raise ContractError(f"{len(triples)} triples exceed the size bound {bound}")
    info = EncodeInfo(
        pairs_considered=len(pairs),
        pairs_contributing=contributing,
        fstar_evaluations=F.evaluations,
        oracle_evaluations=f.evaluations,
        seconds=time.perf_counter() - start,
    )
    return Representation(f.ground, k, triples, prov if provenance else None, info)


def enumerate_family(rep: Representation, budget: int = DEFAULT_BUDGET) -> set[Mask]:
    total = sum(1 << len(t.P) for t in rep.triples)
    if total > budget:
        raise BudgetExceeded(
            f"expanding the representation would produce {total} sets (budget {budget}); "
            "test individual sets with member instead"
        )
    family: set[Mask] = set()
    for t in rep.triples:
        family.update(t.decode())
    return family


def member(rep: Representation, X: Mask) -> bool:
    return any(t.contains(X) for t in rep.triples)


def stats(rep: Representation) -> dict:
    """Summary record of a representation and, if available, the run that built it."""
    bound = size_bound(rep.n, rep.k)
    record = {
        "n": rep.n,
        "k": rep.k,
        "triples": len(rep.triples),
        "bound": bound,
        "within_bound": len(rep.triples) <= bound,
    }
    if rep.provenance is not None:
        record["pairs_with_triples"] = len({(p.S, p.T) for p in rep.provenance})
    if rep.info is not None:
        record.update(
            pairs_considered=rep.info.pairs_considered,
            pairs_contributing=rep.info.pairs_contributing,
            fstar_evaluations=rep.info.fstar_evaluations,
            oracle_evaluations=rep.info.oracle_evaluations,
            seconds=round(rep.info.seconds, 6),
        )
    return record


# --------------------------------------------------------------------------
# Serialization


def _dump_rows(key: str, rows: list[dict], last: bool) -> list[str]:
    lines = [f'  "{key}": [']
    for i, row in enumerate(rows):
        sep = "," if i + 1 < len(rows) else ""
        lines.append("    " + json.dumps(row, ensure_ascii=False) + sep)
    lines.append("  ]" + ("" if last else ","))
    if not rows:
        lines[-2:] = [f'  "{key}": []' + ("" if last else ",")]
    return lines


def to_text(rep: Representation) -> str:
    """Render as a JSON document, two-space indented, one triple per line."""
    g = rep.ground
    triples = [
        {"X": g.labels(t.X), "Y": g.labels(t.Y), "P": [g.labels(c) for c in t.P]}
        for t in rep.triples
    ]
    lines = [
        "{",
        '  "ground": ' + json.dumps(list(g.names), ensure_ascii=False) + ",",
        f'  "k": {rep.k},',
    ]
    if rep.provenance is None:
        lines += _dump_rows("triples", triples, last=True)
    else:
        prov = [
            {"S": g.labels(p.S), "T": g.labels(p.T), "M1": g.labels(p.M1), "M2": g.labels(p.M2)}
            for p in rep.provenance
        ]
        lines += _dump_rows("triples", triples, last=False)
        lines += _dump_rows("provenance", prov, last=True)
    lines.append("}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Representation:
    try:
        doc = json.loads(text)
        ground = GroundSet(tuple(doc["ground"]))
        k = int(doc["k"])

        def mask(labels) -> Mask:
            out = 0
            for label in labels:
                out |= 1 << ground.index(label)
            return out

        triples = []
        for item in doc["triples"]:
            P = tuple(sorted((mask(c) for c in item["P"]), key=lambda m: m & -m))
            t = EncodingTriple(mask(item["X"]), mask(item["Y"]), P)
            t.check(ground.n)
            triples.append(t)
        prov = None
        if "provenance" in doc:
            prov = [Provenance(mask(p["S"]), mask(p["T"]), mask(p["M1"]), mask(p["M2"])) for p in doc["provenance"]]
    except InputError:
        raise
    except (ValueError, KeyError, TypeError, ContractError) as exc:
        raise InputError(f"malformed representation: {exc}") from None
    return Representation(ground, k, triples, prov)
