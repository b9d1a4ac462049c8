"""Brute-force oracles and lemma-level checkers.

Each checker returns a :class:`VerifyReport`; a failing report always carries
a witness that reproduces the failure.  Checkers switch from exhaustive to
seeded sampling when the number of instances would exceed ``limit``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import blocking
from .bisection import search_representation
from .dagenc import find_skew_matching
from .encoder import Representation, candidate_pairs, encode, enumerate_family
from .errors import BudgetExceeded
from .ground import GroundSet, Mask, bits, popcount
from .interpolation import FStar
from .oracles import ConnectivityFn, check_axioms
from .sfm import EXHAUSTIVE, SfmBackend

EXHAUSTIVE_LIMIT = 10**6
MAX_BRUTE_N = 20

SUITES = ("encoding", "skew", "digraph", "axioms", "interp", "bisect")


@dataclass
class VerifyReport:
    name: str
    passed: bool
    instances: int
    witness: Optional[str] = None
    sampled: bool = False

    def render(self) -> str:
        line = f"CHECK {self.name} {'PASS' if self.passed else 'FAIL'} instances={self.instances}"
        if self.sampled:
            line += " sampled"
        if self.witness is not None:
            line += f" witness={self.witness}"
        return line


def _fmt(ground: GroundSet, mask: Mask) -> str:
    return "{" + ground.format(mask) + "}"


def _submasks(mask: Mask):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _disjoint_pairs(n: int):
    full = (1 << n) - 1
    for S in range(1 << n):
        for T in _submasks(full & ~S):
            yield S, T


def brute_family(f: ConnectivityFn, k: int) -> set[Mask]:
    """All subsets of value ``k``, by exhaustive evaluation."""
    if f.n > MAX_BRUTE_N:
        raise BudgetExceeded(f"brute force over 2^{f.n} subsets is not supported (n <= {MAX_BRUTE_N})")
    values = f.table()
    return {int(m) for m in np.nonzero(values == k)[0]}


def check_axioms_report(f: ConnectivityFn) -> VerifyReport:
    rep = check_axioms(f)
    witness = None if rep.ok else f"{rep.axiom}:" + ",".join(_fmt(f.ground, w) for w in rep.witness)
    return VerifyReport("axioms", rep.ok, 1 << f.n, witness)


def check_encoding_exact(
    f: ConnectivityFn,
    k: int,
    backend: SfmBackend = EXHAUSTIVE,
    rep: Optional[Representation] = None,
) -> VerifyReport:
    if rep is None:
        rep = encode(f, k, backend, provenance=False)
    diff = enumerate_family(rep) ^ brute_family(f, k)
    witness = None
    if diff:
        first = min(diff, key=lambda m: (popcount(m), m))
        witness = _fmt(f.ground, first)
    return VerifyReport("encoding", not diff, 1 << f.n, witness)


def check_no_large_skew(f: ConnectivityFn, k: int, backend: SfmBackend = EXHAUSTIVE) -> VerifyReport:
    F = FStar(f, backend)
    checked = 0
    for S, T in candidate_pairs(f.n, k):
        if F(S, T) != k:
            continue
        pruned = blocking.prune(blocking.build_blocking(F, S, T))
        if pruned.conflict:
            continue
        checked += 1
        m = find_skew_matching(pruned.digraph, 2 * k + 1)
        if m is not None:
            g = f.ground
            arcs = ";".join(f"{g.names[a]}->{g.names[b]}" for a, b in m)
            return VerifyReport("skew", False, checked, f"S={_fmt(g, S)} T={_fmt(g, T)} matching={arcs}")
    return VerifyReport("skew", True, checked)


def check_lemma_digraph(
    f: ConnectivityFn,
    backend: SfmBackend = EXHAUSTIVE,
    *,
    seed: int = 0,
    trials: int = 20000,
    limit: int = EXHAUSTIVE_LIMIT,
) -> VerifyReport:
    """Compare ``fstar(S+A, T+B) == fstar(S, T)`` with the no-arc condition on quadruples."""
    F = FStar(f, backend)
    n = f.n
    g = f.ground
    full = g.full

    def fail(S, T, A, B, lhs, rhs, count, sampled):
        w = f"S={_fmt(g, S)} T={_fmt(g, T)} A={_fmt(g, A)} B={_fmt(g, B)} lhs={lhs} rhs={rhs}"
        return VerifyReport("digraph", False, count, w, sampled)

    if 5**n <= limit:
        count = 0
        for S, T in _disjoint_pairs(n):
            D = blocking.build_blocking(F, S, T)
            succ = D.digraph.succ
            k = D.base_value
            snk = 1 << D.snk
            free = full & ~(S | T)
            for A in _submasks(free):
                heads = succ[D.src]
                for v in bits(A):
                    heads |= succ[v]
                for B in _submasks(free & ~A):
                    count += 1
                    lhs = F(S | A, T | B) == k
                    rhs = not heads & (B | snk)
                    if lhs != rhs:
                        return fail(S, T, A, B, lhs, rhs, count, False)
        return VerifyReport("digraph", True, count)

    rng = np.random.default_rng(seed)
    cache: dict[tuple[Mask, Mask], blocking.BlockDigraph] = {}
    for count in range(1, trials + 1):
        roles = rng.integers(0, 5, size=n)
        S, T, A, B = (sum(1 << i for i in range(n) if roles[i] == r) for r in range(4))
        D = cache.get((S, T))
        if D is None:
            D = cache[(S, T)] = blocking.build_blocking(F, S, T)
        lhs, rhs = blocking.lemma_digraph_check(F, S, T, A, B, D)
        if lhs != rhs:
            return fail(S, T, A, B, lhs, rhs, count, True)
    return VerifyReport("digraph", True, trials, sampled=True)


def check_interpolation_axioms(
    f: ConnectivityFn,
    backend: SfmBackend = EXHAUSTIVE,
    *,
    seed: int = 0,
    trials: int = 200000,
    limit: int = EXHAUSTIVE_LIMIT,
) -> VerifyReport:
    """Interpolation properties of ``fstar``, checked over all disjoint pairs.

Witness tags: ``empty`` (value at the empty pair), ``boundary`` (agreement
with ``f`` on complementary pairs), ``symmetry``, ``monotone`` (single-element
growth) and ``submodular`` (pairwise meet/join inequality).
"""
    F = FStar(f, backend)
    n = f.n
    g = f.ground
    full = g.full
    if n > 10:
        raise BudgetExceeded("interpolation axioms are only checked for n <= 10")
    pairs = np.array(list(_disjoint_pairs(n)), dtype=np.int64)
    table = np.full((1 << n, 1 << n), -(1 << 40), dtype=np.int64)
    for S, T in pairs:
        table[S, T] = F(int(S), int(T))
    A, B = pairs[:, 0], pairs[:, 1]
    count = len(pairs)

    def report(ok, witness=None, sampled=False):
        return VerifyReport("interp", ok, count, witness, sampled)

    def pair(S, T):
        return f"({_fmt(g, int(S))},{_fmt(g, int(T))})"

    if table[0, 0] != 0:
        return report(False, "empty:" + pair(0, 0))
    masks = np.arange(1 << n, dtype=np.int64)
    vals = f.table()
    bad = np.nonzero(table[masks, full ^ masks] != vals)[0]
    if bad.size:
        return report(False, "boundary:" + pair(bad[0], full ^ bad[0]))
    bad = np.nonzero(table[A, B] != table[B, A])[0]
    if bad.size:
        return report(False, "symmetry:" + pair(A[bad[0]], B[bad[0]]))
    for x in range(n):
        bx = 1 << x
        free = ((A | B) & bx) == 0
        a, b = A[free], B[free]
        for bigger in (table[a | bx, b], table[a, b | bx]):
            bad = np.nonzero(table[a, b] > bigger)[0]
            if bad.size:
                return report(False, "monotone:" + pair(a[bad[0]], b[bad[0]]) + f"+{g.names[x]}")

    base = table[A, B]
    if len(pairs) ** 2 <= limit:
        for i in range(len(pairs)):
            a, b = A[i], B[i]
            lhs = base[i] + base
            rhs = table[a & A, b | B] + table[a | A, b & B]
            count += len(pairs)
            bad = np.nonzero(lhs < rhs)[0]
            if bad.size:
                j = bad[0]
                return report(False, "submodular:" + pair(a, b) + pair(A[j], B[j]))
        return report(True)

    rng = np.random.default_rng(seed)
    i = rng.integers(0, len(pairs), size=trials)
    j = rng.integers(0, len(pairs), size=trials)
    lhs = base[i] + base[j]
    rhs = table[A[i] & A[j], B[i] | B[j]] + table[A[i] | A[j], B[i] & B[j]]
    count += trials
    bad = np.nonzero(lhs < rhs)[0]
    if bad.size:
        t = bad[0]
        return report(False, "submodular:" + pair(A[i[t]], B[i[t]]) + pair(A[j[t]], B[j[t]]), True)
    return report(True, sampled=True)


def check_bisection(
    f: ConnectivityFn,
    k: int,
    backend: SfmBackend = EXHAUSTIVE,
    *,
    seed: int = 0,
    windows: int = 16,
) -> VerifyReport:
    """Cardinality search over the representations against exhaustive search.

    Every window is tried when ``n <= 6``, otherwise ``windows`` seeded random
    ones.  Each window gets every singleton target plus one random target set,
    in both exact and at-most modes.
    """
    n = f.n
    g = f.ground
    F = FStar(f, backend)
    reps = [encode(f, j, backend, provenance=False, fstar=F) for j in range(k + 1)]
    values = f.table()
    rng = np.random.default_rng(seed)
    sampled = n > 6
    if sampled:
        window_list = [int(w) for w in rng.integers(0, 1 << n, size=windows)]
    else:
        window_list = list(range(1 << n))
    masks = np.arange(1 << n, dtype=np.int64)
    count = 0
    for W in window_list:
        width = popcount(W)
        sizes = np.zeros(1 << n, dtype=np.int64)
        for i in bits(W):
            sizes += (masks >> i) & 1
        target_sets = [{t} for t in range(width + 1)]
        target_sets.append({t for t in range(width + 1) if rng.random() < 0.5})
        for targets in target_sets:
            in_targets = np.isin(sizes, list(targets))
            for mode, allowed in (("exact", [k]), ("at_most", list(range(k + 1)))):
                count += 1
                expected = bool(np.any(in_targets & np.isin(values, allowed)))
                found = None
                for j in allowed:
                    found = search_representation(reps[j], W, targets)
                    if found is not None:
                        break
                ok = (found is not None) == expected
                if found is not None:
                    ok = ok and f(found) in allowed and popcount(found & W) in targets
                if not ok:
                    got = "none" if found is None else _fmt(g, found)
                    w = f"W={_fmt(g, W)} targets={sorted(targets)} mode={mode} found={got} feasible={expected}"
                    return VerifyReport("bisect", False, count, w, sampled)
    return VerifyReport("bisect", True, count, sampled=sampled)


def run_suite(
    f: ConnectivityFn, k: int, suite: str, backend: SfmBackend = EXHAUSTIVE, seed: int = 0
) -> list[VerifyReport]:
    names = SUITES if suite == "all" else (suite,)
    reports = []
    for name in names:
        if name == "encoding":
            reports.append(check_encoding_exact(f, k, backend))
        elif name == "skew":
            reports.append(check_no_large_skew(f, k, backend))
        elif name == "digraph":
            reports.append(check_lemma_digraph(f, backend, seed=seed))
        elif name == "axioms":
            reports.append(check_axioms_report(f))
        elif name == "interp":
            reports.append(check_interpolation_axioms(f, backend, seed=seed))
        elif name == "bisect":
            reports.append(check_bisection(f, k, backend, seed=seed))
        else:
            raise ValueError(f"unknown suite {name!r}")
    return reports
