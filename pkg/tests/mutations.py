"""Seeded bugs used to show that the verify suites are not vacuous.

Each mutation is a context manager that swaps one function inside the
package for a subtly broken copy and restores it afterwards.
"""

from contextlib import contextmanager
from typing import Optional

import pytest

import smallcuts.bisection as bisection
import smallcuts.blocking as blocking
import smallcuts.dagenc as dagenc
from smallcuts.digraph import Digraph


@contextmanager
def _patched(module, name, replacement):
    with pytest.MonkeyPatch.context() as mp:
        mp.setattr(module, name, replacement)
        yield


def flipped_arcs():
    real = blocking.build_blocking

    def build(F, S, T):
        D = real(F, S, T)
        n = D.n
        succ = list(D.digraph.succ)
        flipped = [s & ~((1 << n) - 1) for s in succ]
        for u, v in D.ground_arcs():
            flipped[v] |= 1 << u
        return blocking.BlockDigraph(D.S, D.T, D.base_value, n, Digraph(D.digraph.vertices, tuple(flipped)))

    return _patched(blocking, "build_blocking", build)


def weak_marker_filter():
    return _patched(dagenc, "_independent", lambda succ, X: True)


def no_extend_rule():
    def dp(s0, sizes, max_t):
        sizes = tuple(sizes)
        row: list[Optional[tuple[int, ...]]] = [None] * (max_t + 1)
        if s0 <= max_t:
            row[s0] = ()
        rows = [tuple(row)] * (len(sizes) + 1)
        return bisection.DpTable(s0, sizes, tuple(rows))

    return _patched(bisection, "dp_subset_sum", dp)


MUTATIONS = {
    "flipped arc rule": flipped_arcs,
    "weakened marker filter": weak_marker_filter,
    "dropped DP extend rule": no_extend_rule,
}
