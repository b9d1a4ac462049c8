"""Shared fixtures and brute-force reference oracles for the tests."""

from itertools import combinations

import pytest

from smallcuts.ground import GroundSet
from smallcuts.oracles import Graph, edge_cut_oracle


def path_graph(labels="abcd") -> Graph:
    return Graph.from_edges(tuple(labels), [(u, v) for u, v in zip(labels, labels[1:])])


def complete_graph(labels="abcd") -> Graph:
    return Graph.from_edges(tuple(labels), list(combinations(labels, 2)))


def cycle_graph(labels="abcde") -> Graph:
    return Graph.from_edges(tuple(labels), [(labels[i], labels[(i + 1) % len(labels)]) for i in range(len(labels))])


def submasks(mask):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def brute_fstar(f, S, T):
    """Minimum of f over S <= X <= V-T, by listing every admissible X."""
    free = f.ground.full & ~(S | T)
    return min(f(S | Z) for Z in submasks(free))


def closed_sets(D):
    """Every closed vertex set of ``D``, by checking all subsets."""
    return {X for X in submasks(D.vertices) if all(not (D.succ[v] & ~X) for v in range(len(D.succ)) if X >> v & 1)}


def m(ground: GroundSet, text: str) -> int:
    return ground.parse(text)


@pytest.fixture
def p4():
    return edge_cut_oracle(path_graph())


@pytest.fixture
def k4():
    return edge_cut_oracle(complete_graph())


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
