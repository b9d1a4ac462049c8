import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_fstar, path_graph
from smallcuts.errors import ContractError
from smallcuts.ground import GroundSet, popcount
from smallcuts.instances import erdos_renyi
from smallcuts.interpolation import FStar, find_base, fstar, shrink_support
from smallcuts.oracles import Gf2Matrix, cut_rank_oracle, edge_cut_oracle, rank_gf2
from smallcuts.sfm import MIN_NORM_POINT, GenericSetFn


def test_fstar_examples(p4):
    F = FStar(p4)
    g = p4.ground
    assert fstar(F, g.parse("a"), g.parse("d")) == 1
    assert fstar(F, 0, 0) == 0
    for X in range(16):
        assert fstar(F, X, g.full ^ X) == p4(X)


def test_fstar_rejects_overlap(p4):
    with pytest.raises(ContractError):
        FStar(p4)(0b011, 0b010)


def _column_rank(rows):
    m = Gf2Matrix.from_lists(rows)
    cols = m.columns()
    ground = GroundSet.of_size(m.n_cols, "c")

    def r(mask):
        picked = [cols[i] for i in range(m.n_cols) if mask >> i & 1]
        return rank_gf2(Gf2Matrix.from_lists([[c >> j & 1 for j in range(m.n_rows)] for c in picked])) if picked else 0

    return GenericSetFn(ground, r)


def test_shrink_support_examples():
    assert shrink_support(_column_rank([[1, 1, 0], [0, 0, 1]])) == 0b110
    assert shrink_support(GenericSetFn(GroundSet.of_size(4), lambda x: 0)) == 0
    assert shrink_support(GenericSetFn(GroundSet.of_size(4), popcount)) == 0b1111


def test_shrink_support_uses_n_plus_one_evaluations():
    calls = []
    r = GenericSetFn(GroundSet.of_size(5), lambda x: calls.append(x) or min(popcount(x), 2))
    A = shrink_support(r)
    assert len(calls) == 6
    assert popcount(A) == 2 == r(A)


def test_shrink_support_detects_non_monotone():
    with pytest.raises(ContractError, match="not monotone"):
        shrink_support(GenericSetFn(GroundSet.of_size(2), lambda x: 1 if x == 0b10 else 0))


def test_find_base_examples(p4):
    F = FStar(p4)
    g = p4.ground
    A, B = find_base(F, g.parse("a,b"), 1)
    assert A in (g.parse("a"), g.parse("b")) and B in (g.parse("c"), g.parse("d"))
    assert F(A, B) == 1
    assert find_base(F, 0, 0) == (0, 0)
    assert find_base(F, g.full, 0) == (0, 0)
    rho = cut_rank_oracle(path_graph("abc"))
    A, B = find_base(FStar(rho), 0b010, 1)
    assert A == 0b010 and B in (0b001, 0b100)


def test_find_base_needs_matching_value(p4):
    with pytest.raises(ContractError):
        find_base(FStar(p4), 0b0011, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7), st.floats(0.2, 0.8), st.integers(0, 2**32), st.data())
def test_fstar_matches_brute_force(n, p, seed, data):
    g = erdos_renyi(n, p, seed)
    for builder in (edge_cut_oracle, cut_rank_oracle):
        f = builder(g)
        roles = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
        S = sum(1 << i for i, r in enumerate(roles) if r == 0)
        T = sum(1 << i for i, r in enumerate(roles) if r == 1)
        assert FStar(f)(S, T) == brute_fstar(f, S, T)
        assert FStar(f, MIN_NORM_POINT)(S, T) == brute_fstar(f, S, T)
        assert FStar(f)(S, T) == FStar(f)(T, S)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 8), st.floats(0.2, 0.8), st.integers(0, 2**32), st.data())
def test_find_base_postcondition(n, p, seed, data):
    f = edge_cut_oracle(erdos_renyi(n, p, seed))
    X = data.draw(st.integers(0, (1 << n) - 1))
    k = f(X)
    F = FStar(f)
    A, B = find_base(F, X, k)
    assert A & ~X == 0 and B & X == 0
    assert popcount(A) <= k and popcount(B) <= k
    assert brute_fstar(f, A, B) == k
    assert F.evaluations <= n + 2
