import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallcuts.encoder import (
    EncodingTriple,
    Representation,
    candidate_pairs,
    encode,
    enumerate_family,
    from_text,
    member,
    size_bound,
    stats,
    to_text,
)
from smallcuts.errors import BudgetExceeded, ContractError, InputError
from smallcuts.ground import GroundSet
from smallcuts.instances import erdos_renyi
from smallcuts.oracles import cut_rank_oracle, edge_cut_oracle, vertex_cut_oracle
from smallcuts.sfm import MIN_NORM_POINT
from smallcuts.verify import brute_family

P4_SETS = ["a", "a,b", "a,b,c", "d", "c,d", "b,c,d"]

P4_GOLDEN = """\
{
  "ground": ["a", "b", "c", "d"],
  "k": 1,
  "triples": [
"""


def test_path_family(p4):
    rep = encode(p4, 1)
    assert enumerate_family(rep) == {p4.ground.parse(s) for s in P4_SETS}
    assert member(rep, p4.ground.parse("a,b"))
    assert not member(rep, p4.ground.parse("b"))
    assert len(rep.triples) >= 2
    assert stats(rep)["within_bound"]


def test_k_zero_contains_trivial_sets(p4):
    fam = enumerate_family(encode(p4, 0))
    assert fam == {0, p4.ground.full}


def test_no_cut_of_value_one(k4):
    rep = encode(k4, 1)
    assert rep.triples == []
    assert enumerate_family(rep) == set()
    assert not member(rep, 0b0001)
    assert stats(rep)["triples"] == 0


def test_size_bound_value():
    assert size_bound(4, 1) == 1825


def test_candidate_pairs_order():
    pairs = list(candidate_pairs(3, 1))
    assert pairs[:4] == [(0, 0), (0, 0b001), (0, 0b010), (0, 0b100)]
    assert pairs[4:7] == [(0b001, 0), (0b001, 0b010), (0b001, 0b100)]
    assert len(pairs) == 1 + 3 + 3 * 3


def test_decode_examples():
    assert list(EncodingTriple(0b01, 0b10, ()).decode()) == [0b01]
    assert set(EncodingTriple(0, 0, (0b01, 0b10)).decode()) == {0, 0b01, 0b10, 0b11}


def test_triple_check():
    EncodingTriple(0b001, 0b010, (0b100,)).check(3)
    with pytest.raises(ContractError):
        EncodingTriple(0b001, 0b001, (0b110,)).check(3)
    with pytest.raises(ContractError):
        EncodingTriple(0b001, 0b010, ()).check(3)


def test_budget():
    rep = Representation(GroundSet.of_size(4), 0, [EncodingTriple(0, 0, (1, 2, 4, 8))])
    assert len(enumerate_family(rep, budget=16)) == 16
    with pytest.raises(BudgetExceeded, match="budget"):
        enumerate_family(rep, budget=15)


def test_serialization_is_stable(p4):
    text = to_text(encode(p4, 1))
    assert text == to_text(encode(p4, 1))
    assert text.startswith(P4_GOLDEN)
    assert text.endswith("\n") and "\r" not in text
    back = from_text(text)
    assert to_text(back) == text
    assert enumerate_family(back) == enumerate_family(encode(p4, 1))


def test_serialization_without_provenance(p4):
    text = to_text(encode(p4, 1, provenance=False))
    assert '"provenance"' not in text
    assert from_text(text).provenance is None


def test_empty_serialization(k4):
    text = to_text(encode(k4, 1))
    assert '"triples": []' in text
    assert from_text(text).triples == []


@pytest.mark.parametrize(
    "bad",
    ["", "{", '{"ground": ["a"], "k": 0}', '{"ground": ["a"], "k": 0, "triples": [{"X": ["z"], "Y": [], "P": []}]}'],
)
def test_from_text_errors(bad):
    with pytest.raises(InputError):
        from_text(bad)


def test_provenance_pairs(p4):
    rep = encode(p4, 1)
    g = p4.ground
    pairs = {(p.S, p.T) for p in rep.provenance}
    assert (g.parse("a"), g.parse("d")) in pairs and (g.parse("d"), g.parse("a")) in pairs


def test_parallel_jobs_match_serial():
    f = edge_cut_oracle(erdos_renyi(7, 0.4, 1))
    assert to_text(encode(f, 2, jobs=4)) == to_text(encode(f, 2))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.floats(0.2, 0.8), st.integers(0, 2**32), st.integers(0, 2), st.data())
def test_exactness(n, p, seed, k, data):
    g = erdos_renyi(n, p, seed)
    builder = data.draw(st.sampled_from([edge_cut_oracle, cut_rank_oracle, vertex_cut_oracle]))
    if builder is vertex_cut_oracle and not g.edges:
        return
    f = builder(g)
    rep = encode(f, k)
    assert len(rep.triples) <= size_bound(f.n, k)
    assert enumerate_family(rep) == brute_family(f, k)
    for t in rep.triples:
        t.check(f.n)


@settings(max_examples=10, deadline=None)
@given(st.integers(3, 6), st.integers(0, 2**32))
def test_backends_give_same_family(n, seed):
    f = edge_cut_oracle(erdos_renyi(n, 0.5, seed))
    assert enumerate_family(encode(f, 1, MIN_NORM_POINT)) == enumerate_family(encode(f, 1))
