import pytest

from conftest import complete_graph, cycle_graph, path_graph
from mutations import MUTATIONS
from smallcuts.encoder import Representation, encode
from smallcuts.errors import BudgetExceeded
from smallcuts.instances import erdos_renyi
from smallcuts.oracles import cut_rank_oracle, edge_cut_oracle
from smallcuts.verify import (
    SUITES,
    VerifyReport,
    brute_family,
    check_bisection,
    check_encoding_exact,
    check_interpolation_axioms,
    check_lemma_digraph,
    check_no_large_skew,
    run_suite,
)


def test_brute_family_examples(p4):
    g = p4.ground
    assert brute_family(p4, 1) == {g.parse(s) for s in ["a", "a,b", "a,b,c", "d", "c,d", "b,c,d"]}
    assert {0, g.full} <= brute_family(p4, 0)
    assert brute_family(p4, -1) == set()


def test_encoding_check(p4):
    assert check_encoding_exact(p4, 1).passed
    assert check_encoding_exact(p4, 0).passed


def test_encoding_check_reports_dropped_set(p4):
    rep = encode(p4, 1, provenance=False)
    a = p4.ground.parse("a")
    broken = Representation(rep.ground, 1, [t for t in rep.triples if not t.contains(a)])
    report = check_encoding_exact(p4, 1, rep=broken)
    assert not report.passed
    assert report.witness == "{a}"


def test_skew_check(p4):
    assert check_no_large_skew(p4, 1).passed
    assert check_no_large_skew(p4, 0).passed


@pytest.mark.parametrize("seed", range(5))
def test_skew_check_random(seed):
    f = edge_cut_oracle(erdos_renyi(6, 0.5, seed))
    for k in range(3):
        assert check_no_large_skew(f, k).passed


def test_lemma_digraph_check():
    assert check_lemma_digraph(edge_cut_oracle(path_graph("abc"))).passed
    assert check_lemma_digraph(cut_rank_oracle(complete_graph("abc"))).passed


def test_lemma_digraph_sampled_is_deterministic():
    f = edge_cut_oracle(erdos_renyi(6, 0.5, 2))
    a = check_lemma_digraph(f, seed=3, trials=300, limit=10)
    b = check_lemma_digraph(f, seed=3, trials=300, limit=10)
    assert a == b and a.passed and a.sampled
    assert a.render() == "CHECK digraph PASS instances=300 sampled"


def test_interpolation_checks():
    assert check_interpolation_axioms(edge_cut_oracle(path_graph("abc"))).passed
    assert check_interpolation_axioms(cut_rank_oracle(cycle_graph())).passed
    r = check_interpolation_axioms(edge_cut_oracle(erdos_renyi(5, 0.5, 1)), limit=10, trials=1000)
    assert r.passed and r.sampled


def test_interpolation_size_limit():
    with pytest.raises(BudgetExceeded):
        check_interpolation_axioms(edge_cut_oracle(erdos_renyi(11, 0.5, 0)))


def test_bisection_check(p4):
    assert check_bisection(p4, 1).passed
    assert check_bisection(edge_cut_oracle(erdos_renyi(8, 0.4, 0)), 1, windows=4).sampled


def test_run_suite_all(p4):
    reports = run_suite(p4, 1, "all")
    assert [r.name for r in reports] == list(SUITES)
    assert all(r.passed for r in reports)
    with pytest.raises(ValueError):
        run_suite(p4, 1, "nope")


def test_render_failure():
    r = VerifyReport("encoding", False, 16, "{a}")
    assert r.render() == "CHECK encoding FAIL instances=16 witness={a}"


@pytest.mark.parametrize("name", sorted(MUTATIONS))
def test_mutations_are_caught(p4, name):
    with MUTATIONS[name]():
        reports = run_suite(p4, 1, "all")
    failed = [r for r in reports if not r.passed]
    assert failed and all(r.witness for r in failed)
    assert all(r.passed for r in run_suite(p4, 1, "all"))


def test_fail_reports_replay(p4):
    with MUTATIONS["flipped arc rule"]():
        first = [r.render() for r in run_suite(p4, 1, "all", seed=5)]
        second = [r.render() for r in run_suite(p4, 1, "all", seed=5)]
    assert first == second


def test_interpolation_check_reports_empty_pair():
    from smallcuts.ground import GroundSet
    from smallcuts.oracles import table_oracle

    f = table_oracle(GroundSet(("1", "2")), {0: 0, 1: -1, 2: -1, 3: -1})
    r = check_interpolation_axioms(f)
    assert not r.passed and r.witness.startswith("empty:")
