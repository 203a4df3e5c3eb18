import os

import pytest

import malrel

CORPUS = os.environ.get("MALREL_CORPUS", "corpus")


def load(name):
    return malrel.load_algebra(os.path.join(CORPUS, name))


def test_load_and_shape():
    z2 = load("z2.alg")
    assert z2.size == 2
    assert [op.name for op in z2.ops] == ["+"]


def test_relations_roundtrip():
    r = malrel.BinaryRelation.from_pairs(3, [(0, 1), (1, 2)])
    assert r.at(0, 1) and not r.at(1, 0)
    tc = malrel.transitive_closure(r)
    assert tc.at(0, 2)
    assert malrel.converse(malrel.converse(r)) == r
    assert malrel.rel_sum(r, r) == tc


def test_closures():
    sl = load("semilattice2.alg")
    order = malrel.generated_admissible(sl, [(0, 1)])
    assert order.pairs() == [(0, 0), (0, 1), (1, 1)]
    assert malrel.congruence_closure(sl, order) == malrel.BinaryRelation.full(2)


def test_eval_expr():
    sl = load("semilattice2.alg")
    r = malrel.BinaryRelation.from_pairs(2, [(0, 1)])
    out = malrel.eval_expr(sl, "cg(R u delta)", env={"R": r})
    assert out == malrel.BinaryRelation.full(2)
    out = malrel.eval_expr(sl, "F(adm(R))", env={"R": r}, operators={"F": "tc"})
    assert out.reflexive()


def test_search_term():
    assert malrel.search_term(load("z2.alg"), "diag", "diag") is not None
    assert malrel.search_term(load("semilattice2.alg"), "diag", "diag") is None
    for route in ("iv", "vii", "x"):
        assert malrel.search_term(load("semilattice2.alg"), "cg", "cg", route=route)


def test_free_algebra_sizes():
    assert malrel.free_algebra_size(load("semilattice2.alg"), 2) == 3
    assert malrel.free_algebra_size(load("semilattice2.alg"), 3) == 7
    assert malrel.free_algebra_size(load("z2.alg"), 2) == 4


def test_verify_clause():
    rep = malrel.verify_clause(load("z2.alg"), "ii", "diag", "diag")
    assert rep["status"] == "pass"
    assert rep["asserted"]
    assert rep["violations"] == []


def test_errors_map_to_python():
    with pytest.raises(Exception, match="cap"):
        malrel.free_algebra_size(load("z3.alg"), 3, cap=5)
    with pytest.raises(Exception):
        malrel.parse_algebra("{not json")
