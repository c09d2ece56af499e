import random

import pytest
from hypothesis import given, settings, strategies as st

from thetaspace import corpus, ncat
from thetaspace import fibrancy as fb


def test_monoid_tables():
    assert len(corpus.monoid_tables(1)) == 1
    # monoids of order 2 up to equality of tables: Z/2 and the two-element semilattice
    assert len(corpus.monoid_tables(2)) == 2
    for i in range(len(corpus.monoid_tables(3))):
        assert corpus.monoid(3, i).check_axioms()


def test_rigidity_corpus_shape():
    Cs = corpus.rigidity_corpus(0)
    assert len(Cs) >= 30
    assert {C.n for C in Cs} == {1, 2}
    names = [C.name for C in Cs]
    assert "chaotic2" in names and "[1]" in names
    assert all(C.check_axioms() for C in Cs)


def test_corpus_deterministic():
    assert [C.name for C in corpus.rigidity_corpus(5)] == [C.name for C in corpus.rigidity_corpus(5)]


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_random_category_valid(seed):
    C = corpus.random_category(random.Random(seed), 4, 12)
    assert C.n == 1 and C.check_axioms()
    assert len(C.cells[0]) <= 4


def test_finset_category_bound():
    rng = random.Random(0)
    for _ in range(20):
        C = corpus.finset_category(rng, 3, 3, max_arrows=12)
        assert C is None or (len(C.cells[1]) <= 12 and C.check_axioms())


def test_double_delooping():
    D = corpus.double_delooping(corpus.monoid(2, 0))
    assert D.check_axioms() and [len(c) for c in D.cells] == [1, 1, 2]


def test_group_groupoid_isos():
    G = corpus.group_groupoid(2, corpus.cyclic_group(3))
    cat = fb.category_of(G)
    assert cat.check_axioms()
    assert len(cat.isomorphisms()) == len(G.cells[1]) == 12


@settings(max_examples=6)
@given(st.integers(0, 10 ** 6))
def test_random_delta_presheaves_functorial(seed):
    X = corpus.random_delta_presheaf(random.Random(seed))
    assert X.check_functoriality()
