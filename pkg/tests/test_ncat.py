import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from thetaspace import corpus, ncat
from thetaspace import fibrancy as fb
from thetaspace import presheaf as ps
from thetaspace import theta as th

P = th.parse_theta


def test_tau_examples():
    t0 = ncat.tau(th.terminal(1))
    assert [len(c) for c in t0.cells] == [1, 1]
    t2 = ncat.tau(P("[2]"))
    assert [len(c) for c in t2.cells] == [3, 6]
    cell = ncat.tau(P("[1]([1](.))"))
    assert len(cell.cells[0]) == 2
    assert ncat.functor_count(cell, cell) == 5


@pytest.mark.parametrize("theta", th.enumerate_objects(2, 3) + th.enumerate_objects(3, 3), ids=str)
def test_tau_axioms(theta):
    assert ncat.tau(theta).check_axioms()


def test_hom_equals_functors_level2():
    objs = th.enumerate_objects(2, 3)
    for a, b in itertools.product(objs, repeat=2):
        assert ncat.functor_count(ncat.tau(a), ncat.tau(b)) == th.hom_count(a, b)


def test_tau_on_morphisms_is_functor():
    objs = th.enumerate_objects(2, 2)
    for a, b in itertools.product(objs, repeat=2):
        S, T = ncat.tau(a), ncat.tau(b)
        functors = set(ncat.functors(S, T))
        order = [x for cs in S.cells for x in cs]
        images = {tuple(ncat.tau_map(f)[x] for x in order) for f in th.enumerate_hom(a, b)}
        assert images == functors


@pytest.mark.parametrize("theta", ["[1]([0])", "[1]([1](.))", "[2]([0],[1](.))"])
def test_yoneda_nerve(theta):
    assert ncat.check_yoneda_nerve(P(theta), ps.window(2, 3))


def test_dnerve_terminal():
    X = ncat.dnerve(ncat.terminal_ncat(2), ps.window(2, 3))
    assert all(len(X(o)) == 1 for o in X.window.objects)


def _chains(C, m):
    """Composable m-chains of arrows in a 1-category, counted directly."""
    arrows = C.cells[1]
    if m == 0:
        return len(C.cells[0])
    return sum(1 for seq in itertools.product(arrows, repeat=m)
               if all(C.tgt[1][seq[i]] == C.src[1][seq[i + 1]] for i in range(m - 1)))


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_dnerve_counts_chains(seed):
    C = corpus.random_category(random.Random(seed), 3, 9)
    X = ncat.dnerve(C, ps.window(1, 3))
    for m in range(4):
        assert len(X(th.simplex(m))) == _chains(C, m)


def _flat(C):
    return [x for cs in C.cells for x in cs]


def test_dnerve_functorial():
    C, D = corpus.chain(1), corpus.random_poset(random.Random(4), 3)
    win = ps.window(1, 3)
    X, Y = ncat.dnerve(C, win), ncat.dnerve(D, win)
    for F in ncat.functors(C, D):
        Fd = dict(zip(_flat(C), F))
        for f in win.morphisms():
            for x in X(f.target):
                fx = tuple(Fd[v] for v in x)
                assert fx in Y.elements(f.target)
                assert tuple(Fd[v] for v in X.act(f, x)) == Y.act(f, fx)


def test_isomorphisms_and_rigidity():
    G = ncat.chaotic_groupoid([0, 1])
    assert all(ncat.is_k_isomorphism(G, g, 1) for g in G.cells[1])
    assert not ncat.is_rigid(G)
    for C in (corpus.chain(2), corpus.random_poset(random.Random(1), 4)):
        assert ncat.is_rigid(C)
    for C in corpus.rigidity_corpus():
        for d in range(C.n):
            for x in C.cells[d]:
                assert ncat.is_k_equivalence_ncat(C, C.ident[d][x], d + 1)


def test_rigid_iff_complete_examples():
    r = ncat.check_rigid_iff_complete(corpus.chain(2), ps.window(1, 3))
    assert r["rigid"] and r["complete"]
    r = ncat.check_rigid_iff_complete(ncat.chaotic_groupoid([0, 1]), ps.window(1, 3))
    assert not r["rigid"] and not r["complete"]
    assert r["witness"] == {"k": 1, "cells_below": 2, "equivalences": 4}
    r = ncat.check_rigid_iff_complete(ncat.tau(P("[1]([1](.))")), ps.window(2, 3))
    assert r["rigid"] and r["complete"]


def test_json_round_trip():
    for C in (corpus.chain(2), ncat.tau(P("[1]([2](.,.))")), corpus.double_delooping(corpus.monoid(2, 0))):
        text = ncat.dumps(C)
        D = ncat.from_json(json.loads(text))
        assert ncat.dumps(D) == text
        assert D.check_axioms()


def test_suspension_of_category():
    S = ncat.suspend_category(corpus.chain(1))
    assert S.n == 2 and S.check_axioms()
    assert len(S.cells[0]) == 2
