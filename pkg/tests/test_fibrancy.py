import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from thetaspace import cells, corpus, ncat
from thetaspace import delta as dl
from thetaspace import fibrancy as fb
from thetaspace import intertwine as iv
from thetaspace import presheaf as ps
from thetaspace import theta as th
from thetaspace.errors import StructureError

P = th.parse_theta
W1 = ps.window(1, 3)


def _nerve(C, win=W1):
    return ncat.dnerve(C, win)


def test_segal_spine_counts():
    X = cells.delta_presheaf_from_subset(dl.spine(2), 3)
    r = fb.check_segal_discrete(X)
    assert not r.passed
    # G[2][2] has the 7 maps with image in {0,1} or {1,2}; the fibre product has 8
    assert (r.witness.source, r.witness.target) == (7, 8)


def test_segal_monoid_nerve():
    M = corpus.monoid(2, 0)
    X = _nerve(M)
    r = fb.check_segal_discrete(X)
    assert r.passed
    entry = fb.segal_comparison(X, 0, th.simplex(2))
    assert entry.source == entry.target == 4


@pytest.mark.parametrize("theta", ps.window(2, 4).objects, ids=str)
def test_segal_representables(theta):
    assert fb.check_segal_discrete(ps.yoneda(theta, ps.window(2, 4))).passed


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_nerves_are_segal(seed):
    C = corpus.random_category(random.Random(seed), 4, 12)
    X = _nerve(C)
    assert fb.check_segal_discrete(X).passed
    assert fb.nerve_comparison(X)


def test_equivalence_counts():
    assert len(fb.equivalences(_nerve(ncat.chaotic_groupoid([0, 1])))) == 4
    assert len(fb.equivalences(_nerve(corpus.chain(1)))) == 2


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_homotopy_category_recovers_C(seed):
    C = corpus.random_category(random.Random(seed), 3, 9)
    h = fb.homotopy_category(_nerve(C))
    assert h.check_axioms()
    D = fb.category_of(C)
    assert len(h.objects) == len(D.objects)
    assert len(h.morphisms()) == len(D.morphisms())
    assert len(h.isomorphisms()) == len(D.isomorphisms())


def test_completeness_examples():
    chaotic = fb.check_complete_discrete(_nerve(ncat.chaotic_groupoid([0, 1])))
    assert not chaotic.passed
    assert chaotic.witness == {"k": 1, "cells_below": 2, "equivalences": 4}
    lv = chaotic.levels[0]
    assert (lv.z_route, lv.e_route) == (4, 4)
    poset = fb.check_complete_discrete(_nerve(corpus.chain(1)))
    assert poset.passed
    assert (poset.levels[0].cells_below, poset.levels[0].equivalences) == (2, 2)
    assert (poset.levels[0].z_route, poset.levels[0].e_route) == (2, 2)


def test_z_route_needs_three():
    assert fb.z_route(_nerve(corpus.chain(1), ps.window(1, 2))) is None


def test_chaotic_category_functors():
    G = fb.chaotic_category(2)
    assert G.check_axioms()
    assert len(G.isomorphisms()) == 4
    assert len(fb.functors_between(G, fb.category_of(corpus.chain(2)))) == 3


def test_groupoid_examples():
    const = ps.constant_presheaf(ps.window(2, 3), [0, 1, 2])
    r = fb.check_groupoid_discrete(const)
    assert r.passed and r.cond3 and r.constant
    assert not fb.check_groupoid_discrete(_nerve(corpus.chain(1))).passed
    chaotic = fb.check_groupoid_discrete(_nerve(ncat.chaotic_groupoid([0, 1])))
    assert chaotic.local
    assert not chaotic.cond2 and not chaotic.cond3


def test_moduli_of_one_cell():
    X = ps.yoneda(P("[1]([0])"), ps.window(2, 3))
    cells_, boundary = fb.moduli(X, 1)
    pts = X(th.terminal(2))
    assert len(cells_) == 3
    assert len(boundary) == len(pts) ** 2


@pytest.mark.parametrize("theta", ["[2]([0],[1](.))", "[1]([1](.))", "[1]([2](.,.))"])
def test_umap_routes_agree(theta):
    win = ps.window(2, 4)
    X = ps.yoneda(P(theta), win)
    for a, b in fb.parallel_pairs(X, 1):
        U, D, M = fb.umap(X, 1, a, b), fb.umap_direct(X, 1, a, b), iv.mapping_presheaf(X, a, b)
        for c in U.window.objects:
            assert sorted(map(str, U(c))) == sorted(map(str, D(c))) == sorted(map(str, M(c)))


def test_umap_level_two():
    win = ps.window(3, 4)
    X = ps.yoneda(P("[1]([1]([1](.)))"), win)
    for a, b in fb.parallel_pairs(X, 2):
        U, D = fb.umap(X, 2, a, b), fb.umap_direct(X, 2, a, b)
        assert {str(c): sorted(map(str, U(c))) for c in U.window.objects} == \
               {str(c): sorted(map(str, D(c))) for c in D.window.objects}


def test_umap_rejects_non_parallel():
    X = ps.yoneda(P("[1]([1](.))"), ps.window(2, 3))
    ones = X(P("[1]([0])"))
    bad = [(a, b) for a in ones for b in ones if fb.cell_boundary(X, 1, a) != fb.cell_boundary(X, 1, b)]
    with pytest.raises(StructureError):
        fb.umap(X, 2, *bad[0])


@pytest.mark.parametrize("level", [0, 1])
@pytest.mark.parametrize("size", [1, 2, 3])
def test_truncation_constant(level, size):
    X = ps.constant_presheaf(ps.window(level, 2), list(range(size)))
    assert fb.check_truncation_discrete(X, -2).passed == (size == 1)
    assert fb.check_truncation_discrete(X, 0).passed
    r = fb.check_truncation_discrete(X, 1)
    assert r.passed and r.note


def test_truncation_minus_one():
    X = _nerve(corpus.chain(1))
    assert fb.check_truncation_discrete(X, -1).passed
    assert not fb.check_truncation_discrete(_nerve(corpus.monoid(2, 0)), -1).passed
    with pytest.raises(StructureError):
        fb.check_truncation_discrete(X, -3)
