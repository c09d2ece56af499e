import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from thetaspace import delta as dl
from thetaspace import homology as hm
from thetaspace import presheaf as ps
from thetaspace import qpaths as qp
from thetaspace import theta as th
from thetaspace.errors import StructureError

Q = qp.QObject.from_steps
M = dl.MonotoneMap


def _delannoy_table(k):
    """Closed form sum_i C(m,i) C(n,i) 2^i, independent of the recurrence."""
    from math import comb
    return {(m, n): sum(comb(m, i) * comb(n, i) * 2 ** i for i in range(min(m, n) + 1))
            for m in range(k + 1) for n in range(k + 1)}


def test_counts():
    assert len(qp.enumerate_Q(3, 0)) == 1
    assert len(qp.enumerate_Q(1, 1)) == 3
    assert len(qp.enumerate_Q(2, 2)) == 13
    for (m, n), v in _delannoy_table(6).items():
        assert len(qp.enumerate_Q(m, n)) == v == qp.delannoy(m, n)


def test_object_invariants():
    for d in qp.enumerate_Q(3, 2).elements:
        assert d.delta1.surjective and d.delta2.surjective
        assert d.end == (3, 2)
        assert len(set(d.points)) == len(d.points)
        assert Q(d.steps()) == d
    with pytest.raises(StructureError):
        qp.QObject(((0, 0), (2, 0)))


def test_hasse_of_Q11():
    H = {(str(a), str(b)) for a, b in qp.enumerate_Q(1, 1).hasse()}
    assert H == {("D", "RU"), ("D", "UR")}


@pytest.mark.parametrize("m,n", [(m, n) for m in range(4) for n in range(4)])
def test_witness_uniqueness(m, n):
    els = qp.enumerate_Q(m, n).elements
    for a, b in itertools.product(els, repeat=2):
        # brute force over all maps [p] -> [p']
        ws = [g for g in dl.enumerate_delta(a.p, b.p)
              if all(b.points[g.values[i]] == a.points[i] for i in range(a.p + 1))]
        assert len(ws) == (1 if qp.leq(a, b) else 0)
        w = qp.witness(a, b)
        assert (w is None) == (not ws)
        if ws:
            assert w == ws[0]


def test_g_delta_alpha_examples():
    ident = M((0, 1), 1)
    assert qp.g_delta_alpha(Q("D"), ident, ident) == [M((0, 1), 1)]
    assert qp.g_delta_alpha(Q("RU"), ident, ident) == [M((0, 2), 2)]
    assert qp.g_delta_alpha(Q("RU"), M((0, 0), 1), ident) == []
    # non-injective alpha goes through the image
    assert qp.g_delta_alpha(Q("RU"), M((0, 0, 1), 1), M((0, 0, 1), 1)) == [M((0, 0, 2), 2)]


def test_alpha_subposet_examples():
    ident = M((0, 1), 1)
    assert len(qp.subposet_Q_alpha(1, 1, ident, ident)) == 3
    assert qp.alpha_segments(1, 1, ident, ident) == [(0, 0), (1, 1), (0, 0)]
    end = (M((2,), 2), M((3,), 3))
    assert len(qp.subposet_Q_alpha(2, 3, *end)) == len(qp.enumerate_Q(2, 3))
    stair = (M((0, 1, 1, 2), 2), M((0, 0, 1, 1), 1))
    assert len(qp.subposet_Q_alpha(2, 1, *stair)) == 1


@settings(max_examples=40)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 10 ** 6))
def test_alpha_product(m, n, seed):
    a1, a2 = qp.random_alpha(m, n, random.Random(seed))
    assert qp.check_alpha_product(m, n, a1, a2)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(5) for n in range(1, 5)])
def test_retraction_chain(m, n):
    steps = qp.retraction_chain(m, n)
    assert len(steps) == 2 * m + 1
    assert all(s.certified for s in steps)
    assert steps[0].poset == qp.enumerate_Q(m, n).elements


def test_retraction_example_11():
    steps = {s.name: s for s in qp.retraction_chain(1, 1)}
    assert [s for s in steps] == ["r_0", "r'_0", "r_1"]
    r1 = steps["r_1"]
    assert r1.map[Q("D")] == Q("RU")
    assert all(r1.map[y] == y for y in r1.subposet)
    # r'_0 merges U then R into a diagonal
    assert steps["r'_0"].map[Q("UR")] == Q("D")


def test_last_step():
    for m in range(4):
        for n in range(1, 4):
            assert qp.last_step_iso(m, n)
    # X_m itself is too big in general
    assert len(qp.X_k(1, 1, 1)) == 2 and len(qp.enumerate_Q(1, 0)) == 1


@pytest.mark.parametrize("m,n", [(m, n) for m in range(4) for n in range(1, 4)])
def test_retraction_preserves_homology(m, n):
    for s in qp.retraction_chain(m, n):
        big = hm.reduced_homology(hm.nerve_complex(hm.Poset(s.poset, qp.leq)))
        small = hm.reduced_homology(hm.nerve_complex(hm.Poset(s.subposet, qp.leq)))
        assert all(h.is_zero() for h in big) and all(h.is_zero() for h in small)


def test_P_K_spine():
    assert qp.build_P_K(dl.spine(2)) == [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)]
    assert (0, 2) in qp.build_P_K(dl.full_simplex(2))


def _rep_inputs(m):
    low = ps.window(1, 3)
    return [ps.yoneda(th.simplex(i % 2), low) for i in range(m)]


@pytest.mark.parametrize("m", range(1, 4))
def test_p_k_colimits(m):
    win = ps.window(2, 3)
    for K in dl.all_covers(m):
        res = qp.p_k_colim_check(K, _rep_inputs(m), win)
        assert res["F_to_K"] and res["G_to_G"], (K.face_strings(), res)


def test_main_square_bottom_count():
    low = ps.window(1, 3)
    F0 = ps.yoneda(th.terminal(1), low)
    cmp = qp.colim_compare(1, 1, [F0], [F0], dl.full_simplex(1), dl.full_simplex(1), ps.window(2, 4))
    assert cmp.passed
    r = [x for x in cmp.reports if x.theta == "[1]([0])" and x.row == "bottom"][0]
    assert r.classes == r.target == 9


def test_main_square_empty_when_outside_cover():
    low = ps.window(1, 3)
    F0 = ps.yoneda(th.terminal(1), low)
    theta = th.parse_theta("[1]([0])")
    sq = qp.main_square(Q("DD"), [F0, F0], [F0, F0], dl.spine(2), dl.spine(2), theta)
    # the long diagonal misses both spines so only degenerate summands survive
    assert all(len(set(x.delta)) <= 1 or x.delta in ((0, 1), (1, 2)) for x in sq["g"])
    assert len(sq["g"]) < len(sq["g'"])


def test_main_square_trivial_n0():
    low = ps.window(1, 3)
    F1 = ps.yoneda(th.simplex(1), low)
    cmp = qp.colim_compare(1, 0, [F1], [], dl.full_simplex(1), dl.full_simplex(0), ps.window(2, 3))
    assert cmp.passed
    assert all(r.classes == r.target for r in cmp.reports)
