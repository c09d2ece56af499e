import itertools

import pytest
from hypothesis import given, settings, strategies as st

from thetaspace import homology as hm
from thetaspace import qpaths as qp
from thetaspace.errors import StructureError

sympy = pytest.importorskip("sympy")
from sympy.matrices.normalforms import invariant_factors  # noqa: E402


def _betti(C, reduced=True):
    return [h.betti for h in hm.homology(C, reduced=reduced)]


def test_antichain_and_chain():
    two = hm.nerve_complex(hm.Poset([0, 1], lambda a, b: a == b))
    assert [len(b) for b in two.basis] == [2]
    assert _betti(two) == [1]
    chain = hm.nerve_complex(hm.Poset([0, 1, 2], lambda a, b: a <= b))
    assert [len(b) for b in chain.basis] == [3, 3, 1]
    assert hm.is_acyclic(chain)


def test_circle():
    C = hm.simplicial_complex([(0, 1), (1, 2), (0, 2)])
    H = hm.reduced_homology(C)
    assert H[0].is_zero() and H[1].betti == 1


def test_projective_plane_torsion():
    facets = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6), (2, 3, 5), (3, 4, 6),
              (2, 4, 5), (3, 5, 6), (2, 4, 6)]
    # six-vertex triangulation of the real projective plane
    H = hm.homology(hm.simplicial_complex(facets))
    assert (H[0].betti, H[1].betti, H[1].torsion, H[2].betti) == (1, 0, (2,), 0)


def test_Q11_nerve():
    C = hm.nerve_complex(qp.enumerate_Q(1, 1).as_poset())
    assert [len(b) for b in C.basis] == [3, 2]
    assert hm.is_acyclic(C)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(7) for n in range(7) if m + n <= 6])
def test_Q_contractible(m, n):
    assert hm.is_acyclic(hm.nerve_complex(qp.enumerate_Q(m, n).as_poset()))


@settings(max_examples=80)
@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_snf_matches_sympy(M):
    ours = hm.smith_normal_form(M)
    theirs = [abs(int(x)) for x in invariant_factors(sympy.Matrix(M)) if x != 0]
    assert ours == theirs


def test_snf_divisibility():
    assert hm.smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert hm.smith_normal_form([[0, 0], [0, 0]]) == []
    assert hm.smith_normal_form([[4, 6], [6, 9]]) == [1]


def _random_poset(rng_seed, k):
    import random
    rng = random.Random(rng_seed)
    rel = {(i, j) for i in range(k) for j in range(i + 1, k) if rng.random() < 0.4}
    closed = set(rel)
    for _ in range(k):
        closed |= {(a, d) for (a, b) in closed for (c, d) in closed if b == c}
    return hm.Poset(range(k), lambda a, b: a == b or (a, b) in closed)


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_euler_and_dd(seed, k):
    P = _random_poset(seed, k)
    assert P.check_order()
    C = hm.nerve_complex(P)
    assert C.check_dd()
    assert hm.euler_characteristic(C) == hm.euler_from_betti(C)


def test_product_poset_contractible():
    P = hm.product_poset(qp.enumerate_Q(1, 1).as_poset(), qp.enumerate_Q(1, 2).as_poset())
    assert hm.is_acyclic(hm.nerve_complex(P))


def test_certify_retraction():
    chain = hm.Poset([0, 1, 2], lambda a, b: a <= b)
    assert hm.certify_retraction(chain, [0], {0: 0, 1: 0, 2: 0}, "below")
    assert not hm.certify_retraction(chain, [0], {0: 0, 1: 0, 2: 0}, "above")
    # not monotone
    assert not hm.certify_retraction(chain, [0, 2], {0: 0, 1: 2, 2: 0}, "below")
    assert not hm.certify_retraction(chain, [0, 1], {0: 0, 1: 0, 2: 1}, "below")
    with pytest.raises(StructureError):
        hm.certify_retraction(chain, [0], {0: 0, 1: 0, 2: 0}, "sideways")


def test_qpaths_retraction_21():
    steps = qp.retraction_chain(2, 1)
    assert steps[0].name == "r_0" and steps[0].certified


def test_empty_complex():
    C = hm.nerve_complex(hm.Poset([], lambda a, b: a == b))
    assert not hm.is_acyclic(C)
    assert hm.reduced_homology(C)[0].is_zero()


def test_report_format():
    text = hm.report(hm.simplicial_complex([(0, 1), (1, 2), (0, 2)]))
    assert text.splitlines() == ["0: betti=0 torsion=[]", "1: betti=1 torsion=[]"]
