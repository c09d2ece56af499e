import itertools

import pytest
from hypothesis import given, settings, strategies as st

from thetaspace import cells
from thetaspace import delta as dl
from thetaspace import presheaf as ps
from thetaspace import theta as th
from thetaspace.errors import NotPresented, StructureError

P = th.parse_theta
W2 = ps.window(2, 3)
OBJS = W2.objects


def test_window_contents():
    assert [str(o) for o in ps.window(1, 2).objects] == ["[0]", "[1](.)", "[2](.,.)"]
    assert P("[1]([0])") in W2
    assert P("[1]([1]([0]))") not in W2


def test_yoneda_examples():
    w = ps.window(2, 4)
    X = ps.yoneda(P("[1]([1](.))"), w)
    assert len(X(P("[1]([1](.))"))) == 5
    T = ps.yoneda(th.terminal(2), w)
    assert all(len(T(o)) == 1 for o in w.objects)
    assert X.check_functoriality()
    with pytest.raises(StructureError):
        ps.yoneda(th.terminal(1), w)


def test_identity_acts_trivially():
    X = ps.yoneda(P("[2]([0],[1](.))"), W2)
    for o in OBJS:
        for x in X(o):
            assert X.act(th.identity(o), x) == x


@pytest.mark.parametrize("theta", OBJS, ids=str)
def test_yoneda_lemma(theta):
    F = ps.yoneda(theta, W2)
    X = ps.yoneda(P("[2]([0],[0])"), W2)
    maps = ps.nat_hom(F, X)
    assert len(maps) == len(X(theta))
    # evaluation at the identity is the bijection
    assert sorted(map(str, (m[(theta, th.identity(theta))] for m in maps))) == sorted(map(str, X(theta)))


def test_nat_hom_initial_and_terminal():
    X = ps.yoneda(P("[1]([0])"), W2)
    assert len(ps.nat_hom(ps.initial_presheaf(W2), X)) == 1
    T = ps.terminal_presheaf(W2)
    T.presented = True
    # global elements of a representable over a window with a terminal object
    assert len(ps.nat_hom(T, X)) == len(X(th.terminal(2)))


def test_nat_hom_refuses_unpresented():
    X = ps.yoneda(P("[1]([0])"), W2)
    Y = ps.subpresheaf(X, lambda o, f: True)
    with pytest.raises(NotPresented):
        ps.nat_hom(Y, X)


def test_global_sections():
    assert len(ps.global_sections(ps.yoneda(th.terminal(2), W2))) == 1
    assert len(ps.global_sections(ps.yoneda(P("[2]([0],[0])"), W2))) == 3
    A, B = ps.yoneda(P("[1]([0])"), W2), ps.yoneda(P("[2]([0],[0])"), W2)
    assert len(ps.global_sections(ps.coproduct([A, B]))) == 2 + 3


def test_product_with_terminal():
    X = ps.yoneda(P("[1]([1](.))"), W2)
    Y = ps.product([X, ps.terminal_presheaf(W2)])
    bij = {o: {y: y[0] for y in Y(o)} for o in OBJS}
    assert all(len(X(o)) == len(Y(o)) for o in OBJS)
    assert ps.relabel_isomorphic(Y, X, bij)


def test_pushout_of_monos():
    C = ps.yoneda(P("[2]([0],[0])"), W2)
    d01 = th.canonical_delta_morphism(dl.delta("01", 2),
                                      P("[1]([0])"), P("[2]([0],[0])"))
    A = ps.yoneda(P("[1]([0])"), W2)
    f = ps.PresheafMap(A, C, lambda o, x: th.compose_theta(d01, x))
    g = ps.PresheafMap(A, C, lambda o, x: th.compose_theta(d01, x))
    Pu = ps.pushout(f, g)
    assert f.is_mono()
    for o in OBJS:
        assert len(Pu(o)) == 2 * len(C(o)) - len(A(o))
    assert Pu.check_functoriality()


def test_poset_colimit_connected():
    Xs = {e: ps.terminal_presheaf(W2) for e in "abc"}
    le = lambda s, t: s == t or s == "a"
    C = ps.poset_colimit("abc", le, lambda e: Xs[e], lambda s, t: (lambda o, x: x))
    assert all(len(C(o)) == 1 for o in OBJS)


def test_json_round_trip_byte_stable():
    for X in [ps.yoneda(P("[1]([1](.))"), W2), cells.boundary_pushout(2, W2)]:
        text = ps.dumps(X)
        Y = ps.loads(text)
        assert ps.dumps(Y) == text
        assert Y.sizes() == X.sizes()
        assert Y.check_functoriality()


SMALL = ps.window(2, 2)


@settings(max_examples=25)
@given(st.sampled_from(SMALL.objects), st.sampled_from(SMALL.objects))
def test_coproduct_and_product_sizes(a, b):
    A, B = ps.yoneda(a, SMALL), ps.yoneda(b, SMALL)
    S, Pr = ps.coproduct([A, B]), ps.product([A, B])
    for o in SMALL.objects:
        assert len(S(o)) == len(A(o)) + len(B(o))
        assert len(Pr(o)) == len(A(o)) * len(B(o))
    assert S.check_functoriality() and Pr.check_functoriality()


def test_pullback_of_terminal_maps_is_product():
    A, B = ps.yoneda(P("[1]([0])"), W2), ps.yoneda(P("[2]([0],[0])"), W2)
    T = ps.terminal_presheaf(W2)
    t0 = list(T(th.terminal(2)))[0]
    f = ps.PresheafMap(A, T, lambda o, x: list(T(o))[0])
    g = ps.PresheafMap(B, T, lambda o, x: list(T(o))[0])
    Q = ps.pullback(f, g)
    assert all(len(Q(o)) == len(A(o)) * len(B(o)) for o in OBJS)
    assert t0 is not None
