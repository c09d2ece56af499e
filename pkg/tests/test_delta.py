import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

from thetaspace import delta as dl
from thetaspace.errors import StructureError


def maps(m, n):
    return st.sampled_from(dl.enumerate_delta(m, n))


def test_compose_examples():
    assert dl.compose_delta(dl.delta("01", 1), dl.delta("0", 1)).values == (0,)
    f = dl.delta("02", 2)
    assert dl.compose_delta(f, dl.delta("01", 1)).values == (0, 2)
    for g in dl.enumerate_delta(3, 2):
        assert dl.compose_delta(dl.delta("012", 2), g) == g


def test_compose_rank_mismatch():
    with pytest.raises(StructureError):
        dl.compose_delta(dl.delta("01", 1), dl.delta("02", 2))


def test_enumerate_examples():
    assert len(dl.enumerate_delta(1, 1)) == 3
    assert len(dl.enumerate_delta(2, 1)) == 4
    assert [f.values for f in dl.enumerate_delta(0, 4)] == [(i,) for i in range(5)]


@pytest.mark.parametrize("m,n", [(m, n) for m in range(7) for n in range(7)])
def test_enumerate_counts(m, n):
    assert len(dl.enumerate_delta(m, n)) == comb(m + n + 1, m + 1)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(4) for n in range(4)])
def test_enumerate_against_all_functions(m, n):
    brute = [v for v in itertools.product(range(n + 1), repeat=m + 1)
             if all(a <= b for a, b in zip(v, v[1:]))]
    assert [f.values for f in dl.enumerate_delta(m, n)] == brute


def test_associativity_exhaustive():
    for a, b, c, d in itertools.product(range(4), repeat=4):
        for f in dl.enumerate_delta(a, b):
            for g in dl.enumerate_delta(b, c):
                gf = dl.compose_delta(g, f)
                for h in dl.enumerate_delta(c, d):
                    assert dl.compose_delta(h, gf) == dl.compose_delta(dl.compose_delta(h, g), f)


def test_classify():
    assert dl.classify(dl.delta("02", 2))["sequential"] is False
    assert all(dl.classify(dl.MonotoneMap.identity(m)) == {"injective": True, "surjective": True,
                                                         "sequential": True} for m in range(4))
    for m in range(5):
        for n in range(m + 1):
            for f in dl.enumerate_delta(m, n):
                if f.surjective:
                    assert f.sequential


def test_spine_examples():
    assert dl.spine(1).faces == dl.full_simplex(1).faces
    assert dl.spine(2).face_strings() == ["0", "1", "2", "01", "12"]
    # maps [2] -> [2] with image inside {0,1} or {1,2}
    assert len(dl.spine(2).evaluate(2)) == 7


def test_is_cover_examples():
    assert dl.is_cover(dl.full_simplex(3))
    assert dl.is_cover(dl.spine(3))
    assert not dl.is_cover(dl.boundary(2))


@pytest.mark.parametrize("m", range(5))
def test_is_cover_matches_bruteforce(m):
    subs = dl.all_subobjects(m) if m <= 3 else dl.all_subobjects(m)[:400]
    for K in subs:
        assert dl.is_cover(K) == dl.is_cover_bruteforce(K)


def test_pullback_examples():
    d = dl.delta("01", 2)
    assert dl.pullback_cover(d, dl.spine(2)).faces == dl.full_simplex(1).faces
    for p in range(3):
        for d in dl.sequential_maps(p, 3):
            assert dl.pullback_cover(d, dl.full_simplex(3)).faces == dl.full_simplex(p).faces
    one = dl.MonotoneMap.identity(1)
    assert dl.product_pullback_cover(one, one, dl.spine(1), dl.spine(1)).faces == dl.full_simplex(1).faces
    with pytest.raises(StructureError):
        dl.pullback_cover(dl.delta("02", 2), dl.spine(2))


@pytest.mark.parametrize("m", range(4))
def test_pullback_of_covers_is_cover(m):
    for K in dl.all_covers(m):
        for p in range(m + 2):
            for d in dl.sequential_maps(p, m):
                assert dl.is_cover(dl.pullback_cover(d, K))


@given(st.integers(0, 3).flatmap(lambda m: st.tuples(st.just(m), st.integers(0, 4))).flatmap(
    lambda mq: st.tuples(st.sampled_from(dl.all_subobjects(mq[0])), maps(mq[1], mq[0]))))
def test_membership_by_image(case):
    K, f = case
    image = tuple(sorted(set(f.values)))
    assert K.contains(f) == K.contains(image)


@given(st.sampled_from(dl.all_subobjects(3)))
def test_subobjects_face_closed(K):
    for face in K.faces:
        for r in range(1, len(face)):
            for sub in itertools.combinations(face, r):
                assert sub in K.faces


def test_serialisation():
    assert dl.to_digits((0, 1, 2, 2)) == "0122"
    assert dl.MonotoneMap.parse("0122").values == (0, 1, 2, 2)
