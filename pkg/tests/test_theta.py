import itertools
import random

import pytest
from hypothesis import given, strategies as st

from thetaspace import delta as dl
from thetaspace import theta as th
from thetaspace.errors import StructureError, ThetaParseError

P = th.parse_theta


def _brute_hom_count(a, b):
    """Direct recursion on the wreath formula, independent of enumerate_hom."""
    if a.level == 0:
        return 1
    total = 0
    for d in dl.enumerate_delta(a.arity, b.arity):
        prod = 1
        for i in range(1, a.arity + 1):
            for j in range(d.values[i - 1] + 1, d.values[i] + 1):
                prod *= _brute_hom_count(a.children[i - 1], b.children[j - 1])
        total += prod
    return total


@pytest.mark.parametrize("src,dst,count", [
    ("[1]([0])", "[1]([0])", 3),
    ("[1]([1](.))", "[1]([1](.))", 5),
    ("[1]([1](.))", "[2]([1](.),[1](.))", 18),
    ("[1]", "[2]", 6),
])
def test_hom_examples(src, dst, count):
    assert th.hom_count(P(src), P(dst)) == count
    assert len(th.enumerate_hom(P(src), P(dst))) == count


def test_hom_matches_formula_recursion():
    objs = th.enumerate_objects(2, 3)
    for a, b in itertools.product(objs, repeat=2):
        assert th.hom_count(a, b) == _brute_hom_count(a, b)


def test_enumerate_objects_examples():
    assert [str(o) for o in th.enumerate_objects(1, 2)] == ["[0]", "[1](.)", "[2](.,.)"]
    assert {str(o) for o in th.enumerate_objects(2, 2)} == {"[0]", "[1]([0])", "[2]([0],[0])", "[1]([1](.))"}
    for b in range(4):
        assert len(th.enumerate_objects(0, b)) == 1


def test_size_invariant():
    for o in th.enumerate_objects(3, 4):
        assert o.size == o.arity + sum(c.size for c in o.children)
        assert len(o.children) == o.arity


def test_parse_round_trip():
    for o in th.enumerate_objects(3, 4):
        assert P(str(o), o.level) == o


def test_parse_errors():
    for bad in ["[", "[1](", "[x]", "[2](.)", "[1]([0]"]:
        with pytest.raises(ThetaParseError):
            P(bad)
    with pytest.raises(ThetaParseError):
        P("[2]", 2)


def test_suspension_and_inclusion():
    assert str(th.suspend_k(th.point(), 3)) == "[1]([1]([1](.)))"
    assert str(th.inclusion(P("[3]"), 2)) == "[3]([0],[0],[0])"
    objs = th.enumerate_objects(2, 4)
    assert len({th.suspension(o) for o in objs}) == len(objs)


def test_terminal():
    for o in th.enumerate_objects(2, 4):
        assert th.hom_count(o, th.terminal(2)) == 1


def test_canonical_delta_morphism():
    a, b = P("[1]([0])"), P("[2]([0],[0])")
    f = th.canonical_delta_morphism(dl.delta("01", 2), a, b)
    assert f.to_json() == {"delta": "01", "components": [[{"delta": "0", "components": []}]]}
    th.canonical_delta_morphism(dl.delta("12", 2), a, b)
    with pytest.raises(StructureError):
        th.canonical_delta_morphism(dl.delta("02", 2), a, b)


def _morphisms(level, bound):
    objs = th.enumerate_objects(level, bound)
    return [f for a in objs for b in objs for f in th.enumerate_hom(a, b)]


MORS2 = _morphisms(2, 3)


@given(st.sampled_from(MORS2))
def test_unit_laws(f):
    assert th.compose_theta(th.identity(f.target), f) == f
    assert th.compose_theta(f, th.identity(f.source)) == f


@given(st.sampled_from(MORS2))
def test_json_round_trip(f):
    assert th.morphism_from_json(f.to_json(), f.source, f.target) == f


def test_associativity_sampled_level3():
    rng = random.Random(3)
    objs = th.enumerate_objects(3, 3)
    for _ in range(300):
        a, b, c, d = (rng.choice(objs) for _ in range(4))
        fs, gs, hs = th.enumerate_hom(a, b), th.enumerate_hom(b, c), th.enumerate_hom(c, d)
        if not (fs and gs and hs):
            continue
        f, g, h = rng.choice(fs), rng.choice(gs), rng.choice(hs)
        assert th.compose_theta(h, th.compose_theta(g, f)) == th.compose_theta(th.compose_theta(h, g), f)


@given(st.sampled_from(_morphisms(1, 3)), st.sampled_from(_morphisms(1, 3)))
def test_suspension_functorial(f, g):
    if g.source != f.target:
        return
    sgf = th.suspend_morphism(th.compose_theta(g, f))
    assert sgf == th.compose_theta(th.suspend_morphism(g), th.suspend_morphism(f))
    assert th.suspend_morphism(th.identity(f.source)) == th.identity(th.suspension(f.source))


def test_suspension_bijective_on_homs():
    objs = th.enumerate_objects(1, 3)
    for a, b in itertools.product(objs, repeat=2):
        sa, sb = th.suspension(a), th.suspension(b)
        # hom([1](a),[1](b)) = two constant maps plus the suspended ones
        assert th.hom_count(sa, sb) == th.hom_count(a, b) + 2
