"""Objects and morphisms of the wreath products Theta_n.

An object of Theta_n is a planar tree: level 0 has the single object ".",
and a level-n object is ``[m](c_1, ..., c_m)`` with children at level n-1.
A morphism ``[m](c) -> [k](d)`` is a monotone map delta: [m] -> [k] together
with a component ``c_i -> d_j`` for every ``delta(i-1) < j <= delta(i)``.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from .delta import MonotoneMap, monotone_tuples, is_injective, is_sequential, to_digits
from .errors import StructureError, ThetaParseError


class ThetaObject:
    __slots__ = ("level", "children", "_hash", "_size")

    def __init__(self, level: int, children=None):
        if level < 0:
            raise StructureError("level must be non-negative")
        if level == 0:
            if children:
                raise StructureError("level-0 objects have no children")
            children = None
        else:
            children = tuple(children or ())
            for c in children:
                if not isinstance(c, ThetaObject) or c.level != level - 1:
                    raise StructureError(f"child {c!r} is not a level-{level - 1} object")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "_hash", hash((level, children)))
        object.__setattr__(self, "_size", None)

    def __setattr__(self, name, value):
        raise AttributeError("ThetaObject is immutable")

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, ThetaObject) and self._hash == other._hash
                and self.level == other.level and self.children == other.children)

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (ThetaObject, (self.level, self.children))

    @property
    def arity(self):
        return None if self.level == 0 else len(self.children)

    @property
    def size(self) -> int:
        if self._size is None:
            s = 0 if self.level == 0 else len(self.children) + sum(c.size for c in self.children)
            object.__setattr__(self, "_size", s)
        return self._size

    def arities(self) -> tuple:
        """Preorder sequence of arities; determines the tree at a fixed level."""
        if self.level == 0:
            return ()
        out = [len(self.children)]
        for c in self.children:
            out.extend(c.arities())
        return tuple(out)

    def sort_key(self):
        return (self.level, self.size, self.arities())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self.level == 0:
            return "."
        m = len(self.children)
        if m == 0:
            return "[0]"
        return f"[{m}](" + ",".join(str(c) for c in self.children) + ")"

    def __repr__(self):
        return f"ThetaObject<{self.level}>{self}"


def point() -> ThetaObject:
    return ThetaObject(0)


def terminal(level: int) -> ThetaObject:
    """The object [0] of Theta_n (the point at level 0)."""
    return ThetaObject(level, ())


def simplex(m: int, level: int = 1) -> ThetaObject:
    """[m]([0], ..., [0]) at the given level; at level 1 this is [m]."""
    if level < 1:
        raise StructureError("simplices live at level >= 1")
    return ThetaObject(level, (terminal(level - 1),) * m)


def obj(*children, level=None) -> ThetaObject:
    """Build [m](children...) inferring the level from the children."""
    if level is None:
        if not children:
            raise StructureError("give a level for [0]")
        level = children[0].level + 1
    return ThetaObject(level, children)


def suspension(theta: ThetaObject) -> ThetaObject:
    return ThetaObject(theta.level + 1, (theta,))


def suspend_k(theta: ThetaObject, k: int) -> ThetaObject:
    for _ in range(k):
        theta = suspension(theta)
    return theta


def cell_object(k: int, level: int) -> ThetaObject:
    """sigma^k [0] in Theta_level, the free-standing k-cell."""
    if not 0 <= k <= level:
        raise StructureError(f"no {k}-cell object at level {level}")
    return suspend_k(terminal(level - k), k)


def inclusion(theta: ThetaObject, n: int) -> ThetaObject:
    """Re-level a tree into Theta_n (n >= level), leaves becoming [0]."""
    if n < theta.level:
        raise StructureError(f"cannot include a level-{theta.level} object into level {n}")
    if n == theta.level:
        return theta
    if theta.level == 0:
        return terminal(n)
    return ThetaObject(n, tuple(inclusion(c, n - 1) for c in theta.children))


# ---------------------------------------------------------------------------
# parsing


def parse_theta(text: str, level: int | None = None) -> ThetaObject:
    """Parse the tree grammar ``.`` / ``[m](c1,...,cm)`` / ``[0]``.

    Without an explicit level the height of the tree is used.
    """
    tree, pos = _parse(text, 0)
    pos = _skip(text, pos)
    if pos != len(text):
        raise ThetaParseError("trailing characters", text, pos)
    height = _height(tree)
    if level is None:
        level = height
    elif level < height:
        raise ThetaParseError(f"tree of height {height} does not fit level {level}", text, 0)
    return _build(tree, level, text)


def _skip(text, pos):
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse(text, pos):
    pos = _skip(text, pos)
    if pos >= len(text):
        raise ThetaParseError("unexpected end of input", text, pos)
    if text[pos] == ".":
        return None, pos + 1
    if text[pos] != "[":
        raise ThetaParseError(f"expected '[' or '.', got {text[pos]!r}", text, pos)
    end = text.find("]", pos)
    if end < 0:
        raise ThetaParseError("unclosed '['", text, pos)
    digits = text[pos + 1:end].strip()
    if not digits.isdigit():
        raise ThetaParseError(f"bad arity {digits!r}", text, pos + 1)
    m = int(digits)
    pos = _skip(text, end + 1)
    children = []
    if pos < len(text) and text[pos] == "(":
        pos += 1
        pos = _skip(text, pos)
        if pos < len(text) and text[pos] == ")":
            pos += 1
        else:
            while True:
                child, pos = _parse(text, pos)
                children.append(child)
                pos = _skip(text, pos)
                if pos < len(text) and text[pos] == ",":
                    pos += 1
                    continue
                if pos < len(text) and text[pos] == ")":
                    pos += 1
                    break
                raise ThetaParseError("expected ',' or ')'", text, pos)
    elif m > 0:
        # "[m]" alone abbreviates a level-1 simplex [m](.,...,.)
        children = [None] * m
    if len(children) != m:
        raise ThetaParseError(f"arity {m} but {len(children)} children", text, pos)
    return ("node", tuple(children)), pos


def _height(tree):
    if tree is None:
        return 0
    return 1 + max((_height(c) for c in tree[1]), default=0)


def _build(tree, level, text):
    if tree is None:
        if level == 0:
            return point()
        raise ThetaParseError(f"'.' appears at level {level}", text, 0)
    if level == 0:
        raise ThetaParseError("tree deeper than its level", text, 0)
    return ThetaObject(level, tuple(_build(c, level - 1, text) for c in tree[1]))


# ---------------------------------------------------------------------------
# morphisms


class ThetaMorphism:
    """A morphism (delta, {f_ij}) between objects of the same level.

    ``components[i-1]`` is the tuple of f_ij for j in (delta(i-1), delta(i)].
    Level-0 morphisms carry no data.
    """

    __slots__ = ("source", "target", "delta", "components", "_hash")

    def __init__(self, source: ThetaObject, target: ThetaObject, delta=(), components=(),
                 check: bool = True):
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "delta", tuple(delta))
        object.__setattr__(self, "components", tuple(tuple(c) for c in components))
        object.__setattr__(self, "_hash", hash((source, target, self.delta, self.components)))
        if check:
            self._check()

    def __setattr__(self, name, value):
        raise AttributeError("ThetaMorphism is immutable")

    def _check(self):
        s, t = self.source, self.target
        if s.level != t.level:
            raise StructureError("source and target live at different levels")
        if s.level == 0:
            if self.delta or self.components:
                raise StructureError("level-0 morphisms carry no data")
            return
        m, n = len(s.children), len(t.children)
        d = self.delta
        if len(d) != m + 1 or any(a > b for a, b in zip(d, d[1:])) or d[0] < 0 or d[-1] > n:
            raise StructureError(f"{d} is not a monotone map [{m}] -> [{n}]")
        if len(self.components) != m:
            raise StructureError("need one component tuple per source child")
        for i in range(1, m + 1):
            comps = self.components[i - 1]
            if len(comps) != d[i] - d[i - 1]:
                raise StructureError(f"component {i} has the wrong length")
            for off, f in enumerate(comps):
                j = d[i - 1] + 1 + off
                if f.source != s.children[i - 1] or f.target != t.children[j - 1]:
                    raise StructureError(f"component f_{i}{j} has the wrong endpoints")

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, ThetaMorphism) and self._hash == other._hash
                and self.source == other.source and self.target == other.target
                and self.delta == other.delta and self.components == other.components)

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (ThetaMorphism, (self.source, self.target, self.delta, self.components, False))

    @property
    def level(self):
        return self.source.level

    def delta_map(self) -> MonotoneMap:
        return MonotoneMap(self.delta, len(self.target.children))

    def component(self, i: int, j: int) -> "ThetaMorphism":
        return self.components[i - 1][j - self.delta[i - 1] - 1]

    def to_json(self):
        if self.level == 0:
            return {"delta": "", "components": []}
        return {
            "delta": to_digits(self.delta),
            "components": [[f.to_json() for f in comps] for comps in self.components],
        }

    def __str__(self):
        if self.level == 0:
            return "*"
        if self.level == 1:
            return to_digits(self.delta)
        inner = ";".join(",".join(str(f) for f in comps) for comps in self.components)
        return f"{to_digits(self.delta)}{{{inner}}}"

    def __repr__(self):
        return f"ThetaMorphism({self.source} -> {self.target}: {self})"


def morphism_from_json(data, source: ThetaObject, target: ThetaObject) -> ThetaMorphism:
    if source.level == 0:
        return ThetaMorphism(source, target)
    d = tuple(int(ch) for ch in data["delta"]) if "." not in data["delta"] else tuple(
        int(x) for x in data["delta"].split("."))
    comps = []
    for i, raw in enumerate(data["components"], start=1):
        row = []
        for off, f in enumerate(raw):
            j = d[i - 1] + 1 + off
            row.append(morphism_from_json(f, source.children[i - 1], target.children[j - 1]))
        comps.append(row)
    return ThetaMorphism(source, target, d, comps)


def identity(theta: ThetaObject) -> ThetaMorphism:
    return _identity(theta)


@lru_cache(maxsize=None)
def _identity(theta):
    if theta.level == 0:
        return ThetaMorphism(theta, theta)
    m = len(theta.children)
    return ThetaMorphism(theta, theta, tuple(range(m + 1)),
                         tuple((_identity(c),) for c in theta.children), check=False)


def compose_theta(g: ThetaMorphism, f: ThetaMorphism) -> ThetaMorphism:
    """g after f; h_ik = g_jk f_ij for the unique j that links i to k."""
    if f.target != g.source:
        raise StructureError(f"cannot compose: {f.target} != {g.source}")
    return _compose(g, f)


@lru_cache(maxsize=1 << 18)
def _compose(g, f):
    if f.level == 0:
        return ThetaMorphism(f.source, g.target)
    d, e = f.delta, g.delta
    comps = []
    for i in range(1, len(d)):
        row = []
        for j in range(d[i - 1] + 1, d[i] + 1):
            fij = f.components[i - 1][j - d[i - 1] - 1]
            for gjk in g.components[j - 1]:
                row.append(_compose(gjk, fij))
        comps.append(tuple(row))
    return ThetaMorphism(f.source, g.target, tuple(e[x] for x in d), tuple(comps), check=False)


def enumerate_hom(src: ThetaObject, dst: ThetaObject) -> list:
    if src.level != dst.level:
        raise StructureError("hom between different levels")
    return list(_hom(src, dst))


@lru_cache(maxsize=None)
def _hom(src, dst):
    if src.level == 0:
        return (ThetaMorphism(src, dst, check=False),)
    m, n = len(src.children), len(dst.children)
    out = []
    for d in monotone_tuples(m, n):
        factors = []
        for i in range(1, m + 1):
            for j in range(d[i - 1] + 1, d[i] + 1):
                factors.append(_hom(src.children[i - 1], dst.children[j - 1]))
        for choice in itertools.product(*factors):
            comps, pos = [], 0
            for i in range(1, m + 1):
                width = d[i] - d[i - 1]
                comps.append(tuple(choice[pos:pos + width]))
                pos += width
            out.append(ThetaMorphism(src, dst, d, tuple(comps), check=False))
    return tuple(out)


def hom_count(src: ThetaObject, dst: ThetaObject) -> int:
    """Cardinality from the coproduct-of-products formula, without listing."""
    return _hom_count(src, dst)


@lru_cache(maxsize=None)
def _hom_count(src, dst):
    if src.level == 0:
        return 1
    m, n = len(src.children), len(dst.children)
    total = 0
    for d in monotone_tuples(m, n):
        prod = 1
        for i in range(1, m + 1):
            for j in range(d[i - 1] + 1, d[i] + 1):
                prod *= _hom_count(src.children[i - 1], dst.children[j - 1])
        total += prod
    return total


@lru_cache(maxsize=None)
def _objects_of_size(level: int, size: int) -> tuple:
    if level == 0:
        return (point(),) if size == 0 else ()
    out = []
    for m in range(size + 1):
        rest = size - m
        for sizes in _compositions(rest, m):
            pools = [_objects_of_size(level - 1, s) for s in sizes]
            for kids in itertools.product(*pools):
                out.append(ThetaObject(level, kids))
    return tuple(sorted(out, key=lambda t: t.sort_key()))


def _compositions(total, parts):
    """Ordered tuples of `parts` non-negative ints summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_objects(level: int, max_size: int) -> list:
    """All level-n trees of size <= max_size in canonical order."""
    if level < 0 or max_size < 0:
        raise StructureError("level and size bound must be non-negative")
    out = []
    for s in range(max_size + 1):
        out.extend(_objects_of_size(level, s))
    return out


def suspend_morphism(f: ThetaMorphism) -> ThetaMorphism:
    """sigma(f) = (id_[1], {f})."""
    return ThetaMorphism(suspension(f.source), suspension(f.target), (0, 1), ((f,),), check=False)


def suspend_morphism_k(f: ThetaMorphism, k: int) -> ThetaMorphism:
    for _ in range(k):
        f = suspend_morphism(f)
    return f


def include_morphism(f: ThetaMorphism, n: int) -> ThetaMorphism:
    """Apply the inclusion Theta_level -> Theta_n to a morphism."""
    if n < f.level:
        raise StructureError("inclusion goes up in level")
    if n == f.level:
        return f
    src, dst = inclusion(f.source, n), inclusion(f.target, n)
    if f.level == 0:
        return identity(src)
    comps = tuple(tuple(include_morphism(g, n - 1) for g in row) for row in f.components)
    return ThetaMorphism(src, dst, f.delta, comps, check=False)


def canonical_delta_morphism(d: MonotoneMap, source: ThetaObject, target: ThetaObject) -> ThetaMorphism:
    """The morphism written simply as delta: all components identities.

    Needs delta injective and sequential with matching children.  A source of
    arity 0 (any vertex inclusion) is also allowed.
    """
    if source.level != target.level or source.level == 0:
        raise StructureError("canonical delta morphisms live at level >= 1")
    m, n = len(source.children), len(target.children)
    if d.src_rank != m or d.dst_rank != n:
        raise StructureError(f"{d} does not go [{m}] -> [{n}]")
    if not (is_injective(d.values) and is_sequential(d.values)):
        raise StructureError(f"{d} is not injective and sequential")
    comps = []
    for i in range(1, m + 1):
        j = d(i)
        if source.children[i - 1] != target.children[j - 1]:
            raise StructureError(f"child {i} of source does not match child {j} of target")
        comps.append((identity(source.children[i - 1]),))
    return ThetaMorphism(source, target, d.values, comps, check=False)


def vertex(i: int, target: ThetaObject) -> ThetaMorphism:
    """The vertex inclusion [0] -> target picking i."""
    return ThetaMorphism(terminal(target.level), target, (i,), (), check=False)


def edge(i: int, target: ThetaObject) -> ThetaMorphism:
    """delta^{i-1,i}: [1](c_i) -> [m](c_1, ..., c_m)."""
    return canonical_delta_morphism(MonotoneMap((i - 1, i), len(target.children)),
                                    suspension(target.children[i - 1]), target)


def to_terminal(theta: ThetaObject) -> ThetaMorphism:
    return _hom(theta, terminal(theta.level))[0]


def from_delta(d: MonotoneMap, level: int = 1) -> ThetaMorphism:
    """The unique morphism [m]([0],...) -> [n]([0],...) over delta."""
    src, dst = simplex(d.src_rank, level), simplex(d.dst_rank, level)
    t = terminal(level - 1)
    comps = tuple(
        tuple(identity(t) for _ in range(d.values[i] - d.values[i - 1]))
        for i in range(1, len(d.values))
    )
    return ThetaMorphism(src, dst, d.values, comps, check=False)
