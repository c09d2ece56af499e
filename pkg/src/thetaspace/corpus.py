"""Generated test corpora: finite strict 1- and 2-categories and small Delta-presheaves."""
from __future__ import annotations

import itertools
import random
from functools import lru_cache

from . import delta as dl
from . import ncat
from . import presheaf as ps
from . import theta as th
from .errors import StructureError


# ---------------------------------------------------------------------------
# 1-categories


def random_poset(rng: random.Random, k: int, p: float = 0.4) -> ncat.StrictNCat:
    rel = {(i, j) for i in range(k) for j in range(i + 1, k) if rng.random() < p}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return ncat.poset_category(range(k), lambda a, b: a == b or (a, b) in rel, name=f"poset{k}:{sorted(rel)}")


def chain(k: int) -> ncat.StrictNCat:
    """The poset [k] = 0 < 1 < ... < k."""
    return ncat.poset_category(range(k + 1), lambda a, b: a <= b, name=f"[{k}]")


@lru_cache(maxsize=None)
def monoid_tables(size: int) -> tuple:
    """Every multiplication table on {0..size-1} that is associative with unit 0."""
    out = []
    E = range(size)
    free = [(a, b) for a in range(1, size) for b in range(1, size)]
    for vals in itertools.product(E, repeat=len(free)):
        t = {(0, a): a for a in E}
        t.update({(a, 0): a for a in E})
        t.update(zip(free, vals))
        if all(t[(t[(a, b)], c)] == t[(a, t[(b, c)])] for a in E for b in E for c in E):
            out.append(tuple(sorted(t.items())))
    return tuple(out)


def monoid(size: int, index: int) -> ncat.StrictNCat:
    table = dict(monoid_tables(size)[index])
    return ncat.monoid_category(range(size), lambda g, f: table[(g, f)], 0, name=f"monoid{size}.{index}")


def cyclic_group(k: int):
    return list(range(k)), (lambda a, b: (a + b) % k), 0


def group_groupoid(objects: int, group, name="") -> ncat.StrictNCat:
    """Connected groupoid: hom(a, b) is a copy of the group for all objects a, b."""
    G, mult, unit = group
    arrows = {(a, b, g): (a, b) for a in range(objects) for b in range(objects) for g in G}
    return ncat.category(range(objects), arrows,
                         lambda h, g: (g[0], h[1], mult(h[2], g[2])),
                         {a: (a, a, unit) for a in range(objects)},
                         name=name or f"gpd{objects}x{len(G)}")


def coproduct_category(Cs, name="") -> ncat.StrictNCat:
    objs, arrows, ident = [], {}, {}
    for i, C in enumerate(Cs):
        if C.n != 1:
            raise StructureError("coproducts of 1-categories only")
        objs += [(i, x) for x in C.cells[0]]
        for f in C.cells[1]:
            arrows[(i, f)] = ((i, C.src[1][f]), (i, C.tgt[1][f]))
        for x in C.cells[0]:
            ident[(i, x)] = (i, C.ident[0][x])
    return ncat.category(objs, arrows, lambda g, f: (g[0], Cs[g[0]].comp[1][0][(g[1], f[1])]),
                         ident, name=name or "+".join(C.name for C in Cs))


def finset_category(rng: random.Random, objects: int = 3, generators: int = 3,
                    max_arrows: int = 12, max_set: int = 2):
    """A random subcategory of finite sets generated by random functions, or None if too big."""
    sizes = [rng.randint(1, max_set) for _ in range(objects)]
    arrows = {(a, a, tuple(range(sizes[a]))) for a in range(objects)}
    for _ in range(generators):
        a, b = rng.randrange(objects), rng.randrange(objects)
        arrows.add((a, b, tuple(rng.randrange(sizes[b]) for _ in range(sizes[a]))))
    frontier = True
    while frontier:
        frontier = False
        for f, g in itertools.product(list(arrows), repeat=2):
            if f[1] == g[0]:
                h = (f[0], g[1], tuple(g[2][v] for v in f[2]))
                if h not in arrows:
                    arrows.add(h)
                    frontier = True
        if len(arrows) > max_arrows:
            return None
    arrows = sorted(arrows)
    return ncat.category(range(objects), {f: (f[0], f[1]) for f in arrows},
                         lambda g, f: (f[0], g[1], tuple(g[2][v] for v in f[2])),
                         {a: (a, a, tuple(range(sizes[a]))) for a in range(objects)},
                         name=f"finset{sizes}:{len(arrows)}")


def random_category(rng: random.Random, max_objects: int = 4, max_arrows: int = 12) -> ncat.StrictNCat:
    """A random finite 1-category with at most max_objects objects."""
    while True:
        kind = rng.choice(["poset", "monoid", "groupoid", "finset", "sum"])
        if kind == "poset":
            return random_poset(rng, rng.randint(1, max_objects))
        if kind == "monoid":
            size = rng.randint(1, 3)
            return monoid(size, rng.randrange(len(monoid_tables(size))))
        if kind == "groupoid":
            k = rng.randint(1, min(3, max_objects))
            g = rng.choice([1, 2, 3])
            if k * k * g <= max_arrows:
                return group_groupoid(k, cyclic_group(g))
        if kind == "finset":
            C = finset_category(rng, rng.randint(1, max_objects), rng.randint(1, 4), max_arrows)
            if C is not None:
                return C
        if kind == "sum" and max_objects >= 2:
            a = random_poset(rng, 1) if rng.random() < 0.5 else monoid(2, rng.randrange(2))
            b = group_groupoid(1, cyclic_group(2)) if rng.random() < 0.5 else chain(1)
            return coproduct_category([a, b])


# ---------------------------------------------------------------------------
# 2-categories


def double_delooping(M: ncat.StrictNCat, name="") -> ncat.StrictNCat:
    """One object, one 1-cell, 2-cells a commutative monoid (both compositions its product)."""
    if M.n != 1 or len(M.cells[0]) != 1:
        raise StructureError("needs a one-object category")
    mult = M.comp[1][0]
    for a in M.cells[1]:
        for b in M.cells[1]:
            if mult[(a, b)] != mult[(b, a)]:
                raise StructureError("the monoid must be commutative")
    unit = M.ident[0][M.cells[0][0]]
    cells = [["*"], ["1"], [("m", x) for x in M.cells[1]]]
    src = [None, {"1": "*"}, {("m", x): "1" for x in M.cells[1]}]
    ident = [{"*": "1"}, {"1": ("m", unit)}]

    def compose(j, b, a):
        if b == "1":
            return "1"
        return ("m", mult[(b[1], a[1])])

    return ncat.build(2, cells, src, src, ident, compose, name=name or f"B2({M.name})")


def free_cells(level: int, max_size: int) -> list:
    return [ncat.tau(o) for o in th.enumerate_objects(level, max_size)]


def rigidity_corpus(seed: int = 0) -> list:
    """A fixed mix of at least 30 strict 1- and 2-categories, with their expected rigidity unknown."""
    rng = random.Random(seed)
    out = [chain(0), chain(1), chain(2), ncat.chaotic_groupoid([0, 1]), ncat.chaotic_groupoid([0, 1, 2])]
    out += [random_poset(rng, k) for k in (2, 3, 3, 4)]
    out += [monoid(2, i) for i in range(len(monoid_tables(2)))]
    out += [monoid(3, i) for i in rng.sample(range(len(monoid_tables(3))), 4)]
    out += [group_groupoid(1, cyclic_group(2)), group_groupoid(2, cyclic_group(2)),
            group_groupoid(1, cyclic_group(3))]
    while sum(1 for C in out if C.name.startswith("finset")) < 4:
        C = finset_category(rng, rng.randint(1, 3), rng.randint(1, 3))
        if C is not None:
            out.append(C)
    out.append(coproduct_category([chain(1), group_groupoid(1, cyclic_group(2))]))
    # 2-categories
    out += [ncat.tau(o) for o in th.enumerate_objects(2, 3) if o.size >= 2]
    out += [ncat.suspend_category(D) for D in (chain(0), chain(1), ncat.chaotic_groupoid([0, 1]),
                                               monoid(2, 0), monoid(2, 1))]
    out += [ncat.terminal_ncat(2), double_delooping(monoid(2, 0)), double_delooping(monoid(2, 1))]
    return out


# ---------------------------------------------------------------------------
# Delta-presheaves


def random_delta_presheaf(rng: random.Random, bound: int = 3) -> ps.FinPresheaf:
    """Nerves, their sums and products, and subobjects of representables."""
    win = ps.window(1, bound)
    kind = rng.choice(["nerve", "subobject", "sum", "product", "representable"])
    if kind == "nerve":
        return ncat.dnerve(random_category(rng, 3, 9), win)
    if kind == "subobject":
        m = rng.randint(1, 3)
        K = rng.choice(dl.all_subobjects(m))
        F = ps.yoneda(th.simplex(m, 1), win)
        return ps.subpresheaf(F, lambda o, f, K=K: K.contains(f.delta), name=f"K{K.face_strings()}")
    if kind == "sum":
        a = ps.yoneda(th.simplex(rng.randint(0, 2), 1), win)
        b = ncat.dnerve(random_category(rng, 2, 6), win)
        return ps.coproduct([a, b])
    if kind == "product":
        a = ps.yoneda(th.simplex(rng.randint(0, 2), 1), win)
        b = ps.yoneda(th.simplex(rng.randint(0, 2), 1), win)
        return ps.product([a, b])
    return ps.yoneda(th.simplex(rng.randint(0, bound), 1), win)


def random_discrete_set(rng: random.Random, lo: int = 1, hi: int = 3) -> ps.FinPresheaf:
    return ps.constant_presheaf(ps.window(0, 0), list(range(rng.randint(lo, hi))))


def random_delta_input(rng: random.Random, bound: int = 3) -> ps.FinPresheaf:
    """Small discrete presheaves on Delta used as V-inputs."""
    win = ps.window(1, bound)
    kind = rng.choice(["representable", "nerve", "constant", "subobject"])
    if kind == "representable":
        return ps.yoneda(th.simplex(rng.randint(0, 1), 1), win)
    if kind == "nerve":
        return ncat.dnerve(random_category(rng, 2, 4), win)
    if kind == "constant":
        return ps.constant_presheaf(win, list(range(rng.randint(1, 2))))
    F = ps.yoneda(th.simplex(2, 1), win)
    K = rng.choice([dl.spine(2), dl.boundary(2), dl.vertices(2)])
    return ps.subpresheaf(F, lambda o, f, K=K: K.contains(f.delta), name="K")
