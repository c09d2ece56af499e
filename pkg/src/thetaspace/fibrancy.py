"""Discrete checks for the Segal, completeness, groupoid and truncation conditions.

On set-valued presheaves every space is discrete, so path components are
points and weak equivalences are bijections.  All reports below are exact
statements about finite sets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import cells
from . import intertwine as iv
from . import presheaf as ps
from . import theta as th
from .errors import InvariantViolation, StructureError


# ---------------------------------------------------------------------------
# Segal


@dataclass
class SegalEntry:
    shape: str
    suspensions: int
    source: int
    target: int
    bijective: bool


@dataclass
class DiscreteSegalReport:
    entries: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.bijective for e in self.entries)

    @property
    def witness(self):
        bad = [e for e in self.entries if not e.bijective]
        return bad[0] if bad else None

    def to_json(self) -> dict:
        w = self.witness
        return {"condition": "segal", "passed": self.passed, "shapes": len(self.entries),
                "witness": None if w is None else {"shape": w.shape, "source": w.source,
                                                   "target": w.target}}


def segal_shapes(win: ps.Window) -> list:
    """Pairs (k, base) with sigma^k(base) in the window and base = [r](...), r >= 2."""
    out = []
    for o in win.objects:
        k, base = 0, o
        while True:
            if base.level >= 1 and base.arity >= 2:
                out.append((k, base))
            if base.level >= 1 and base.arity == 1:
                k, base = k + 1, base.children[0]
            else:
                break
    return out


def segal_comparison(X: ps.FinPresheaf, k: int, base) -> SegalEntry:
    r = base.arity
    edges = [th.suspend_morphism_k(th.edge(i, base), k) for i in range(1, r + 1)]
    whole = th.suspend_k(base, k)
    src = X(whole)
    image = {tuple(X.act(e, x) for e in edges) for x in src}
    # count the iterated fibre product by walking along the chain
    counts = None
    for i in range(1, r + 1):
        piece = th.suspend_k(th.suspension(base.children[i - 1]), k)
        v0 = th.suspend_morphism_k(th.vertex(0, th.suspension(base.children[i - 1])), k)
        v1 = th.suspend_morphism_k(th.vertex(1, th.suspension(base.children[i - 1])), k)
        nxt = {}
        for y in X(piece):
            a, b = X.act(v0, y), X.act(v1, y)
            w = 1 if counts is None else counts.get(a, 0)
            if w:
                nxt[b] = nxt.get(b, 0) + w
        counts = nxt
    target = sum(counts.values()) if counts else 0
    bij = len(image) == len(src) == target
    return SegalEntry(str(whole), k, len(src), target, bij)


def check_segal_discrete(X: ps.FinPresheaf) -> DiscreteSegalReport:
    report = DiscreteSegalReport()
    for k, base in segal_shapes(X.window):
        report.entries.append(segal_comparison(X, k, base))
    return report


# ---------------------------------------------------------------------------
# finite categories


class FiniteCategory:
    """A small category given by explicit hom-sets; morphisms are hashable labels."""

    def __init__(self, objects, hom: dict, compose: dict, identity: dict, name=""):
        self.objects = tuple(objects)
        self.homs = {k: tuple(v) for k, v in hom.items()}
        self.comp = dict(compose)
        self.identity = dict(identity)
        self.name = name
        self.ends = {f: (a, b) for (a, b), fs in self.homs.items() for f in fs}

    def hom(self, a, b):
        return self.homs.get((a, b), ())

    def morphisms(self):
        return [f for fs in self.homs.values() for f in fs]

    def check_axioms(self) -> bool:
        for (a, b), fs in self.homs.items():
            for f in fs:
                if self.comp[(self.identity[b], f)] != f or self.comp[(f, self.identity[a])] != f:
                    return False
        for f in self.morphisms():
            a, b = self.ends[f]
            for c in self.objects:
                for g in self.hom(b, c):
                    gf = self.comp[(g, f)]
                    if self.ends[gf] != (a, c):
                        return False
                    for d in self.objects:
                        for h in self.hom(c, d):
                            if self.comp[(h, gf)] != self.comp[(self.comp[(h, g)], f)]:
                                return False
        return True

    def isomorphisms(self) -> list:
        out = []
        for f in self.morphisms():
            a, b = self.ends[f]
            if any(self.comp[(g, f)] == self.identity[a] and self.comp[(f, g)] == self.identity[b]
                   for g in self.hom(b, a)):
                out.append(f)
        return out


def category_of(C) -> FiniteCategory:
    """The FiniteCategory underlying a strict 1-category."""
    homs = {}
    for f in C.cells[1]:
        homs.setdefault((C.src[1][f], C.tgt[1][f]), []).append(f)
    return FiniteCategory(C.cells[0], homs, C.comp[1][0], C.ident[0], name=C.name)


def functors_between(S: FiniteCategory, C: FiniteCategory) -> list:
    """Brute-force functors: object assignment, then morphism assignment with checks."""
    out = []
    smor = S.morphisms()
    for objmap in itertools.product(C.objects, repeat=len(S.objects)):
        om = dict(zip(S.objects, objmap))
        pools = [C.hom(om[S.ends[f][0]], om[S.ends[f][1]]) for f in smor]
        for choice in itertools.product(*pools):
            mm = dict(zip(smor, choice))
            if any(mm[S.identity[a]] != C.identity[om[a]] for a in S.objects):
                continue
            if all(mm[S.comp[(g, f)]] == C.comp[(mm[g], mm[f])]
                   for (g, f) in S.comp):
                out.append((objmap, choice))
    return out


def chaotic_category(k: int = 2) -> FiniteCategory:
    objs = list(range(k))
    homs = {(a, b): [(a, b)] for a in objs for b in objs}
    comp = {((b, c), (a, b)): (a, c) for a in objs for b in objs for c in objs}
    return FiniteCategory(objs, homs, comp, {a: (a, a) for a in objs}, name=f"chaotic{k}")


# ---------------------------------------------------------------------------
# homotopy category of a Segal object


def _cell1(level):
    return th.cell_object(1, level)


def homotopy_category(X: ps.FinPresheaf, check: bool = True) -> FiniteCategory:
    """hX: points of X[0], edges of X([1]([0])), composition through X([2]([0],[0]))."""
    n = X.window.level
    if n == 0:
        raise StructureError("homotopy categories need level >= 1")
    two = th.simplex(2, n)
    if check:
        ent = segal_comparison(X, 0, two)
        if not ent.bijective:
            raise StructureError(f"Segal comparison fails at {ent.shape}: {ent.source} vs {ent.target}")
    one = _cell1(n)
    v0, v1 = th.vertex(0, one), th.vertex(1, one)
    pts = X(th.terminal(n))
    homs = {}
    for f in X(one):
        homs.setdefault((X.act(v0, f), X.act(v1, f)), []).append(f)
    e1, e2 = th.edge(1, two), th.edge(2, two)
    d02 = _long_edge(n)
    comp = {}
    for s in X(two):
        comp[(X.act(e2, s), X.act(e1, s))] = X.act(d02, s)
    p = th.to_terminal(one)
    ident = {x: X.act(p, x) for x in pts}
    return FiniteCategory(pts, homs, comp, ident, name=f"h{X.name}")


def _long_edge(n):
    """delta^{02}: [1]([0]) -> [2]([0],[0]) with the component the identity on [0]."""
    one, two = _cell1(n), th.simplex(2, n)
    t = th.terminal(n - 1)
    return th.ThetaMorphism(one, two, (0, 2), ((th.identity(t), th.identity(t)),))


def equivalences(X: ps.FinPresheaf) -> list:
    return homotopy_category(X).isomorphisms()


def nerve_comparison(X: ps.FinPresheaf) -> bool:
    """T^*X[m] -> chains of m composable edges of hX is bijective for every m in the window."""
    hX = homotopy_category(X)
    n = X.window.level
    m = 0
    while th.simplex(m, n) in X.window:
        sm = th.simplex(m, n)
        if m == 0:
            ok = len(X(sm)) == len(hX.objects)
        else:
            edges = [th.edge(i, sm) for i in range(1, m + 1)]
            image = {tuple(X.act(e, x) for e in edges) for x in X(sm)}
            counts = {}
            for f in hX.morphisms():
                counts[hX.ends[f][1]] = counts.get(hX.ends[f][1], 0) + 1
            for _ in range(m - 1):
                nxt = {}
                for f in hX.morphisms():
                    a, b = hX.ends[f]
                    if counts.get(a):
                        nxt[b] = nxt.get(b, 0) + counts[a]
                counts = nxt
            chains = sum(counts.values())
            ok = len(image) == len(X(sm)) == chains
        if not ok:
            return False
        m += 1
    return True


# ---------------------------------------------------------------------------
# mapping objects between parallel cells


def cell_boundary(X: ps.FinPresheaf, k: int, g):
    """Source and target (k-1)-cells of a k-cell g."""
    s, t = cells.source_target(k, X.window.level)
    return X.act(s, g), X.act(t, g)


def umap(X: ps.FinPresheaf, k: int, f0, f1) -> ps.FinPresheaf:
    """map_X(f0, f1) for parallel (k-1)-cells, by iterating mapping objects."""
    if k < 1:
        raise StructureError("umap needs k >= 1")
    if k == 1:
        return iv.mapping_presheaf(X, f0, f1)
    a0, a1 = cell_boundary(X, k - 1, f0)
    if (a0, a1) != cell_boundary(X, k - 1, f1):
        raise StructureError("cells are not parallel")
    Y = umap(X, k - 1, a0, a1)
    return iv.mapping_presheaf(Y, f0, f1)


def umap_direct(X: ps.FinPresheaf, k: int, f0, f1) -> ps.FinPresheaf:
    """map_X(f0, f1)(theta) = elements of X(sigma^k theta) with boundary (f0, f1)."""
    n = X.window.level
    if k > n:
        raise StructureError("k exceeds the level")
    sub = ps.window(n - k, max(X.window.bound - k, 0))

    def legs(theta):
        one = th.suspension(theta)
        return (th.suspend_morphism_k(th.vertex(0, one), k - 1),
                th.suspend_morphism_k(th.vertex(1, one), k - 1))

    def values(theta):
        s, t = legs(theta)
        return [x for x in X(th.suspend_k(theta, k)) if X.act(s, x) == f0 and X.act(t, x) == f1]

    return ps.FinPresheaf(sub, values, lambda g, x: X.act(th.suspend_morphism_k(g, k), x),
                          name=f"map({f0},{f1})")


def moduli(X: ps.FinPresheaf, k: int):
    """(X(O_k), X(dO_k)); the latter as pairs of parallel (k-1)-cells, via nat_hom."""
    win = X.window
    top = list(X(th.cell_object(k, win.level)))
    if k == 0:
        return top, [()]
    D = cells.boundary_pushout(k, win)
    cell = th.cell_object(k - 1, win.level)
    ident = th.identity(cell)
    pairs = []
    for table in ps.nat_hom(D, X):
        pairs.append((table[(cell, (0, ident))], table[(cell, (1, ident))]))
    return top, pairs


def parallel_pairs(X: ps.FinPresheaf, k: int) -> list:
    """Pairs of (k-1)-cells with equal boundaries, computed by fibre product."""
    if k == 0:
        return [()]
    prev = X(th.cell_object(k - 1, X.window.level))
    if k == 1:
        return [(a, b) for a in prev for b in prev]
    bd = {x: cell_boundary(X, k - 1, x) for x in prev}
    return [(a, b) for a in prev for b in prev if bd[a] == bd[b]]


@dataclass
class CompletenessLevel:
    k: int
    cells_below: int
    equivalences: int
    bijective: bool
    z_route: int | None = None
    e_route: int | None = None


@dataclass
class CompletenessReport:
    levels: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(lv.bijective for lv in self.levels)

    @property
    def witness(self):
        bad = [lv for lv in self.levels if not lv.bijective]
        if not bad:
            return None
        lv = bad[0]
        return {"k": lv.k, "cells_below": lv.cells_below, "equivalences": lv.equivalences}

    def to_json(self) -> dict:
        return {"condition": "complete", "passed": self.passed, "witness": self.witness,
                "levels": [lv.__dict__ for lv in self.levels]}


def fibres(X: ps.FinPresheaf, k: int):
    """(boundary pair, mapping presheaf) whose 1-cells are the k-cells of X."""
    if k == 1:
        return [(None, X)]
    return [((a0, a1), umap(X, k - 1, a0, a1)) for a0, a1 in parallel_pairs(X, k - 1)]


def k_equivalences(X: ps.FinPresheaf, k: int) -> set:
    found = set()
    for _, Y in fibres(X, k):
        if th.simplex(2, Y.window.level) not in Y.window:
            raise StructureError(f"window too small for {k}-equivalences")
        found.update(homotopy_category(Y, check=False).isomorphisms())
    return found


def is_k_equivalence(X: ps.FinPresheaf, k: int, g) -> bool:
    return g in k_equivalences(X, k)


def z_route(Y: ps.FinPresheaf) -> int | None:
    """|Map(Z, T^*Y)|, or None when the window lacks [3]."""
    T = cells.t_star(Y)
    if T.window.bound < 3:
        return None
    Z = cells.build_Z(3)
    T3 = T.restrict(Z.window)
    return len(ps.nat_hom(Z, T3))


def e_route(Y: ps.FinPresheaf) -> int:
    return len(functors_between(chaotic_category(2), homotopy_category(Y, check=False)))


def check_complete_discrete(X: ps.FinPresheaf, routes: bool = True) -> CompletenessReport:
    """X(O_{k-1}) -> X(O_k)^equiv via i_k is bijective for 1 <= k <= n."""
    n = X.window.level
    report = CompletenessReport()
    for k in range(1, n + 1):
        if th.cell_object(k, n) not in X.window:
            raise StructureError(f"window lacks the {k}-cell")
        eq = set()
        z_total, e_total = 0, 0
        for _, Y in fibres(X, k):
            hY = homotopy_category(Y, check=False)
            isos = hY.isomorphisms()
            eq.update(isos)
            if routes:
                z = z_route(Y)
                e = e_route(Y)
                if e != len(isos) or (z is not None and z != len(isos)):
                    raise InvariantViolation(f"equivalence counts disagree: {len(isos)}, Z {z}, E {e}")
                z_total = None if z is None or z_total is None else z_total + z
                e_total += e
        below = X(th.cell_object(k - 1, n))
        p = cells.projection(k, n)
        image = [X.act(p, x) for x in below]
        bij = len(set(image)) == len(image) and set(image) == eq
        report.levels.append(CompletenessLevel(k, len(below), len(eq), bij,
                                               z_total if routes else None,
                                               e_total if routes else None))
    return report


# ---------------------------------------------------------------------------
# groupoids and truncation


@dataclass
class GroupoidReport:
    local: bool
    cond2: bool
    cond3: bool
    constant: bool

    @property
    def passed(self) -> bool:
        return self.cond2

    def to_json(self) -> dict:
        return {"condition": "groupoid", "passed": self.passed, "every_cell_invertible": self.local,
                "cells_bijective": self.cond2, "points_bijective": self.cond3,
                "isomorphic_to_constant": self.constant}


def check_groupoid_discrete(X: ps.FinPresheaf) -> GroupoidReport:
    """Condition (2): X(O_k) -> X(O_{k+1}) bijective; condition (3): X[0] -> X(theta) bijective."""
    n = X.window.level
    win = X.window
    local = True
    for k in range(1, n + 1):
        eq = k_equivalences(X, k)
        if set(X(th.cell_object(k, n))) != eq:
            local = False
    cond2 = True
    for k in range(n):
        p = cells.projection(k + 1, n)
        src = X(th.cell_object(k, n))
        image = [X.act(p, x) for x in src]
        if len(set(image)) != len(image) or len(image) != len(X(th.cell_object(k + 1, n))):
            cond2 = False
    pts = X(th.terminal(n))
    cond3 = True
    for o in win.objects:
        p = th.to_terminal(o)
        image = [X.act(p, x) for x in pts]
        if len(set(image)) != len(image) or len(image) != len(X(o)):
            cond3 = False
    const = ps.constant_presheaf(win, pts)
    phi = ps.PresheafMap(const, X, lambda o, x: X.act(th.to_terminal(o), x))
    constant = phi.check_naturality() and phi.is_iso()
    return GroupoidReport(local, cond2, cond3, constant)


@dataclass
class TruncationReport:
    k: int
    passed: bool
    fibre_sizes: list
    note: str = ""

    def to_json(self):
        return {"condition": "truncation", "k": self.k, "passed": self.passed,
                "fibre_sizes": self.fibre_sizes, "note": self.note}


def check_truncation_discrete(X: ps.FinPresheaf, k: int) -> TruncationReport:
    """Fibres of X(O_n) -> X(dO_n): singletons (k=-2), at most singletons (k=-1)."""
    n = X.window.level
    top = X(th.cell_object(n, n))
    sizes = {}
    pairs = parallel_pairs(X, n)
    for pr in pairs:
        sizes[pr] = 0
    for g in top:
        bd = cell_boundary(X, n, g) if n >= 1 else ()
        sizes[bd] = sizes.get(bd, 0) + 1
    vals = [sizes[pr] for pr in pairs]
    if k == -2:
        return TruncationReport(k, all(v == 1 for v in vals), vals)
    if k == -1:
        return TruncationReport(k, all(v <= 1 for v in vals), vals)
    if k == 0:
        return TruncationReport(k, True, vals)
    if k >= 1:
        return TruncationReport(k, True, vals, note="sets are 0-truncated; the condition is vacuous")
    raise StructureError("truncation index must be >= -2")
