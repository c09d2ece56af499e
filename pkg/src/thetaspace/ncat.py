"""Finite strict n-categories, the functor tau, discrete nerves and rigidity."""
from __future__ import annotations

import itertools
import json
from functools import lru_cache

from . import presheaf as ps
from . import theta as th
from .errors import InvariantViolation, StructureError


class StrictNCat:
    """Cells by dimension with sources, targets, identities and compositions.

    ``comp[d][j]`` maps (b, a) to b o_j a for d-cells with t_j(a) = s_j(b).
    Cell labels are arbitrary hashables.
    """

    def __init__(self, n: int, cells, src, tgt, ident, comp, name: str = ""):
        self.n = n
        self.cells = tuple(tuple(c) for c in cells)
        if len(self.cells) != n + 1:
            raise StructureError("need one cell list per dimension 0..n")
        self.src = [dict(s) for s in src]
        self.tgt = [dict(t) for t in tgt]
        self.ident = [dict(i) for i in ident]
        self.comp = [[dict(c) for c in row] for row in comp]
        self.name = name
        self._dim = {x: d for d, cs in enumerate(self.cells) for x in cs}
        self._by_boundary = None

    def __repr__(self):
        return f"StrictNCat({self.name or '?'}, n={self.n}, cells={[len(c) for c in self.cells]})"

    @property
    def size(self) -> int:
        return sum(len(c) for c in self.cells)

    def dim(self, x) -> int:
        return self._dim[x]

    def s(self, x, j=None):
        d = self._dim[x]
        j = d - 1 if j is None else j
        while d > j:
            x = self.src[d][x]
            d -= 1
        return x

    def t(self, x, j=None):
        d = self._dim[x]
        j = d - 1 if j is None else j
        while d > j:
            x = self.tgt[d][x]
            d -= 1
        return x

    def identity_of(self, x, d=None):
        """Iterated identity of x raised to dimension d (default: one up)."""
        e = self._dim[x]
        d = e + 1 if d is None else d
        while e < d:
            x = self.ident[e][x]
            e += 1
        return x

    def compose(self, j, b, a):
        return self.comp[self._dim[a]][j][(b, a)]

    def parallel(self, d):
        """Cells of dimension d indexed by (source, target)."""
        if self._by_boundary is None:
            self._by_boundary = [{} for _ in range(self.n + 1)]
            for e in range(1, self.n + 1):
                for x in self.cells[e]:
                    self._by_boundary[e].setdefault((self.src[e][x], self.tgt[e][x]), []).append(x)
        return self._by_boundary[d]

    def hom(self, x, y):
        d = self._dim[x] + 1
        return self.parallel(d).get((x, y), [])

    def is_identity(self, x) -> bool:
        d = self._dim[x]
        return d > 0 and self.ident[d - 1].get(self.src[d][x]) == x

    def check_axioms(self, limit: int = 200) -> bool:
        """Globularity, identities, composition boundaries, associativity, units, interchange."""
        if self.size > limit:
            return self._check_sampled()
        return self._check_all()

    def _check_all(self) -> bool:
        n = self.n
        for d in range(2, n + 1):
            for x in self.cells[d]:
                if self.s(self.src[d][x]) != self.s(self.tgt[d][x]):
                    return False
                if self.t(self.src[d][x]) != self.t(self.tgt[d][x]):
                    return False
        for d in range(n):
            for x in self.cells[d]:
                i = self.ident[d][x]
                if self.src[d + 1][i] != x or self.tgt[d + 1][i] != x:
                    return False
        for d in range(1, n + 1):
            for j in range(d):
                table = self.comp[d][j]
                expected = {(b, a) for a in self.cells[d] for b in self.cells[d]
                            if self.t(a, j) == self.s(b, j)}
                if set(table) != expected:
                    return False
                for (b, a), c in table.items():
                    if self.s(c, j) != self.s(a, j) or self.t(c, j) != self.t(b, j):
                        return False
                    if j == d - 1:
                        continue
                    if self.s(c) != table_get(self, d - 1, j, self.s(b), self.s(a)):
                        return False
                    if self.t(c) != table_get(self, d - 1, j, self.t(b), self.t(a)):
                        return False
                # units
                for a in self.cells[d]:
                    lo, hi = self.s(a, j), self.t(a, j)
                    if table[(self.identity_of(hi, d), a)] != a or table[(a, self.identity_of(lo, d))] != a:
                        return False
                # associativity
                for (b, a), ba in table.items():
                    for c in self.cells[d]:
                        if (c, b) in table and table[(c, ba)] != table[(table[(c, b)], a)]:
                            return False
            # identities compose to identities
            if d < n:
                for j in range(d):
                    for (b, a), c in self.comp[d][j].items():
                        if self.comp[d + 1][j][(self.ident[d][b], self.ident[d][a])] != self.ident[d][c]:
                            return False
        # interchange: (b' o_j a') o_i (b o_j a) = (b' o_i b) o_j (a' o_i a) for i > j
        for d in range(2, n + 1):
            for j in range(d):
                for i in range(j + 1, d):
                    ti, tj = self.comp[d][i], self.comp[d][j]
                    for (b, a), ba in tj.items():
                        for (b2, a2), ba2 in tj.items():
                            if (ba2, ba) in ti and (b2, b) in ti and (a2, a) in ti:
                                if ti[(ba2, ba)] != tj[(ti[(b2, b)], ti[(a2, a)])]:
                                    return False
        return True

    def _check_sampled(self) -> bool:
        import random

        rng = random.Random(0)
        for d in range(1, self.n + 1):
            for j in range(d):
                items = list(self.comp[d][j].items())
                for _ in range(min(500, len(items))):
                    (b, a), ba = rng.choice(items)
                    for c in rng.sample(self.cells[d], min(10, len(self.cells[d]))):
                        if (c, b) in self.comp[d][j]:
                            if self.comp[d][j][(c, ba)] != self.comp[d][j][(self.comp[d][j][(c, b)], a)]:
                                return False
        return True

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        index = [{x: i for i, x in enumerate(cs)} for cs in self.cells]
        labels = getattr(self, "labels", {})
        out = {"format": "thetaspace.ncat/1", "n": self.n, "name": self.name,
               "cells": [[labels.get(x, _label(x)) for x in cs] for cs in self.cells],
               "source": [[index[d - 1][self.src[d][x]] for x in self.cells[d]] for d in range(1, self.n + 1)],
               "target": [[index[d - 1][self.tgt[d][x]] for x in self.cells[d]] for d in range(1, self.n + 1)],
               "identity": [[index[d + 1][self.ident[d][x]] for x in self.cells[d]] for d in range(self.n)],
               "compose": []}
        for d in range(1, self.n + 1):
            rows = []
            for j in range(d):
                rows.append(sorted([index[d][b], index[d][a], index[d][c]]
                                   for (b, a), c in self.comp[d][j].items()))
            out["compose"].append(rows)
        return out


def table_get(C, d, j, b, a):
    if d <= j:
        return b if b == a else None
    return C.comp[d][j].get((b, a))


def _label(x):
    return x if isinstance(x, str) else str(x)


def from_json(data: dict) -> StrictNCat:
    if data.get("format") != "thetaspace.ncat/1":
        raise StructureError("not an n-category file")
    n = int(data["n"])
    cells = [[(d, i) for i in range(len(cs))] for d, cs in enumerate(data["cells"])]
    src = [{}] + [{(d, i): (d - 1, v) for i, v in enumerate(data["source"][d - 1])} for d in range(1, n + 1)]
    tgt = [{}] + [{(d, i): (d - 1, v) for i, v in enumerate(data["target"][d - 1])} for d in range(1, n + 1)]
    ident = [{(d, i): (d + 1, v) for i, v in enumerate(data["identity"][d])} for d in range(n)]
    comp = [[]] + [[{((d, b), (d, a)): (d, c) for b, a, c in data["compose"][d - 1][j]} for j in range(d)]
                   for d in range(1, n + 1)]
    labels = {(d, i): lab for d, cs in enumerate(data["cells"]) for i, lab in enumerate(cs)}
    C = StrictNCat(n, cells, src, tgt, ident, comp, name=data.get("name", ""))
    C.labels = labels
    return C


def dumps(C: StrictNCat) -> str:
    return json.dumps(C.to_json(), indent=1) + "\n"


# ---------------------------------------------------------------------------
# builders


def build(n, cells, src, tgt, ident, compose, name="") -> StrictNCat:
    """Tabulate compositions from a function compose(j, b, a) over composable pairs."""
    cells = [list(c) for c in cells]
    src = [{}] + [dict(src[d]) for d in range(1, n + 1)]
    tgt = [{}] + [dict(tgt[d]) for d in range(1, n + 1)]
    C = StrictNCat(n, cells, src, tgt, ident, [[]] + [[{} for _ in range(d)] for d in range(1, n + 1)], name)
    for d in range(1, n + 1):
        for j in range(d):
            groups = {}
            for b in cells[d]:
                groups.setdefault(C.s(b, j), []).append(b)
            for a in cells[d]:
                for b in groups.get(C.t(a, j), ()):
                    C.comp[d][j][(b, a)] = compose(j, b, a)
    return C


def category(objects, arrows, compose, identities, name="") -> StrictNCat:
    """A 1-category from arrows {label: (src, tgt)}, compose(g, f) and identities {obj: label}."""
    arrows = dict(arrows)
    return build(1, [list(objects), list(arrows)],
                 [None, {a: st[0] for a, st in arrows.items()}],
                 [None, {a: st[1] for a, st in arrows.items()}],
                 [dict(identities)], lambda j, b, a: compose(b, a), name)


def poset_category(elements, leq, name="") -> StrictNCat:
    elements = list(elements)
    arrows = {(a, b): (a, b) for a in elements for b in elements if leq(a, b)}
    return category(elements, arrows, lambda g, f: (f[0], g[1]), {a: (a, a) for a in elements},
                    name or "poset")


def monoid_category(elements, mult, unit, name="") -> StrictNCat:
    return category(["*"], {e: ("*", "*") for e in elements}, lambda g, f: mult(g, f),
                    {"*": unit}, name or "monoid")


def chaotic_groupoid(objects, name="") -> StrictNCat:
    objects = list(objects)
    return poset_category(objects, lambda a, b: True, name or f"chaotic{len(objects)}")


def terminal_ncat(n: int) -> StrictNCat:
    cells = [["*"]] + [[("id", d)] for d in range(1, n + 1)]
    prev = lambda d: "*" if d == 1 else ("id", d - 1)
    return build(n, cells, [None] + [{("id", d): prev(d)} for d in range(1, n + 1)],
                 [None] + [{("id", d): prev(d)} for d in range(1, n + 1)],
                 [{prev(d + 1): ("id", d + 1)} for d in range(n)],
                 lambda j, b, a: a, name="terminal")


def suspend_category(D: StrictNCat, name="") -> StrictNCat:
    """Two objects 0, 1 with hom(0,1) = D and trivial endomorphisms."""
    n = D.n + 1
    cells = [[0, 1]]
    for d in range(1, n + 1):
        row = [("id", p, d) for p in (0, 1)] + [("c", x) for x in D.cells[d - 1]]
        cells.append(row)
    src = [None]
    tgt = [None]
    for d in range(1, n + 1):
        s, t = {}, {}
        for p in (0, 1):
            s[("id", p, d)] = p if d == 1 else ("id", p, d - 1)
            t[("id", p, d)] = s[("id", p, d)]
        for x in D.cells[d - 1]:
            s[("c", x)] = 0 if d == 1 else ("c", D.src[d - 1][x])
            t[("c", x)] = 1 if d == 1 else ("c", D.tgt[d - 1][x])
        src.append(s)
        tgt.append(t)
    ident = []
    for d in range(n):
        row = {}
        for p in (0, 1):
            row[p if d == 0 else ("id", p, d)] = ("id", p, d + 1)
        if d >= 1:
            for x in D.cells[d - 1]:
                row[("c", x)] = ("c", D.ident[d - 1][x])
        ident.append(row)

    def compose(j, b, a):
        if j == 0:
            if b[0] == "id":
                return a
            return b
        if b[0] == "id":
            return b
        return ("c", D.comp[D.dim(b[1])][j - 1][(b[1], a[1])])

    return build(n, cells, src, tgt, ident, compose, name or f"S({D.name})")


# ---------------------------------------------------------------------------
# tau


def _complexity(x) -> int:
    if isinstance(x, int) or x[0] == x[1]:
        return 0
    return x[1] - x[0] + sum(_complexity(y) for y in x[2])


def _cell_dim(x) -> int:
    # identities at p are (p, p, d); other d-cells are (p, q, (d-1 cells))
    if isinstance(x, int):
        return 0
    if x[0] == x[1]:
        return x[2]
    return 1 + _cell_dim(x[2][0])


@lru_cache(maxsize=None)
def tau(theta) -> StrictNCat:
    """The strict n-category freely presented by a pasting diagram."""
    n = theta.level
    if n == 0:
        return StrictNCat(0, [[0]], [{}], [{}], [], [[]], name=".")
    kids = [tau(c) for c in theta.children]
    m = theta.arity
    cells = [list(range(m + 1))]
    for d in range(1, n + 1):
        row = []
        for p in range(m + 1):
            row.append((p, p, d))
            for q in range(p + 1, m + 1):
                pools = [kids[i - 1].cells[d - 1] for i in range(p + 1, q + 1)]
                row.extend((p, q, xs) for xs in itertools.product(*pools))
        row.sort(key=lambda x: (_complexity(x), repr(x)))
        cells.append(row)

    def src_of(x, d):
        p, q, xs = x
        if d == 1:
            return p
        if p == q:
            return (p, p, d - 1)
        return (p, q, tuple(kids[i].src[d - 1][y] for i, y in zip(range(p, q), xs)))

    def tgt_of(x, d):
        p, q, xs = x
        if d == 1:
            return q
        if p == q:
            return (p, p, d - 1)
        return (p, q, tuple(kids[i].tgt[d - 1][y] for i, y in zip(range(p, q), xs)))

    src = [None] + [{x: src_of(x, d) for x in cells[d]} for d in range(1, n + 1)]
    tgt = [None] + [{x: tgt_of(x, d) for x in cells[d]} for d in range(1, n + 1)]
    ident = [{p: (p, p, 1) for p in cells[0]}]
    for d in range(1, n):
        row = {}
        for x in cells[d]:
            p, q, xs = x
            row[x] = (p, p, d + 1) if p == q else (p, q, tuple(kids[i].ident[d - 1][y] for i, y in zip(range(p, q), xs)))
        ident.append(row)

    def compose(j, b, a):
        if j == 0:
            if a[0] == a[1]:
                return b
            if b[0] == b[1]:
                return a
            return (a[0], b[1], a[2] + b[2])
        p, q, xs = a
        if p == q:
            return a
        return (p, q, tuple(kids[i].comp[kids[i].dim(y)][j - 1][(z, y)]
                            for i, y, z in zip(range(p, q), xs, b[2])))

    return build(n, cells, src, tgt, ident, compose, name=str(theta))


@lru_cache(maxsize=None)
def tau_map(f: th.ThetaMorphism):
    """tau on morphisms, as a dict from cells of tau(source) to cells of tau(target)."""
    S = tau(f.source)
    if f.level == 0:
        return {0: 0}
    delta = f.delta
    sub = {}

    def image(x):
        if isinstance(x, int):
            return delta[x]
        p, q, xs = x
        lo, hi = delta[p], delta[q]
        if p == q or lo == hi:
            return (lo, lo, _cell_dim(x))
        ys = []
        for j in range(lo + 1, hi + 1):
            i = next(i for i in range(p + 1, q + 1) if delta[i - 1] < j <= delta[i])
            g = f.components[i - 1][j - delta[i - 1] - 1]
            if g not in sub:
                sub[g] = tau_map(g)
            ys.append(sub[g][xs[i - p - 1]])
        return (lo, hi, tuple(ys))

    return {x: image(x) for cs in S.cells for x in cs}


# ---------------------------------------------------------------------------
# functors


def functors(S: StrictNCat, C: StrictNCat, limit=None) -> list:
    """All strict functors S -> C, as tuples aligned with S's flattened cells."""
    if S.n != C.n:
        raise StructureError("functors between categories of different dimension")
    order = [x for cs in S.cells for x in cs]
    pos = {x: i for i, x in enumerate(order)}
    forced_id = {}
    for d in range(S.n):
        for x, i in S.ident[d].items():
            forced_id[i] = x
    checks = [[] for _ in order]
    for d in range(1, S.n + 1):
        for j in range(d):
            for (b, a), c in S.comp[d][j].items():
                last = max(pos[a], pos[b], pos[c])
                checks[last].append((j, b, a, c))
    C.parallel(1)
    out = []
    image = {}

    def ok_at(x):
        for j, b, a, c in checks[pos[x]]:
            fa, fb = image[a], image[b]
            if C.comp[C.dim(fa)][j].get((fb, fa)) != image[c]:
                return False
        return True

    def candidates(x, d):
        if x in forced_id:
            return (C.identity_of(image[forced_id[x]]),)
        for j, b, a, c in checks[pos[x]]:
            if c == x and pos[a] < pos[x] and pos[b] < pos[x]:
                v = C.comp[d][j].get((image[b], image[a]))
                return (v,) if v is not None else ()
        if d == 0:
            return C.cells[0]
        return C.parallel(d).get((image[S.src[d][x]], image[S.tgt[d][x]]), ())

    dims = [S.dim(x) for x in order]

    def search(k):
        if limit is not None and len(out) >= limit:
            return
        if k == len(order):
            out.append(tuple(image[x] for x in order))
            return
        x = order[k]
        for v in candidates(x, dims[k]):
            image[x] = v
            if ok_at(x):
                search(k + 1)
        image.pop(x, None)

    search(0)
    return out


def functor_count(S, C) -> int:
    return len(functors(S, C))


@lru_cache(maxsize=None)
def _cell_order(theta):
    S = tau(theta)
    order = [x for cs in S.cells for x in cs]
    return order, {x: i for i, x in enumerate(order)}


def dnerve(C: StrictNCat, win: ps.Window) -> ps.FinPresheaf:
    """theta -> strict functors tau(theta) -> C, acting by precomposition."""
    if win.level != C.n:
        raise StructureError("window level must match the dimension of C")
    cache = {}

    def values(o):
        if o not in cache:
            cache[o] = functors(tau(o), C)
        return cache[o]

    def action(f, F):
        src_order, _ = _cell_order(f.source)
        _, tgt_pos = _cell_order(f.target)
        tm = tau_map(f)
        return tuple(F[tgt_pos[tm[x]]] for x in src_order)

    return ps.FinPresheaf(win, values, action, name=f"N({C.name})")


def functor_to_morphism_table(win: ps.Window, theta) -> dict:
    """The bijection Theta(psi, theta) -> Funct(tau psi, tau theta) on window objects."""
    out = {}
    for o in win.objects:
        order, _ = _cell_order(o)
        _, tpos = _cell_order(theta)
        for f in win.hom(o, theta):
            tm = tau_map(f)
            out[(o, f)] = tuple(tm[x] for x in order)
    return out


def check_yoneda_nerve(theta, win: ps.Window) -> bool:
    """F theta and dnerve(tau theta) agree by a natural bijection on the window."""
    X = dnerve(tau(theta), win)
    F = ps.yoneda(theta, win)
    table = functor_to_morphism_table(win, theta)
    phi = ps.PresheafMap(F, X, lambda o, f: table[(o, f)])
    return phi.check_naturality() and phi.is_iso()


# ---------------------------------------------------------------------------
# isomorphisms, equivalences, rigidity


def k_inverses(C: StrictNCat, g):
    d = C.dim(g)
    x, y = C.src[d][g], C.tgt[d][g]
    idx, idy = C.identity_of(x), C.identity_of(y)
    return [f for f in C.hom(y, x)
            if C.comp[d][d - 1][(f, g)] == idx and C.comp[d][d - 1][(g, f)] == idy]


def is_k_isomorphism(C: StrictNCat, g, k: int | None = None) -> bool:
    if k is not None and C.dim(g) != k:
        raise StructureError(f"{g} is not a {k}-cell")
    return bool(k_inverses(C, g))


def equivalence_sets(C: StrictNCat) -> dict:
    """k-equivalences for every k >= 1, by downward induction from the top dimension."""
    n = C.n
    equiv = {}
    if n == 0:
        return equiv
    equiv[n] = {g for g in C.cells[n] if k_inverses(C, g)}
    for k in range(n - 1, 0, -1):
        def sim(f, g, k=k):
            if f == g:
                return True
            return any(h in equiv[k + 1] for h in C.hom(f, g))

        found = set()
        for g in C.cells[k]:
            x, y = C.src[k][g], C.tgt[k][g]
            idx, idy = C.identity_of(x), C.identity_of(y)
            back = C.hom(y, x)
            right = any(sim(C.comp[k][k - 1][(g, f)], idy) for f in back)
            left = any(sim(C.comp[k][k - 1][(h, g)], idx) for h in back)
            if right and left:
                found.add(g)
        equiv[k] = found
    return equiv


def is_k_equivalence_ncat(C: StrictNCat, g, k: int | None = None) -> bool:
    d = C.dim(g)
    if k is not None and d != k:
        raise StructureError(f"{g} is not a {k}-cell")
    return g in equivalence_sets(C)[d]


def rigid_conditions(C: StrictNCat) -> dict:
    equiv = equivalence_sets(C)
    isos_ok = all(C.is_identity(g) for k in range(1, C.n + 1) for g in C.cells[k] if k_inverses(C, g))
    equiv_ok = all(C.is_identity(g) for k in equiv for g in equiv[k])
    return {"isomorphisms_are_identities": isos_ok, "equivalences_are_identities": equiv_ok}


def is_rigid(C: StrictNCat) -> bool:
    cond = rigid_conditions(C)
    if cond["isomorphisms_are_identities"] != cond["equivalences_are_identities"]:
        raise InvariantViolation(f"rigidity conditions disagree on {C!r}: {cond}")
    return cond["isomorphisms_are_identities"]


def check_rigid_iff_complete(C: StrictNCat, win: ps.Window) -> dict:
    from . import fibrancy

    rigid = is_rigid(C)
    X = dnerve(C, win)
    seg = fibrancy.check_segal_discrete(X)
    comp = fibrancy.check_complete_discrete(X) if seg.passed else None
    complete = bool(seg.passed and comp.passed)
    if rigid != complete:
        raise InvariantViolation(f"rigid={rigid} but complete={complete} for {C!r}")
    return {"rigid": rigid, "segal": seg.passed, "complete": complete,
            "witness": comp.witness if comp else seg.witness}
