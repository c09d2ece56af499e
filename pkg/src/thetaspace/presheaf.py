"""Finite set-valued presheaves tabulated on a size-bounded window of Theta_n."""
from __future__ import annotations

import json
import random
from functools import lru_cache
from typing import Callable, Sequence

from . import theta as th
from .errors import NotPresented, StructureError, WindowExhaustion


class Window:
    """The full subcategory of Theta_level on trees of size <= bound."""

    def __init__(self, level: int, bound: int):
        if level < 0 or bound < 0:
            raise StructureError("window level and bound must be non-negative")
        self.level = level
        self.bound = bound
        self.objects = tuple(th.enumerate_objects(level, bound))
        self.index = {o: i for i, o in enumerate(self.objects)}
        self._hom = {}
        self._into = {}

    def __repr__(self):
        return f"Window(level={self.level}, bound={self.bound})"

    def __eq__(self, other):
        return isinstance(other, Window) and (self.level, self.bound) == (other.level, other.bound)

    def __hash__(self):
        return hash((self.level, self.bound))

    def __contains__(self, theta):
        return theta in self.index

    def require(self, theta):
        if theta not in self.index:
            raise WindowExhaustion(f"object outside {self!r}", theta)

    def hom(self, a, b) -> tuple:
        key = (a, b)
        if key not in self._hom:
            self.require(a)
            self.require(b)
            self._hom[key] = tuple(th.enumerate_hom(a, b))
        return self._hom[key]

    def morphisms_into(self, b) -> list:
        if b not in self._into:
            self._into[b] = [f for a in self.objects for f in self.hom(a, b)]
        return self._into[b]

    def morphisms(self):
        for a in self.objects:
            for b in self.objects:
                yield from self.hom(a, b)

    def morphism_count(self) -> int:
        return sum(len(self.hom(a, b)) for a in self.objects for b in self.objects)

    def morphism_id(self, f) -> str:
        return f"{f.source}->{f.target}#{self.hom(f.source, f.target).index(f)}"

    @property
    def terminal(self):
        return th.terminal(self.level)


@lru_cache(maxsize=None)
def window(level: int, bound: int) -> Window:
    return Window(level, bound)


class FinPresheaf:
    """A presheaf of finite sets on a window.

    ``values(theta)`` lists the elements of X(theta) in a fixed order and
    ``action(f, x)`` is X(f)(x) for f: a -> b and x in X(b).  Values are
    computed lazily and cached.  ``presented`` records that X is a colimit of
    representables at window objects, which is what makes hom-sets out of X
    computable exactly on the window.
    """

    def __init__(self, win: Window, values: Callable, action: Callable,
                 presented: bool = False, name: str = ""):
        self.window = win
        self._values = values
        self._action = action
        self.presented = presented
        self.name = name
        self._cache = {}
        self._sets = {}

    def __repr__(self):
        return f"FinPresheaf({self.name or '?'}, {self.window!r})"

    def __call__(self, theta) -> tuple:
        v = self._cache.get(theta)
        if v is None:
            self.window.require(theta)
            v = tuple(self._values(theta))
            self._cache[theta] = v
        return v

    def elements(self, theta) -> frozenset:
        s = self._sets.get(theta)
        if s is None:
            s = frozenset(self(theta))
            self._sets[theta] = s
        return s

    def act(self, f, x):
        return self._action(f, x)

    def sizes(self) -> dict:
        return {o: len(self(o)) for o in self.window.objects}

    def tabulate(self) -> "FinPresheaf":
        table = {}
        for f in self.window.morphisms():
            table[f] = {x: self.act(f, x) for x in self(f.target)}
        values = {o: self(o) for o in self.window.objects}
        return FinPresheaf(self.window, values.__getitem__, lambda f, x: table[f][x],
                           presented=self.presented, name=self.name)

    def check_functoriality(self, exhaustive_limit: int = 200, samples: int = 2000,
                            seed: int = 0) -> bool:
        """Identity and composition laws; exhaustive on small windows."""
        win = self.window
        for o in win.objects:
            ident = th.identity(o)
            for x in self(o):
                if self.act(ident, x) != x:
                    return False
        for f in win.morphisms():
            sa = self.elements(f.source)
            for x in self(f.target):
                if self.act(f, x) not in sa:
                    return False
        if win.morphism_count() <= exhaustive_limit:
            pairs = ((f, g) for f in win.morphisms() for g in win.morphisms_into_from(f.target))
        else:
            rng = random.Random(seed)
            morphs = list(win.morphisms())
            pairs = []
            for _ in range(samples):
                f = rng.choice(morphs)
                outs = [g for b in win.objects for g in win.hom(f.target, b)]
                pairs.append((f, rng.choice(outs)))
        for f, g in pairs:
            gf = th.compose_theta(g, f)
            for x in self(g.target):
                if self.act(gf, x) != self.act(f, self.act(g, x)):
                    return False
        return True

    def restrict(self, win: Window) -> "FinPresheaf":
        if win.level != self.window.level or win.bound > self.window.bound:
            raise StructureError("can only restrict to a smaller window at the same level")
        return FinPresheaf(win, self._values, self._action, self.presented, self.name)


def _morphisms_from(self, a):
    return [g for b in self.objects for g in self.hom(a, b)]


Window.morphisms_into_from = _morphisms_from


class PresheafMap:
    """A natural transformation given by its components."""

    def __init__(self, source: FinPresheaf, target: FinPresheaf, component: Callable, name=""):
        if source.window != target.window:
            raise StructureError("maps need a shared window")
        self.source = source
        self.target = target
        self._component = component
        self.name = name

    def __call__(self, theta, x):
        return self._component(theta, x)

    def check_naturality(self) -> bool:
        X, Y = self.source, self.target
        for o in X.window.objects:
            ty = Y.elements(o)
            for x in X(o):
                if self(o, x) not in ty:
                    return False
        for f in X.window.morphisms():
            for x in X(f.target):
                if self(f.source, X.act(f, x)) != Y.act(f, self(f.target, x)):
                    return False
        return True

    def is_mono(self) -> bool:
        return all(len({self(o, x) for x in self.source(o)}) == len(self.source(o))
                   for o in self.source.window.objects)

    def is_iso(self) -> bool:
        for o in self.source.window.objects:
            image = {self(o, x) for x in self.source(o)}
            if len(image) != len(self.source(o)) or image != self.target.elements(o):
                return False
        return True

    def image_at(self, theta) -> set:
        return {self(theta, x) for x in self.source(theta)}


def compose_maps(g: PresheafMap, f: PresheafMap) -> PresheafMap:
    return PresheafMap(f.source, g.target, lambda o, x: g(o, f(o, x)))


def identity_map(X: FinPresheaf) -> PresheafMap:
    return PresheafMap(X, X, lambda o, x: x)


# ---------------------------------------------------------------------------
# basic presheaves


def yoneda(theta, win: Window) -> FinPresheaf:
    """F(theta) restricted to the window; elements are morphisms into theta."""
    if theta.level != win.level:
        raise StructureError("yoneda: level mismatch")
    return FinPresheaf(
        win,
        lambda o: th.enumerate_hom(o, theta),
        lambda f, x: th.compose_theta(x, f),
        presented=theta in win,
        name=f"F{theta}",
    )


def terminal_presheaf(win: Window) -> FinPresheaf:
    return FinPresheaf(win, lambda o: ("*",), lambda f, x: x, presented=True, name="1")


def initial_presheaf(win: Window) -> FinPresheaf:
    return FinPresheaf(win, lambda o: (), lambda f, x: x, presented=True, name="0")


def constant_presheaf(win: Window, values: Sequence) -> FinPresheaf:
    vals = tuple(values)
    return FinPresheaf(win, lambda o: vals, lambda f, x: x, name="const")


def subpresheaf(X: FinPresheaf, keep: Callable, name="", presented=False) -> FinPresheaf:
    """The subpresheaf of elements satisfying keep(theta, x); closure is the caller's job."""
    return FinPresheaf(X.window, lambda o: [x for x in X(o) if keep(o, x)], X.act,
                       presented=presented, name=name or f"sub({X.name})")


def image_presheaf(f: PresheafMap, name="") -> FinPresheaf:
    Y = f.target
    return FinPresheaf(Y.window, lambda o: [y for y in Y(o) if y in f.image_at(o)], Y.act,
                       name=name or "image")


# ---------------------------------------------------------------------------
# limits and colimits (levelwise)


def _shared_window(Xs):
    wins = {X.window for X in Xs}
    if len(wins) > 1:
        raise StructureError("diagram objects live on different windows")
    return wins.pop() if wins else None


def product(Xs: Sequence[FinPresheaf], win: Window | None = None) -> FinPresheaf:
    import itertools

    Xs = list(Xs)
    w = _shared_window(Xs) or win
    if w is None:
        raise StructureError("empty product needs a window")
    return FinPresheaf(
        w,
        lambda o: itertools.product(*(X(o) for X in Xs)),
        lambda f, x: tuple(X.act(f, xi) for X, xi in zip(Xs, x)),
        name=" x ".join(X.name for X in Xs) or "1",
    )


def coproduct(Xs: Sequence[FinPresheaf], win: Window | None = None) -> FinPresheaf:
    Xs = list(Xs)
    w = _shared_window(Xs) or win
    if w is None:
        raise StructureError("empty coproduct needs a window")
    return FinPresheaf(
        w,
        lambda o: [(i, x) for i, X in enumerate(Xs) for x in X(o)],
        lambda f, x: (x[0], Xs[x[0]].act(f, x[1])),
        presented=all(X.presented for X in Xs),
        name=" + ".join(X.name for X in Xs) or "0",
    )


def coproduct_injection(Xs, i, C) -> PresheafMap:
    return PresheafMap(Xs[i], C, lambda o, x: (i, x))


def finite_limit(nodes: Sequence[FinPresheaf], edges) -> FinPresheaf:
    """Limit of a finite diagram; edges are (i, j, map X_i -> X_j).

    Elements are tuples (x_0, ..., x_k) compatible along every edge.
    """
    import itertools

    nodes = list(nodes)
    edges = list(edges)
    w = _shared_window(nodes)

    def values(o):
        out = []
        for combo in itertools.product(*(X(o) for X in nodes)):
            if all(phi(o, combo[i]) == combo[j] for i, j, phi in edges):
                out.append(combo)
        return out

    return FinPresheaf(w, values, lambda f, x: tuple(X.act(f, xi) for X, xi in zip(nodes, x)),
                       name="lim")


def pullback(f: PresheafMap, g: PresheafMap) -> FinPresheaf:
    """X x_Z Y with elements (x, y)."""
    X, Y = f.source, g.source
    if f.target is not g.target and f.target.window != g.target.window:
        raise StructureError("pullback of maps with different targets")

    def values(o):
        by_z = {}
        for y in Y(o):
            by_z.setdefault(g(o, y), []).append(y)
        return [(x, y) for x in X(o) for y in by_z.get(f(o, x), ())]

    return FinPresheaf(X.window, values, lambda h, p: (X.act(h, p[0]), Y.act(h, p[1])),
                       name=f"{X.name} x_Z {Y.name}")


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b, order):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if order[rb] < order[ra]:
            ra, rb = rb, ra
        self.parent[rb] = ra


def colimit_classes(o, nodes, edges):
    """Union-find classes of the levelwise colimit at o.

    Returns (representatives in order, map tagged element -> representative).
    A representative is the first tagged element (i, x) of its class in node
    order, so results are deterministic.
    """
    uf = _UnionFind()
    order = {}
    for i, X in enumerate(nodes):
        for x in X(o):
            t = (i, x)
            order[t] = len(order)
            uf.add(t)
    for i, j, phi in edges:
        for x in nodes[i](o):
            uf.union((i, x), (j, phi(o, x)), order)
    rep = {t: uf.find(t) for t in order}
    reps = [t for t in order if rep[t] == t]
    return reps, rep


def finite_colimit(nodes: Sequence[FinPresheaf], edges, name="colim") -> FinPresheaf:
    """Colimit of a finite diagram; edges are (i, j, map X_i -> X_j)."""
    nodes = list(nodes)
    edges = list(edges)
    w = _shared_window(nodes)
    cache = {}

    def classes(o):
        if o not in cache:
            cache[o] = colimit_classes(o, nodes, edges)
        return cache[o]

    def action(f, x):
        i, y = x
        return classes(f.source)[1][(i, nodes[i].act(f, y))]

    C = FinPresheaf(w, lambda o: classes(o)[0], action,
                    presented=all(X.presented for X in nodes), name=name)
    C.legs = [PresheafMap(X, C, (lambda i: lambda o, x: classes(o)[1][(i, x)])(i))
              for i, X in enumerate(nodes)]
    return C


def pushout(f: PresheafMap, g: PresheafMap, name="pushout") -> FinPresheaf:
    """B +_A C for f: A -> B, g: A -> C; representatives favour B, then C."""
    A, B, Cc = f.source, f.target, g.target
    P = finite_colimit([B, Cc, A], [(2, 0, f), (2, 1, g)], name=name)
    return P


def poset_colimit(elements, leq, diagram: Callable, transition: Callable, name="colim") -> FinPresheaf:
    """Colimit over a finite poset; diagram(p) is a presheaf, transition(p, q) a map for p <= q."""
    elements = list(elements)
    nodes = [diagram(p) for p in elements]
    edges = []
    for a, p in enumerate(elements):
        for b, q in enumerate(elements):
            if a != b and leq(p, q):
                edges.append((a, b, transition(p, q)))
    return finite_colimit(nodes, edges, name=name)


def global_sections(X: FinPresheaf) -> tuple:
    t = X.window.terminal
    if t not in X.window:
        raise WindowExhaustion("window lacks the terminal object", t)
    return X(t)


# ---------------------------------------------------------------------------
# hom-sets of presheaves


def nat_hom(A: FinPresheaf, X: FinPresheaf, require_presented: bool = True) -> list:
    """All natural transformations A -> X, as dicts {(theta, a): x}.

    Exact only when A is window-presented; otherwise refuses.
    """
    if A.window != X.window:
        raise StructureError("nat_hom needs a shared window")
    if require_presented and not A.presented:
        raise NotPresented(f"{A!r} is not known to be window-presented")
    win = A.window
    objs = sorted(win.objects, key=lambda o: o.sort_key(), reverse=True)
    covered = set()
    generators = []
    for o in objs:
        for a in A(o):
            if (o, a) in covered:
                continue
            generators.append((o, a))
            for f in win.morphisms_into(o):
                covered.add((f.source, A.act(f, a)))
    results = []
    assignment = {}

    def propagate(o, a, x):
        added = []
        for f in win.morphisms_into(o):
            key = (f.source, A.act(f, a))
            val = X.act(f, x)
            have = assignment.get(key)
            if have is None:
                assignment[key] = val
                added.append(key)
            elif have != val:
                for k in added:
                    del assignment[k]
                return None
        return added

    def search(idx):
        if idx == len(generators):
            results.append(dict(assignment))
            return
        o, a = generators[idx]
        fixed = assignment.get((o, a))
        candidates = (fixed,) if fixed is not None else X(o)
        for x in candidates:
            added = propagate(o, a, x)
            if added is None:
                continue
            search(idx + 1)
            for k in added:
                del assignment[k]

    search(0)
    return results


def nat_to_map(A: FinPresheaf, X: FinPresheaf, table: dict) -> PresheafMap:
    return PresheafMap(A, X, lambda o, a: table[(o, a)])


# ---------------------------------------------------------------------------
# file format


def element_labels(X: FinPresheaf) -> dict:
    """Injective string labels per object: str(x) when unambiguous, else indices."""
    labels = {}
    for o in X.window.objects:
        elems = X(o)
        strs = [x if isinstance(x, str) else _label(x) for x in elems]
        if len(set(strs)) != len(strs):
            strs = [f"e{i}" for i in range(len(elems))]
        labels[o] = dict(zip(elems, strs))
    return labels


def _label(x):
    if isinstance(x, tuple):
        return "(" + ",".join(_label(y) for y in x) + ")"
    return str(x)


def to_json(X: FinPresheaf) -> dict:
    win = X.window
    labels = element_labels(X)
    sets = {str(o): [labels[o][x] for x in X(o)] for o in win.objects}
    actions = {}
    for a in win.objects:
        for b in win.objects:
            for idx, f in enumerate(win.hom(a, b)):
                actions[f"{a}->{b}#{idx}"] = {labels[b][x]: labels[a][X.act(f, x)] for x in X(b)}
    return {"format": "thetaspace.presheaf/1", "level": win.level, "window": win.bound,
            "name": X.name, "sets": sets, "actions": actions}


def dumps(X: FinPresheaf) -> str:
    return json.dumps(to_json(X), indent=1, sort_keys=False, ensure_ascii=False) + "\n"


def from_json(data: dict) -> FinPresheaf:
    if data.get("format") != "thetaspace.presheaf/1":
        raise StructureError("not a presheaf file")
    win = window(int(data["level"]), int(data["window"]))
    sets = {}
    for o in win.objects:
        key = str(o)
        if key not in data["sets"]:
            raise WindowExhaustion("presheaf file lacks an object of its window", o)
        sets[o] = tuple(data["sets"][key])
    table = {}
    for a in win.objects:
        for b in win.objects:
            for idx, f in enumerate(win.hom(a, b)):
                raw = data["actions"].get(f"{a}->{b}#{idx}")
                if raw is None:
                    raise StructureError(f"missing action for {a}->{b}#{idx}")
                table[f] = dict(raw)
    return FinPresheaf(win, sets.__getitem__, lambda f, x: table[f][x],
                       name=data.get("name", ""))


def loads(text: str) -> FinPresheaf:
    return from_json(json.loads(text))


def relabel_isomorphic(X: FinPresheaf, Y: FinPresheaf, bijections: dict) -> bool:
    """Check that levelwise bijections X(o) -> Y(o) commute with all actions."""
    for f in X.window.morphisms():
        for x in X(f.target):
            if bijections[f.source][X.act(f, x)] != Y.act(f, bijections[f.target][x]):
                return False
    return True
