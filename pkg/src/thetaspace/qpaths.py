"""Lattice-path posets Q_{m,n}, the poset P_K, and the set-level main square."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import delta as dl
from . import homology as hm
from . import intertwine as iv
from . import presheaf as ps
from .errors import StructureError

STEPS = {(1, 0): "R", (0, 1): "U", (1, 1): "D"}
MOVES = {v: k for k, v in STEPS.items()}


@dataclass(frozen=True, order=True)
class QObject:
    """A path from (0,0) to (m,n) with unit steps right, up or diagonal."""

    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts or pts[0] != (0, 0):
            raise StructureError("paths start at (0,0)")
        for a, b in zip(pts, pts[1:]):
            if (b[0] - a[0], b[1] - a[1]) not in STEPS:
                raise StructureError(f"illegal step {a} -> {b}")

    @property
    def p(self) -> int:
        return len(self.points) - 1

    @property
    def end(self) -> tuple:
        return self.points[-1]

    @property
    def delta1(self) -> dl.MonotoneMap:
        return dl.MonotoneMap(tuple(x for x, _ in self.points), self.end[0])

    @property
    def delta2(self) -> dl.MonotoneMap:
        return dl.MonotoneMap(tuple(y for _, y in self.points), self.end[1])

    def steps(self) -> str:
        return "".join(STEPS[(b[0] - a[0], b[1] - a[1])] for a, b in zip(self.points, self.points[1:]))

    @classmethod
    def from_steps(cls, text: str) -> "QObject":
        pts = [(0, 0)]
        for ch in text:
            if ch not in MOVES:
                raise StructureError(f"unknown step {ch!r}")
            dx, dy = MOVES[ch]
            pts.append((pts[-1][0] + dx, pts[-1][1] + dy))
        return cls(tuple(pts))

    def pointset(self) -> frozenset:
        return frozenset(self.points)

    def index(self, point):
        try:
            return self.points.index(point)
        except ValueError:
            return None

    def __str__(self):
        return self.steps() or "."


def leq(a: QObject, b: QObject) -> bool:
    return a.pointset() <= b.pointset()


@dataclass
class QPoset:
    m: int
    n: int
    elements: list

    def leq(self, a, b) -> bool:
        return leq(a, b)

    def __len__(self):
        return len(self.elements)

    def hasse(self) -> list:
        return list(_hasse_Q(self.m, self.n))

    def as_poset(self) -> hm.Poset:
        return hm.Poset(self.elements, self.leq)


def _paths(m: int, n: int):
    if m == 0 and n == 0:
        yield ""
        return
    for ch, (dx, dy) in (("R", (1, 0)), ("U", (0, 1)), ("D", (1, 1))):
        if m >= dx and n >= dy:
            for rest in _paths(m - dx, n - dy):
                yield ch + rest


@lru_cache(maxsize=None)
def _enumerate(m: int, n: int) -> tuple:
    return tuple(sorted(QObject.from_steps(s) for s in _paths(m, n)))


def enumerate_Q(m: int, n: int) -> QPoset:
    if m < 0 or n < 0:
        raise StructureError("m and n must be non-negative")
    return QPoset(m, n, list(_enumerate(m, n)))


@lru_cache(maxsize=None)
def delannoy(m: int, n: int) -> int:
    if m == 0 or n == 0:
        return 1
    return delannoy(m - 1, n) + delannoy(m, n - 1) + delannoy(m - 1, n - 1)


def hasse(elements, le) -> list:
    """Covering pairs (a, b), a < b with nothing strictly between."""
    els = list(elements)
    lt = {(a, b) for a in els for b in els if a != b and le(a, b)}
    return [(a, b) for (a, b) in lt
            if not any((a, c) in lt and (c, b) in lt for c in els)]


@lru_cache(maxsize=None)
def _hasse_Q(m: int, n: int) -> tuple:
    return tuple(sorted(hasse(_enumerate(m, n), leq)))


def witness(a: QObject, b: QObject):
    """The unique gamma: [p] -> [p'] with b.gamma = a, or None."""
    g = tuple(b.index(pt) for pt in a.points)
    return None if None in g else dl.MonotoneMap(g, b.p)


# ---------------------------------------------------------------------------
# G_delta(alpha) and the subposets Q_{m,n,alpha}


def alpha_points(a1: dl.MonotoneMap, a2: dl.MonotoneMap) -> tuple:
    if a1.src_rank != a2.src_rank:
        raise StructureError("alpha maps need a common source")
    return tuple(zip(a1.values, a2.values))


def reduce_alpha(a1, a2):
    """Drop repeated consecutive points; G is unchanged under this surjection."""
    pts = []
    for pt in alpha_points(a1, a2):
        if not pts or pts[-1] != pt:
            pts.append(pt)
    return (dl.MonotoneMap(tuple(x for x, _ in pts), a1.dst_rank),
            dl.MonotoneMap(tuple(y for _, y in pts), a2.dst_rank))


def g_delta_alpha(d: QObject, a1: dl.MonotoneMap, a2: dl.MonotoneMap) -> list:
    if d.end != (a1.dst_rank, a2.dst_rank):
        raise StructureError("alpha and delta have different targets")
    r1, r2 = reduce_alpha(a1, a2)
    idx = [d.index(pt) for pt in alpha_points(r1, r2)]
    if None in idx:
        return []
    # pull back along the surjection [q] -> [q'] onto the distinct points
    lookup = dict(zip(alpha_points(r1, r2), idx))
    return [dl.MonotoneMap(tuple(lookup[pt] for pt in alpha_points(a1, a2)), d.p)]


def subposet_Q_alpha(m: int, n: int, a1, a2) -> QPoset:
    Q = enumerate_Q(m, n)
    return QPoset(m, n, [d for d in Q.elements if g_delta_alpha(d, a1, a2)])


def alpha_segments(m: int, n: int, a1, a2) -> list:
    """(m_j, n_j) between consecutive alpha points, with the two end pieces."""
    pts = [(0, 0)] + list(alpha_points(a1, a2)) + [(m, n)]
    return [(b[0] - a[0], b[1] - a[1]) for a, b in zip(pts, pts[1:])]


def check_alpha_product(m: int, n: int, a1, a2) -> bool:
    """Q_{m,n,alpha} is order isomorphic to the product of the segment posets."""
    sub = subposet_Q_alpha(m, n, a1, a2)
    segs = alpha_segments(m, n, a1, a2)
    factors = [enumerate_Q(a, b).elements for a, b in segs]
    prod = list(itertools.product(*factors))

    def glue(parts):
        pts, off = [(0, 0)], (0, 0)
        for part in parts:
            pts.extend((off[0] + x, off[1] + y) for x, y in part.points[1:])
            off = pts[-1]
        return QObject(tuple(pts))

    image = [glue(t) for t in prod]
    if len(set(image)) != len(image) or set(image) != set(sub.elements):
        return False
    for s, si in zip(prod, image):
        for t, ti in zip(prod, image):
            if all(leq(x, y) for x, y in zip(s, t)) != leq(si, ti):
                return False
    return True


def random_alpha(m: int, n: int, rng, max_q: int = 3):
    q = rng.randint(0, max_q)
    a1 = tuple(sorted(rng.randint(0, m) for _ in range(q + 1)))
    a2 = tuple(sorted(rng.randint(0, n) for _ in range(q + 1)))
    return dl.MonotoneMap(a1, m), dl.MonotoneMap(a2, n)


# ---------------------------------------------------------------------------
# the retraction chain


@dataclass
class RetractionStep:
    name: str
    poset: list
    subposet: list
    map: dict
    direction: str
    certified: bool = False


def X_k(m, n, k) -> list:
    return [d for d in enumerate_Q(m, n).elements
            if not any((i, n) in d.pointset() for i in range(k))]


def Y_k(m, n, k) -> list:
    return [d for d in X_k(m, n, k)
            if (k, n) not in d.pointset() or (k, n - 1) in d.pointset()]


def _r(d: QObject, k: int, n: int) -> QObject:
    """Split a diagonal into (k,n) through (k,n-1)."""
    i = d.index((k, n))
    if i is None or d.points[i - 1] == (k, n - 1):
        return d
    pts = d.points[:i] + ((k, n - 1),) + d.points[i:]
    return QObject(pts)


def _r_prime(d: QObject, k: int, n: int) -> QObject:
    """Replace (k,n-1) -> (k,n) -> (k+1,n) by one diagonal."""
    i = d.index((k, n))
    if i is None:
        return d
    return QObject(d.points[:i] + d.points[i + 1:])


def retraction_chain(m: int, n: int) -> list:
    """Q_{m,n} = X_0 >= Y_0 >= X_1 >= ... >= X_m >= Y_m, each step a certified retraction.

    Under the inclusion order r moves a path up and r' moves it down.
    Y_m is isomorphic to Q_{m,n-1} by dropping the endpoint.
    """
    if n < 1:
        raise StructureError("the chain needs n >= 1")
    steps = []
    for k in range(m + 1):
        X, Y = X_k(m, n, k), Y_k(m, n, k)
        r = {d: _r(d, k, n) for d in X}
        steps.append(RetractionStep(f"r_{k}", X, Y, r, "above"))
        if k < m:
            Xn = X_k(m, n, k + 1)
            rp = {d: _r_prime(d, k, n) for d in Y}
            steps.append(RetractionStep(f"r'_{k}", Y, Xn, rp, "below"))
    for st in steps:
        st.certified = hm.certify_retraction(hm.Poset(st.poset, leq), st.subposet,
                                             st.map, st.direction)
    return steps


def last_step_iso(m: int, n: int) -> bool:
    """Y_m -> Q_{m,n-1}, dropping (m,n), is an order isomorphism."""
    Y = Y_k(m, n, m)
    low = enumerate_Q(m, n - 1).elements
    img = [QObject(d.points[:-1]) for d in Y]
    if sorted(img) != sorted(low):
        return False
    return all(leq(a, b) == leq(x, y) for a, x in zip(Y, img) for b, y in zip(Y, img))


# ---------------------------------------------------------------------------
# the main square


def step_kinds(d: QObject) -> list:
    return [STEPS[(b[0] - a[0], b[1] - a[1])] for a, b in zip(d.points, d.points[1:])]


def d_factors(d: QObject, As, Bs) -> list:
    """D_i = A, B or A x B according to the i-th step."""
    out = []
    for i, kind in enumerate(step_kinds(d), start=1):
        x, y = d.points[i]
        if kind == "R":
            out.append(As[x - 1])
        elif kind == "U":
            out.append(Bs[y - 1])
        else:
            out.append(ps.product([As[x - 1], Bs[y - 1]]))
    return out


def _split(kind, e):
    if kind == "R":
        return e, None
    if kind == "U":
        return None, e
    return e[0], e[1]


def g_prime(d: QObject, x: iv.VElement) -> tuple:
    """V[p](D) -> V[m](A) x V[n](B) induced by (F delta_1, F delta_2)."""
    kinds = step_kinds(d)
    g = x.delta
    d1, d2 = d.delta1.values, d.delta2.values
    rows_a, rows_b = [], []
    for i in range(1, len(g)):
        ra, rb = [], []
        for j, e in zip(range(g[i - 1] + 1, g[i] + 1), x.factors[i - 1]):
            a, b = _split(kinds[j - 1], e)
            if a is not None:
                ra.append(a)
            if b is not None:
                rb.append(b)
        rows_a.append(tuple(ra))
        rows_b.append(tuple(rb))
    return (iv.VElement(tuple(d1[v] for v in g), tuple(rows_a)),
            iv.VElement(tuple(d2[v] for v in g), tuple(rows_b)))


def transition(a: QObject, b: QObject, x: iv.VElement) -> iv.VElement:
    """V[p](D^a) -> V[p'](D^b) for a <= b, by projections on split steps."""
    g0 = witness(a, b).values
    ka, kb = step_kinds(a), step_kinds(b)
    rows = []
    for i in range(1, len(x.delta)):
        row = []
        for j, e in zip(range(x.delta[i - 1] + 1, x.delta[i] + 1), x.factors[i - 1]):
            pa, pb = _split(ka[j - 1], e)
            for k in range(g0[j - 1] + 1, g0[j] + 1):
                kind = kb[k - 1]
                row.append(pa if kind == "R" else pb if kind == "U" else (pa, pb))
        rows.append(tuple(row))
    return iv.VElement(tuple(g0[v] for v in x.delta), tuple(rows))


def main_square(d: QObject, As, Bs, M: dl.SimplicialSubset, N: dl.SimplicialSubset, theta) -> dict:
    """The four maps g, f, f', g' at theta, as dicts of sets."""
    Ds = d_factors(d, As, Bs)
    keep = _pullback_keep(d, M, N)
    bottom = iv.eval_V(Ds, theta)
    top = iv.eval_V(Ds, theta, keep)
    return {
        "g": {x: g_prime(d, x) for x in top},
        "f": {x: x for x in top},
        "f'": {y: y for y in itertools.product(iv.eval_V(As, theta, M.contains),
                                               iv.eval_V(Bs, theta, N.contains))},
        "g'": {x: g_prime(d, x) for x in bottom},
    }


def _pullback_keep(d: QObject, M, N):
    d1, d2 = d.delta1.values, d.delta2.values
    return lambda g: M.contains(tuple(d1[v] for v in g)) and N.contains(tuple(d2[v] for v in g))


@dataclass
class ColimReport:
    theta: str
    row: str
    classes: int
    target: int
    well_defined: bool
    bijective: bool


@dataclass
class ColimCompare:
    reports: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.bijective for r in self.reports)


def _row_colimit(Q, As, Bs, theta, keep_of):
    nodes, index = [], {}
    for i, d in enumerate(Q.elements):
        Ds = d_factors(d, As, Bs)
        vals = iv.eval_V(Ds, theta, keep_of(d))
        nodes.append(_Fixed(vals))
        index[d] = i
    edges = [(index[a], index[b], (lambda a, b: lambda o, x: transition(a, b, x))(a, b))
             for a, b in Q.hasse()]
    return ps.colimit_classes(theta, nodes, edges)


class _Fixed:
    """A node with a single precomputed value set, for colimit_classes."""

    def __init__(self, vals):
        self.vals = vals

    def __call__(self, o):
        return self.vals


def _compare(Q, classes, rep, target):
    img = {}
    ok = True
    for t, r in rep.items():
        y = g_prime(Q.elements[t[0]], t[1])
        if img.setdefault(r, y) != y:
            ok = False
    values = list(img.values())
    bij = ok and len(set(values)) == len(values) and set(values) == set(target)
    return ok, bij


def colim_compare(m: int, n: int, As, Bs, M, N, win: ps.Window) -> ColimCompare:
    """Both rows of the main square, colimited over Q_{m,n}, against V_M x V_N and V[m] x V[n]."""
    if len(As) != m or len(Bs) != n or M.ambient_rank != m or N.ambient_rank != n:
        raise StructureError("inputs do not match (m, n)")
    Q = enumerate_Q(m, n)
    out = ColimCompare()
    for theta in win.objects:
        if theta.level == 0:
            continue
        for row, keep_of, tgt_keep in (
            ("bottom", lambda d: None, (None, None)),
            ("top", lambda d: _pullback_keep(d, M, N), (M.contains, N.contains)),
        ):
            reps, rep = _row_colimit(Q, As, Bs, theta, keep_of)
            target = list(itertools.product(iv.eval_V(As, theta, tgt_keep[0]),
                                            iv.eval_V(Bs, theta, tgt_keep[1])))
            ok, bij = _compare(Q, reps, rep, target)
            out.reports.append(ColimReport(str(theta), row, len(reps), len(target), ok, bij))
    return out


# ---------------------------------------------------------------------------
# the poset P_K


def build_P_K(K: dl.SimplicialSubset) -> list:
    """Injective sequential maps into [m] lying in K, as intervals (a, b)."""
    m = K.ambient_rank
    return [(a, b) for a in range(m + 1) for b in range(a, m + 1)
            if K.contains(tuple(range(a, b + 1)))]


def interval_leq(s, t) -> bool:
    return t[0] <= s[0] and s[1] <= t[1]


def _inside(s, values) -> bool:
    return all(s[0] <= v <= s[1] for v in values)


def p_k_colim_check(K: dl.SimplicialSubset, As, win: ps.Window) -> dict:
    """colim_{P_K} V_{F[p]} = V_K and colim_{P_K} V_{G[p]} = V_{G[m]}, levelwise.

    Each node is a subobject of V[m](A), so the legs are inclusions.
    """
    m = K.ambient_rank
    if len(As) != m:
        raise StructureError("cover rank and number of inputs differ")
    P = build_P_K(K)
    G = dl.spine(m)
    cover = hasse(P, interval_leq)
    idx = {s: i for i, s in enumerate(P)}
    edges = [(idx[a], idx[b], lambda o, x: x) for a, b in cover]
    result = {"F_to_K": True, "G_to_G": True, "objects": len(P)}
    for theta in win.objects:
        if theta.level == 0:
            continue
        for key, inner, target_keep in (
            ("F_to_K", lambda s: (lambda d: _inside(s, d)), K.contains),
            ("G_to_G", lambda s: (lambda d: _inside(s, d) and G.contains(d)), G.contains),
        ):
            nodes = [_Fixed(iv.eval_V(As, theta, inner(s))) for s in P]
            reps, rep = ps.colimit_classes(theta, nodes, edges)
            img = [t[1] for t in reps]
            target = iv.eval_V(As, theta, target_keep)
            if len(set(img)) != len(img) or set(img) != set(target):
                result[key] = False
    return result
