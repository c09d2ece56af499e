"""The intertwining functor V, its subobjects V_K, Segal maps and mapping objects."""
from __future__ import annotations

import itertools
from typing import NamedTuple, Sequence

from . import delta as dl
from . import presheaf as ps
from . import theta as th
from .errors import StructureError


class VElement(NamedTuple):
    """A point of V[m](A_1..A_m) at [q](c_1..c_q).

    ``factors[i-1]`` holds the elements of A_j(c_i) for j in (delta(i-1), delta(i)].
    """

    delta: tuple
    factors: tuple

    def to_json(self, label=str):
        return {"delta": dl.to_digits(self.delta),
                "factors": [[label(x) for x in row] for row in self.factors]}


def _theta_window(As: Sequence[ps.FinPresheaf], win: ps.Window):
    for A in As:
        if A.window.level != win.level - 1:
            raise StructureError("V inputs live one level below the window")


def eval_V(As: Sequence[ps.FinPresheaf], theta, keep=None) -> list:
    """All VElements at theta, optionally restricted to deltas passing keep(delta)."""
    if theta.level == 0:
        raise StructureError("V takes values on objects of level >= 1")
    q = theta.arity
    m = len(As)
    out = []
    for d in dl.monotone_tuples(q, m):
        if keep is not None and not keep(d):
            continue
        pools = []
        for i in range(1, q + 1):
            c = theta.children[i - 1]
            for j in range(d[i - 1] + 1, d[i] + 1):
                pools.append(As[j - 1](c))
        sizes = [d[i] - d[i - 1] for i in range(1, q + 1)]
        for flat in itertools.product(*pools):
            rows, pos = [], 0
            for s in sizes:
                rows.append(tuple(flat[pos:pos + s]))
                pos += s
            out.append(VElement(d, tuple(rows)))
    return out


def act_V(As: Sequence[ps.FinPresheaf], f: th.ThetaMorphism, x: VElement) -> VElement:
    """V(A)(f)(x) for f: [q'](c') -> [q](c) and x at the target."""
    eps = f.delta
    d = x.delta
    new_d = tuple(d[e] for e in eps)
    rows = []
    for ip in range(1, len(eps)):
        row = []
        for i in range(eps[ip - 1] + 1, eps[ip] + 1):
            g = f.components[ip - 1][i - eps[ip - 1] - 1]
            for j in range(d[i - 1] + 1, d[i] + 1):
                row.append(As[j - 1].act(g, x.factors[i - 1][j - d[i - 1] - 1]))
        rows.append(tuple(row))
    return VElement(new_d, tuple(rows))


def V(As: Sequence[ps.FinPresheaf], win: ps.Window, keep=None, name=None,
      presented=None) -> ps.FinPresheaf:
    """V[m](A_1..A_m) (or its subobject cut out by keep) on a window one level up."""
    As = list(As)
    _theta_window(As, win)
    if presented is None:
        presented = len(As) <= 1 and all(A.presented for A in As) and keep is None
    label = name or f"V[{len(As)}]({','.join(A.name for A in As)})"
    return ps.FinPresheaf(win, lambda o: eval_V(As, o, keep), lambda f, x: act_V(As, f, x),
                          presented=presented, name=label)


def eval_V_K(K: dl.SimplicialSubset, As, theta) -> list:
    if K.ambient_rank != len(As):
        raise StructureError("cover rank and number of inputs differ")
    return eval_V(As, theta, keep=K.contains)


def V_K(K: dl.SimplicialSubset, As, win: ps.Window) -> ps.FinPresheaf:
    if K.ambient_rank != len(As):
        raise StructureError("cover rank and number of inputs differ")
    return V(As, win, keep=K.contains, name=f"V_K[{len(As)}]")


def v_map(sigma: dl.MonotoneMap, comps: dict, As, Bs, source=None, target=None) -> ps.PresheafMap:
    """V applied to (sigma, {f_jk}): [m](A) -> [m'](B).

    Without source and target presheaves the bare component function is returned.

    ``comps[(j, k)]`` maps A_j to B_k for k in (sigma(j-1), sigma(j)]; it may be
    a PresheafMap or any callable (c, x) -> y.
    """
    As, Bs = list(As), list(Bs)
    if sigma.src_rank != len(As) or sigma.dst_rank != len(Bs):
        raise StructureError("sigma does not match the input lengths")
    s = sigma.values

    def component(theta, x):
        d = x.delta
        new_d = tuple(s[v] for v in d)
        rows = []
        for i in range(1, len(d)):
            c = theta.children[i - 1]
            row = []
            for j in range(d[i - 1] + 1, d[i] + 1):
                y = x.factors[i - 1][j - d[i - 1] - 1]
                for k in range(s[j - 1] + 1, s[j] + 1):
                    row.append(comps[(j, k)](c, y))
            rows.append(tuple(row))
        return VElement(new_d, tuple(rows))

    if source is None or target is None:
        return component
    return ps.PresheafMap(source, target, component)


def nu(theta, win: ps.Window) -> ps.PresheafMap:
    """F([m](d)) -> V[m](F d_1..F d_m): a morphism into theta read as a VElement."""
    sub = ps.window(win.level - 1, max(win.bound - 1, 0))
    As = [ps.yoneda(d, sub) for d in theta.children]
    src = ps.yoneda(theta, win)
    tgt = V(As, win)
    return ps.PresheafMap(src, tgt, lambda o, f: VElement(f.delta, f.components))


# ---------------------------------------------------------------------------
# decompositions


def g_partition(q: int, m: int, n: int) -> dict:
    """Classes G(p), p = 0..q+1, of Delta([q],[m+1+n]) split at the middle vertex gap."""
    classes = {p: [] for p in range(q + 2)}
    for d in dl.monotone_tuples(q, m + 1 + n):
        hits = []
        if d[0] >= m + 1:
            hits.append(0)
        for p in range(1, q + 1):
            if d[p - 1] <= m and d[p] >= m + 1:
                hits.append(p)
        if d[q] <= m:
            hits.append(q + 1)
        if len(hits) != 1:
            raise StructureError(f"{d} lies in {len(hits)} classes")
        classes[hits[0]].append(d)
    return classes


def check_partition(q: int, m: int, n: int) -> bool:
    try:
        classes = g_partition(q, m, n)
    except StructureError:
        return False
    total = sum(len(v) for v in classes.values())
    if total != len(dl.monotone_tuples(q, m + 1 + n)):
        return False
    # the middle slot j = m+1 is hit exactly when 1 <= p <= q
    for p, ds in classes.items():
        for d in ds:
            hit = [i for i in range(1, q + 1) if d[i - 1] < m + 1 <= d[i]]
            if (hit != [p]) if 1 <= p <= q else hit:
                return False
    return True


def _identity_component(c, x):
    return x


def check_coproduct_decomposition(As, Bs, win: ps.Window) -> bool:
    """V[m](A) + V[n](B) -> V[m+1+n](A, 0, B) is a levelwise bijection."""
    As, Bs = list(As), list(Bs)
    m, n = len(As), len(Bs)
    sub = As[0].window if As else (Bs[0].window if Bs else ps.window(win.level - 1, max(win.bound - 1, 0)))
    empty = ps.initial_presheaf(sub)
    mid = As + [empty] + Bs
    left = dl.MonotoneMap(tuple(range(m + 1)), m + 1 + n)
    right = dl.MonotoneMap(tuple(range(m + 1, m + n + 2)), m + 1 + n)
    fa = v_map(left, {(j, j): _identity_component for j in range(1, m + 1)}, As, mid)
    fb = v_map(right, {(j, j + m + 1): _identity_component for j in range(1, n + 1)}, Bs, mid)
    VA, VB, VM = V(As, win), V(Bs, win), V(mid, win)
    for o in win.objects:
        image = [fa(o, x) for x in VA(o)] + [fb(o, y) for y in VB(o)]
        if len(set(image)) != len(image) or set(image) != VM.elements(o):
            return False
    return True


def _proj(k):
    return lambda c, x: x[k]


def product_decomposition_maps(A: ps.FinPresheaf, B: ps.FinPresheaf, win: ps.Window):
    """The span V[2](A,B) <- V[1](AxB) -> V[2](B,A) and its comparison legs."""
    AB = ps.product([A, B])
    V1AB = V([AB], win)
    V2AB = V([A, B], win)
    V2BA = V([B, A], win)
    d02 = dl.MonotoneMap((0, 2), 2)
    left = v_map(d02, {(1, 1): _proj(0), (1, 2): _proj(1)}, [AB], [A, B], V1AB, V2AB)
    right = v_map(d02, {(1, 1): _proj(1), (1, 2): _proj(0)}, [AB], [B, A], V1AB, V2BA)
    d011 = dl.MonotoneMap((0, 1, 1), 1)
    d001 = dl.MonotoneMap((0, 0, 1), 1)
    VA, VB = V([A], win), V([B], win)
    to_a_from_ab = v_map(d011, {(1, 1): _identity_component}, [A, B], [A])
    to_b_from_ab = v_map(d001, {(2, 1): _identity_component}, [A, B], [B])
    to_a_from_ba = v_map(d001, {(2, 1): _identity_component}, [B, A], [A])
    to_b_from_ba = v_map(d011, {(1, 1): _identity_component}, [B, A], [B])
    return {
        "V1AB": V1AB, "V2AB": V2AB, "V2BA": V2BA, "VA": VA, "VB": VB,
        "left": left, "right": right,
        "leg_ab": lambda o, x: (to_a_from_ab(o, x), to_b_from_ab(o, x)),
        "leg_ba": lambda o, x: (to_a_from_ba(o, x), to_b_from_ba(o, x)),
    }


def product_decomposition_counts(A, B, win, theta) -> dict:
    """Sizes and bijectivity of colim(V[2](A,B) <- V[1](AxB) -> V[2](B,A)) -> V[1]A x V[1]B at theta."""
    mp = product_decomposition_maps(A, B, win)
    nodes = [mp["V2AB"], mp["V2BA"], mp["V1AB"]]
    edges = [(2, 0, mp["left"]), (2, 1, mp["right"])]
    reps, rep = ps.colimit_classes(theta, nodes, edges)
    legs = {0: mp["leg_ab"], 1: mp["leg_ba"]}
    images = {}
    ok = True
    for t, r in rep.items():
        i, x = t
        if i == 2:
            continue
        val = legs[i](theta, x)
        if images.setdefault(r, val) != val:
            ok = False
    target = set(itertools.product(mp["VA"](theta), mp["VB"](theta)))
    vals = list(images.values())
    bijective = ok and len(vals) == len(set(vals)) == len(reps) and set(vals) == target
    return {"V2AB": len(mp["V2AB"](theta)), "V2BA": len(mp["V2BA"](theta)),
            "V1AB": len(mp["V1AB"](theta)), "colimit": len(reps), "product": len(target),
            "bijective": bijective}


def check_product_decomposition(A, B, win: ps.Window) -> bool:
    return all(product_decomposition_counts(A, B, win, o)["bijective"] for o in win.objects)


# ---------------------------------------------------------------------------
# Segal maps and mapping objects


def segal_map(cs: Sequence, win: ps.Window) -> ps.PresheafMap:
    """The inclusion G[m](c) -> F[m](c) of morphisms whose delta lies in the spine."""
    cs = tuple(cs)
    target_obj = th.ThetaObject(win.level, cs)
    G = dl.spine(len(cs))
    F = ps.yoneda(target_obj, win)
    sub = ps.subpresheaf(F, lambda o, f: G.contains(f.delta), name=f"G[{len(cs)}]")
    return ps.PresheafMap(sub, F, lambda o, f: f)


def endpoints(X: ps.FinPresheaf, theta, x) -> tuple:
    """The vertices X(delta^i)(x) of an element at theta = [m](c)."""
    return tuple(X.act(th.vertex(i, theta), x) for i in range(theta.arity + 1))


def mapping_object(X: ps.FinPresheaf, xs: Sequence, cs: Sequence) -> list:
    """M_X(x_0..x_m)(c_1..c_m): elements of X[m](c) with the given vertices."""
    xs = tuple(xs)
    theta = th.ThetaObject(X.window.level, tuple(cs))
    if len(xs) != theta.arity + 1:
        raise StructureError("need one point per vertex")
    pts = X.elements(th.terminal(X.window.level))
    if any(x not in pts for x in xs):
        return []
    return [x for x in X(theta) if endpoints(X, theta, x) == xs]


def mapping_presheaf(X: ps.FinPresheaf, x0, x1) -> ps.FinPresheaf:
    """M_X(x_0, x_1) as a presheaf one level down."""
    n = X.window.level
    if n == 0:
        raise StructureError("mapping objects need level >= 1")
    sub = ps.window(n - 1, max(X.window.bound - 1, 0))
    return ps.FinPresheaf(
        sub,
        lambda c: mapping_object(X, (x0, x1), (c,)),
        lambda g, x: X.act(th.suspend_morphism(g), x),
        name=f"M({x0},{x1})",
    )


def tilde_mapping(X: ps.FinPresheaf, x0, x1, A: ps.FinPresheaf) -> list:
    """Maps V[1](A) -> X sending the two constant summands to x0 and x1."""
    VA = V([A], X.window)
    point = th.terminal(X.window.level)
    out = []
    for table in ps.nat_hom(VA, X):
        if table[(point, VElement((0,), ()))] == x0 and table[(point, VElement((1,), ()))] == x1:
            out.append(table)
    return out


def check_mapping_space_identification(X: ps.FinPresheaf, x0, x1, A: ps.FinPresheaf) -> dict:
    """Compare Map(V[1]A, X) over (x0, x1) with Map(A, M_X(x0, x1)) by explicit bijection."""
    M = mapping_presheaf(X, x0, x1)
    if A.window != M.window:
        A = A.restrict(M.window) if A.window.bound > M.window.bound else A
    left = tilde_mapping(X, x0, x1, A)
    right = ps.nat_hom(A, M)
    # phi: V[1]A -> X gives a: A(c) -> M(c) by evaluating on the edge summand
    converted = set()
    for table in left:
        row = []
        for c in A.window.objects:
            o = th.suspension(c)
            for a in A(c):
                row.append(((c, a), table[(o, VElement((0, 1), ((a,),)))]))
        converted.add(tuple(row))
    right_keys = {tuple(((c, a), t[(c, a)]) for c in A.window.objects for a in A(c)) for t in right}
    return {"tilde": len(left), "hom": len(right), "bijective": converted == right_keys
            and len(converted) == len(left)}
