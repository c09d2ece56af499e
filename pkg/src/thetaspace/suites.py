"""Verification suites, one function per acceptance criterion."""
from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field

from . import cells
from . import corpus
from . import delta as dl
from . import fibrancy as fb
from . import homology as hm
from . import intertwine as iv
from . import ncat
from . import presheaf as ps
from . import qpaths as qp
from . import theta as th


@dataclass
class SuiteConfig:
    seed: int = 0
    hom_bound_2: int = 4
    hom_bound_3: int = 3
    axiom_bound: int = 3
    product_cases: int = 20
    product_bound: int = 4
    partition_max: int = 3
    cover_max: int = 3
    cover_samples: int = 100
    q_count_max: int = 6
    q_homology_sum: int = 6
    q_retraction_max: int = 4
    alpha_cases: int = 50
    square_max: int = 3
    square_bound: int = 4
    pk_max: int = 3
    pk_bound: int = 3
    yoneda_bound: int = 4
    ze_cases: int = 20
    delta_presheaves: int = 40
    cell_bound: int = 4


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    passed: int = 0
    witnesses: list = field(default_factory=list)
    wall: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.cases > 0 and self.passed == self.cases

    def record(self, ok: bool, witness=None):
        self.cases += 1
        if ok:
            self.passed += 1
        elif witness is not None and len(self.witnesses) < 10:
            self.witnesses.append(witness)

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag} {self.name}: {self.passed}/{self.cases} ({self.wall:.1f}s)"

    def to_json(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        d["wall"] = round(self.wall, 3)
        return d


def _timed(name):
    def wrap(fn):
        def run(cfg: SuiteConfig | None = None) -> SuiteResult:
            cfg = cfg or SuiteConfig()
            res = SuiteResult(name)
            t0 = time.perf_counter()
            fn(cfg, res)
            res.wall = time.perf_counter() - t0
            return res

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


# ---------------------------------------------------------------------------


@_timed("1 wreath hom counts = strict functor counts")
def criterion_1(cfg, res):
    for level, bound in ((2, cfg.hom_bound_2), (3, cfg.hom_bound_3)):
        objs = th.enumerate_objects(level, bound)
        for a in objs:
            for b in objs:
                h, f = th.hom_count(a, b), ncat.functor_count(ncat.tau(a), ncat.tau(b))
                res.record(h == f, {"src": str(a), "dst": str(b), "hom": h, "functors": f})


@_timed("2 Theta_2 category axioms")
def criterion_2(cfg, res):
    win = ps.window(2, cfg.axiom_bound)
    objs = win.objects
    triples = 0
    bad = 0
    for a in objs:
        for b in objs:
            for f in win.hom(a, b):
                if th.compose_theta(th.identity(b), f) != f or th.compose_theta(f, th.identity(a)) != f:
                    bad += 1
                for c in objs:
                    for g in win.hom(b, c):
                        gf = th.compose_theta(g, f)
                        for d in objs:
                            for h in win.hom(c, d):
                                triples += 1
                                if th.compose_theta(h, gf) != th.compose_theta(th.compose_theta(h, g), f):
                                    bad += 1
                                    if len(res.witnesses) < 5:
                                        res.witnesses.append([f.to_json(), g.to_json(), h.to_json()])
    res.cases, res.passed = triples, triples - bad
    res.details["objects"] = len(objs)


@_timed("3 product decomposition of V[1]")
def criterion_3(cfg, res):
    rng = random.Random(cfg.seed)
    win = ps.window(2, cfg.product_bound)
    sub = cfg.product_bound - 1
    for i in range(cfg.product_cases):
        A, B = corpus.random_delta_input(rng, sub), corpus.random_delta_input(rng, sub)
        ok = all(iv.product_decomposition_counts(A, B, win, o)["bijective"] for o in win.objects)
        res.record(ok, {"case": i, "A": A.name, "B": B.name})
    F0 = ps.yoneda(th.terminal(1), ps.window(1, sub))
    c = iv.product_decomposition_counts(F0, F0, win, th.cell_object(1, 2))
    arith = (c["V2AB"], c["V2BA"], c["V1AB"], c["colimit"], c["product"]) == (6, 6, 3, 9, 9) and c["bijective"]
    res.details["F0xF0 at [1]([0])"] = c
    res.record(arith, c)


@_timed("4 coproduct decomposition and G(p) partition")
def criterion_4(cfg, res):
    M = cfg.partition_max
    for q in range(M + 1):
        for m in range(M + 1):
            for n in range(M + 1):
                res.record(iv.check_partition(q, m, n), {"q": q, "m": m, "n": n})
    win = ps.window(2, 3)
    sub = ps.window(1, 2)
    pool = [ps.yoneda(th.simplex(0, 1), sub), ps.yoneda(th.simplex(1, 1), sub),
            ps.constant_presheaf(sub, [0, 1])]
    rng = random.Random(cfg.seed)
    for m in range(M + 1):
        for n in range(M + 1 - m):
            As = [rng.choice(pool) for _ in range(m)]
            Bs = [rng.choice(pool) for _ in range(n)]
            res.record(iv.check_coproduct_decomposition(As, Bs, win), {"m": m, "n": n})


def random_cover(rng: random.Random, m: int) -> dl.SimplicialSubset:
    faces = [f for f in dl._all_faces(m) if len(f) >= 2]
    while True:
        gens = [(i,) for i in range(m + 1)] + [(i, i + 1) for i in range(m)]
        gens += [f for f in faces if rng.random() < 0.3]
        K = dl.SimplicialSubset.generated_by(m, gens)
        # close under the lifting condition
        changed = True
        while changed:
            changed = False
            for f in list(K.faces):
                if len(f) >= 2 and not K.contains(tuple(range(f[0], f[-1] + 1))):
                    K = dl.SimplicialSubset.generated_by(m, list(K.faces) + [tuple(range(f[0], f[-1] + 1))])
                    changed = True
                    break
        if dl.is_cover(K):
            return K


def cover_properties(K: dl.SimplicialSubset) -> bool:
    m = K.ambient_rank
    for p in range(m + 1):
        for d in dl.sequential_maps(p, m):
            if not dl.is_cover(dl.pullback_cover(d, K)):
                return False
    return True


def product_cover_properties(M: dl.SimplicialSubset, N: dl.SimplicialSubset) -> bool:
    """Property (3) along jointly injective sequential pairs, so p <= m + n."""
    m, n = M.ambient_rank, N.ambient_rank
    for p in range(m + n + 1):
        for d1 in dl.sequential_maps(p, m):
            for d2 in dl.sequential_maps(p, n):
                pts = list(zip(d1.values, d2.values))
                if len(set(pts)) != len(pts):
                    continue
                if not dl.is_cover(dl.product_pullback_cover(d1, d2, M, N)):
                    return False
    return True


@_timed("5 cover closure properties")
def criterion_5(cfg, res):
    for m in range(cfg.cover_max + 1):
        res.record(dl.is_cover(dl.full_simplex(m)), {"property": 0, "m": m})
        res.record(dl.is_cover(dl.spine(m)), {"property": 1, "m": m})
        for K in dl.all_covers(m):
            res.record(cover_properties(K), {"property": 2, "K": K.face_strings()})
    covers = {m: dl.all_covers(m) for m in range(cfg.cover_max + 1)}
    for m in covers:
        for n in covers:
            for M in covers[m]:
                for N in covers[n]:
                    res.record(product_cover_properties(M, N),
                               {"property": 3, "M": M.face_strings(), "N": N.face_strings()})
    rng = random.Random(cfg.seed)
    for i in range(cfg.cover_samples):
        K = random_cover(rng, 4)
        res.record(cover_properties(K), {"property": 2, "K": K.face_strings()})
        N = rng.choice(covers[rng.randint(0, 2)])
        res.record(product_cover_properties(K, N),
                   {"property": 3, "M": K.face_strings(), "N": N.face_strings()})
    res.record(not dl.is_cover(dl.boundary(2)), {"negative": "boundary(2)"})


@_timed("6 Q_{m,n} combinatorics")
def criterion_6(cfg, res):
    for m in range(cfg.q_count_max + 1):
        for n in range(cfg.q_count_max + 1):
            size = len(qp.enumerate_Q(m, n))
            res.record(size == qp.delannoy(m, n), {"m": m, "n": n, "size": size})
    for m in range(cfg.q_homology_sum + 1):
        for n in range(cfg.q_homology_sum + 1 - m):
            C = hm.nerve_complex(qp.enumerate_Q(m, n).as_poset())
            res.record(hm.is_acyclic(C), {"m": m, "n": n, "homology": hm.report(C)})
    for m in range(cfg.q_retraction_max + 1):
        for n in range(1, cfg.q_retraction_max + 1):
            steps = qp.retraction_chain(m, n)
            ok = all(s.certified for s in steps) and qp.last_step_iso(m, n)
            res.record(ok, {"m": m, "n": n, "failed": [s.name for s in steps if not s.certified]})
    rng = random.Random(cfg.seed)
    for _ in range(cfg.alpha_cases):
        m, n = rng.randint(0, 4), rng.randint(0, 4)
        a1, a2 = qp.random_alpha(m, n, rng)
        res.record(qp.check_alpha_product(m, n, a1, a2),
                   {"m": m, "n": n, "alpha": [list(a1.values), list(a2.values)]})


@_timed("7 main square colimits")
def criterion_7(cfg, res):
    rng = random.Random(cfg.seed)
    win = ps.window(1, cfg.square_bound)
    for m in range(cfg.square_max + 1):
        for n in range(cfg.square_max + 1):
            As = [corpus.random_discrete_set(rng, 1, 2) for _ in range(m)]
            Bs = [corpus.random_discrete_set(rng, 1, 2) for _ in range(n)]
            for M in (dl.spine(m), dl.full_simplex(m)):
                for N in (dl.spine(n), dl.full_simplex(n)):
                    r = qp.colim_compare(m, n, As, Bs, M, N, win)
                    bad = [x.__dict__ for x in r.reports if not x.bijective][:1]
                    res.record(r.passed, {"m": m, "n": n, "M": M.face_strings(),
                                          "N": N.face_strings(), "report": bad})
    # one level up, with representable inputs
    win2 = ps.window(2, cfg.square_bound)
    sub = ps.window(1, cfg.square_bound - 1)
    F0, F1 = ps.yoneda(th.simplex(0, 1), sub), ps.yoneda(th.simplex(1, 1), sub)
    for m, n in ((1, 1), (2, 1), (1, 2)):
        As = [F0 if j % 2 else F1 for j in range(m)]
        Bs = [F0] * n
        for M in (dl.spine(m), dl.full_simplex(m)):
            for N in (dl.spine(n), dl.full_simplex(n)):
                r = qp.colim_compare(m, n, As, Bs, M, N, win2)
                res.record(r.passed, {"level": 2, "m": m, "n": n})


@_timed("8 P_K colimit identities")
def criterion_8(cfg, res):
    win = ps.window(2, cfg.pk_bound)
    sub = ps.window(1, cfg.pk_bound - 1)
    for m in range(cfg.pk_max + 1):
        for K in dl.all_covers(m):
            for base in (th.simplex(0, 1), th.simplex(1, 1)):
                As = [ps.yoneda(base, sub)] * m
                r = qp.p_k_colim_check(K, As, win)
                res.record(r["F_to_K"] and r["G_to_G"], {"K": K.face_strings(), "input": str(base), **r})


@_timed("9 Yoneda compatibility F = dnerve tau")
def criterion_9(cfg, res):
    win = ps.window(2, cfg.yoneda_bound)
    for o in win.objects:
        res.record(ncat.check_yoneda_nerve(o, win), {"theta": str(o)})


@_timed("10 rigid iff complete")
def criterion_10(cfg, res):
    for C in corpus.rigidity_corpus(cfg.seed):
        win = ps.window(C.n, 3)
        try:
            r = ncat.check_rigid_iff_complete(C, win)
            res.record(True)
        except Exception as exc:  # InvariantViolation carries the disagreement
            res.record(False, {"category": C.name, "error": str(exc)})
            continue
        if C.name == "chaotic2":
            w = r["witness"]
            ok = (not r["complete"] and w is not None and (w["cells_below"], w["equivalences"]) == (2, 4))
            res.record(ok, {"chaotic2": r})
        if C.name == "[1]":
            X = ncat.dnerve(C, win)
            lv = fb.check_complete_discrete(X).levels[0]
            res.record(r["complete"] and (lv.cells_below, lv.equivalences) == (2, 2), {"[1]": r})
    res.details["corpus"] = len(corpus.rigidity_corpus(cfg.seed))


@_timed("11 Z and E routes count isomorphisms")
def criterion_11(cfg, res):
    rng = random.Random(cfg.seed)
    win = ps.window(1, 3)
    chaotic = ncat.chaotic_groupoid([0, 1])
    for _ in range(cfg.ze_cases):
        C = corpus.random_category(rng, 4, 12)
        X = ncat.dnerve(C, win)
        isos = sum(1 for g in C.cells[1] if ncat.k_inverses(C, g))
        z = fb.z_route(X)
        e = ncat.functor_count(chaotic, C)
        res.record(isos == z == e, {"category": C.name, "iso": isos, "Z": z, "E": e})


@_timed("12 Segal controls")
def criterion_12(cfg, res):
    for C in corpus.rigidity_corpus(cfg.seed):
        X = ncat.dnerve(C, ps.window(C.n, 3))
        res.record(fb.check_segal_discrete(X).passed, {"category": C.name})
    rng = random.Random(cfg.seed)
    for _ in range(cfg.delta_presheaves):
        X = corpus.random_delta_presheaf(rng)
        if fb.check_segal_discrete(X).passed:
            res.record(fb.nerve_comparison(X), {"presheaf": X.name})
    G = cells.delta_presheaf_from_subset(dl.spine(2), 3)
    rep = fb.check_segal_discrete(G)
    w = rep.witness
    found = None if w is None else (w.source, w.target)
    res.details["spine G[2] witness"] = found
    res.record(not rep.passed and found == (9, 10), {"spine G[2]": found, "expected": (9, 10)})


def _groupoid_corpus(cfg):
    rng = random.Random(cfg.seed)
    out = [ncat.dnerve(C, ps.window(C.n, 3)) for C in corpus.rigidity_corpus(cfg.seed)]
    out += [corpus.random_delta_presheaf(rng) for _ in range(cfg.delta_presheaves)]
    for level in (1, 2):
        for k in (1, 2, 3):
            out.append(ps.constant_presheaf(ps.window(level, 3), list(range(k))))
    return out


@_timed("13 discrete groupoid characterization")
def criterion_13(cfg, res):
    for X in _groupoid_corpus(cfg):
        if not fb.check_segal_discrete(X).passed:
            continue
        g = fb.check_groupoid_discrete(X)
        res.record(g.cond2 == g.cond3 == g.constant, {"presheaf": X.name, **g.to_json()})


@_timed("14 cells, T_#, V on cells and mapping spaces")
def criterion_14(cfg, res):
    b = cfg.cell_bound
    # T_# F[m] = F([m](t..t))
    for level in (1, 2):
        win = ps.window(level, b)
        for m in range(b + 1):
            Y = ps.yoneda(th.simplex(m, 1), cells.delta_window(b))
            T = cells.t_sharp(Y, win)
            F = ps.yoneda(th.simplex(m, level), win)
            phi = ps.PresheafMap(T, F, lambda o, f, m=m, level=level: _into_simplex(
                f.delta, o, th.simplex(m, level)))
            res.record(phi.check_naturality() and phi.is_iso(), {"T#": m, "level": level})
    # V[1] on representables, the initial object and cells
    for level in (2, 3):
        win = ps.window(level, b if level == 2 else 3)
        r = cells.verify_v_cell_shift(win)
        res.record(all(r.values()), {"level": level, **r})
        for k in range(level + 1):
            res.record(cells.verify_boundary_pushout(k, win), {"dO": k, "level": level})
    # mapping-space identification
    cases = _mapping_cases(b)
    for X, x0, x1, A in cases:
        r = iv.check_mapping_space_identification(X, x0, x1, A)
        res.record(r["bijective"] and r["tilde"] == r["hom"], {"X": X.name, "A": A.name, **r})


def _into_simplex(d, source, target):
    """(d, {to terminal}): [q](c) -> [m](t..t)."""
    comps = tuple(tuple(th.to_terminal(source.children[i - 1]) for _ in range(d[i - 1] + 1, d[i] + 1))
                  for i in range(1, len(d)))
    return th.ThetaMorphism(source, target, tuple(d), comps)


def _mapping_cases(b):
    out = []
    win = ps.window(2, b)
    sub = ps.window(1, b - 1)
    for target in (th.cell_object(1, 2), th.simplex(2, 2), th.cell_object(2, 2)):
        X = ps.yoneda(target, win)
        pts = X(th.terminal(2))
        for A in (ps.yoneda(th.simplex(0, 1), sub), ps.yoneda(th.simplex(1, 1), sub),
                  ps.terminal_presheaf(sub)):
            for x0 in pts:
                for x1 in pts:
                    out.append((X, x0, x1, A))
    C = ncat.suspend_category(corpus.chain(1))
    X = ncat.dnerve(C, ps.window(2, 3))
    for x0 in X(th.terminal(2)):
        for x1 in X(th.terminal(2)):
            out.append((X, x0, x1, ps.yoneda(th.simplex(1, 1), ps.window(1, 2))))
    return out


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 15)}

SUITES = {
    "axioms": (1, 2, 9),
    "decompositions": (3, 4, 14),
    "covers": (5, 8),
    "qpaths": (6, 7),
    "rigidity": (10, 11, 12, 13),
}
SUITES["all"] = tuple(range(1, 15))


def run_suite(name: str, cfg: SuiteConfig | None = None) -> list:
    return [CRITERIA[i](cfg) for i in SUITES[name]]


def manifest(cfg: SuiteConfig | None = None) -> dict:
    cfg = cfg or SuiteConfig()
    return {"format": "thetaspace.manifest/1", "config": asdict(cfg),
            "suites": {k: list(v) for k, v in SUITES.items()}}


def load_config(text: str) -> SuiteConfig:
    data = json.loads(text)
    return SuiteConfig(**data.get("config", data))
