"""T_# and T^*, the cells O_k and their boundaries, and the objects E and Z."""
from __future__ import annotations

from dataclasses import dataclass

from . import delta as dl
from . import intertwine as iv
from . import presheaf as ps
from . import theta as th
from .errors import InvariantViolation, StructureError


def delta_window(bound: int) -> ps.Window:
    """Presheaves on Delta are presheaves on Theta_1."""
    return ps.window(1, bound)


def delta_presheaf_from_subset(K: dl.SimplicialSubset, bound: int) -> ps.FinPresheaf:
    """A subobject of F[m] as a discrete presheaf on Delta."""
    win = delta_window(bound)
    Fm = ps.yoneda(th.simplex(K.ambient_rank, 1), win)
    X = ps.subpresheaf(Fm, lambda o, f: K.contains(f.delta), presented=True,
                       name=f"K<F[{K.ambient_rank}]")
    return X


def t_sharp(Y: ps.FinPresheaf, win: ps.Window) -> ps.FinPresheaf:
    """(T_# Y)[m](c_1..c_m) = Y[m], acting through the delta part only."""
    if Y.window.level != 1:
        raise StructureError("T_# takes a presheaf on Delta")
    need = max((o.arity for o in win.objects), default=0)
    if need > Y.window.bound:
        raise StructureError(f"T_# needs Y up to rank {need}")

    def values(o):
        return Y(th.simplex(o.arity, 1))

    def action(f, y):
        return Y.act(th.from_delta(dl.MonotoneMap(f.delta, f.target.arity), 1), y)

    return ps.FinPresheaf(win, values, action, presented=Y.presented, name=f"T#{Y.name}")


def t_sharp_map(phi: ps.PresheafMap, win: ps.Window) -> ps.PresheafMap:
    src, dst = t_sharp(phi.source, win), t_sharp(phi.target, win)
    return ps.PresheafMap(src, dst, lambda o, y: phi(th.simplex(o.arity, 1), y))


def t_star(X: ps.FinPresheaf) -> ps.FinPresheaf:
    """(T^* X)[m] = X([m]([0],...,[0])) as a presheaf on Delta."""
    n = X.window.level
    if n == 0:
        raise StructureError("T^* needs level >= 1")
    top = max((o.arity for o in X.window.objects
               if o == th.simplex(o.arity, n)), default=0)
    win = delta_window(top)

    def values(o):
        return X(th.simplex(o.arity, n))

    def action(f, x):
        return X.act(th.from_delta(dl.MonotoneMap(f.delta, f.target.arity), n), x)

    return ps.FinPresheaf(win, values, action, name=f"T*{X.name}")


# ---------------------------------------------------------------------------
# cells


def O(k: int, win: ps.Window) -> ps.FinPresheaf:
    if k > win.level:
        raise StructureError(f"no {k}-cells at level {win.level}")
    return ps.yoneda(th.cell_object(k, win.level), win)


def has_section(f: th.ThetaMorphism) -> bool:
    return any(th.compose_theta(f, g) == th.identity(f.target)
               for g in th.enumerate_hom(f.target, f.source))


def boundary_subobject(k: int, win: ps.Window) -> ps.FinPresheaf:
    """Largest subobject of O_k missing the tautological section."""
    Ok = O(k, win)
    X = ps.subpresheaf(Ok, lambda o, f: not has_section(f), name=f"dO{k}")
    X.presented = True
    return X


def source_target(k: int, level: int):
    """s_k, t_k: sigma^{k-1}[0] -> sigma^k[0] as Theta morphisms."""
    base = th.cell_object(1, level - k + 1)
    s = th.suspend_morphism_k(th.vertex(0, base), k - 1)
    t = th.suspend_morphism_k(th.vertex(1, base), k - 1)
    return s, t


def projection(k: int, level: int) -> th.ThetaMorphism:
    """The map sigma^k[0] -> sigma^{k-1}[0] inducing i_k."""
    base = th.cell_object(1, level - k + 1)
    return th.suspend_morphism_k(th.to_terminal(base), k - 1)


@dataclass
class CellDiagram:
    n: int
    k: int
    O: ps.FinPresheaf
    dO: ps.FinPresheaf
    O_prev: ps.FinPresheaf | None
    s: ps.PresheafMap | None
    t: ps.PresheafMap | None
    e: ps.PresheafMap
    i: ps.PresheafMap | None


def boundary_pushout(k: int, win: ps.Window) -> ps.FinPresheaf:
    """O_{k-1} +_{dO_{k-1}} O_{k-1} along e_{k-1}; dO_0 is initial.

    Classes are represented by (0, f) or (1, f) for the source or target copy.
    """
    if k == 0:
        return ps.initial_presheaf(win)
    Oprev = O(k - 1, win)
    dprev = boundary_pushout(k - 1, win)
    inc = ps.PresheafMap(dprev, Oprev, boundary_inclusion(k - 1, win.level))
    P = ps.pushout(inc, inc, name=f"dO{k}")
    P.presented = True
    return P


def boundary_inclusion(k: int, level: int):
    """Components of e_k on the pushout model of dO_k."""
    if k == 0:
        return lambda o, x: x
    s, t = source_target(k, level)
    return lambda o, x: th.compose_theta(s if x[0] == 0 else t, x[1])


def build_cells(k: int, win: ps.Window) -> CellDiagram:
    n = win.level
    if not 0 <= k <= n:
        raise StructureError(f"cell dimension {k} outside 0..{n}")
    Ok = O(k, win)
    dO = boundary_pushout(k, win)
    e = ps.PresheafMap(dO, Ok, boundary_inclusion(k, n))
    if k == 0:
        return CellDiagram(n, k, Ok, dO, None, None, None, e, None)
    Oprev = O(k - 1, win)
    s, t = source_target(k, n)
    p = projection(k, n)
    sm = ps.PresheafMap(Oprev, dO, lambda o, f: dO.legs[0](o, f))
    tm = ps.PresheafMap(Oprev, dO, lambda o, f: dO.legs[1](o, f))
    im = ps.PresheafMap(Ok, Oprev, lambda o, f: th.compose_theta(p, f))
    return CellDiagram(n, k, Ok, dO, Oprev, sm, tm, e, im)


def verify_boundary_pushout(k: int, win: ps.Window) -> bool:
    """The pushout model maps bijectively onto the maximal proper subobject."""
    cd = build_cells(k, win)
    direct = boundary_subobject(k, win)
    for o in win.objects:
        image = [cd.e(o, x) for x in cd.dO(o)]
        if len(set(image)) != len(image) or set(image) != direct.elements(o):
            return False
    if not cd.e.check_naturality():
        raise InvariantViolation("e_k is not natural")
    return True


# ---------------------------------------------------------------------------
# E and Z


class ChaoticNerve:
    """E: the nerve of the free-standing isomorphism, evaluated degree by degree."""

    labels = ("x", "y")

    def degree(self, m: int) -> int:
        return 2 ** (m + 1)

    def values(self, m: int):
        import itertools

        return list(itertools.product(self.labels, repeat=m + 1))

    def act(self, d: dl.MonotoneMap, e: tuple) -> tuple:
        return tuple(e[v] for v in d.values)

    def presheaf(self, bound: int) -> ps.FinPresheaf:
        win = delta_window(bound)
        return ps.FinPresheaf(win, lambda o: self.values(o.arity),
                              lambda f, e: tuple(e[v] for v in f.delta), name="E")


def build_E() -> ChaoticNerve:
    return ChaoticNerve()


def build_Z(bound: int = 3) -> ps.FinPresheaf:
    """colim( F[3] <- F[1]+F[1] -> F[0]+F[0] ) with legs (d^02, d^13)."""
    if bound < 3:
        raise StructureError("Z needs a Delta window containing [3]")
    win = delta_window(bound)
    F0, F1, F3 = (ps.yoneda(th.simplex(r, 1), win) for r in (0, 1, 3))
    two_edges = ps.coproduct([F1, F1])
    two_points = ps.coproduct([F0, F0])
    d02 = th.from_delta(dl.delta("02", 3))
    d13 = th.from_delta(dl.delta("13", 3))
    to3 = ps.PresheafMap(two_edges, F3,
                         lambda o, x: th.compose_theta(d02 if x[0] == 0 else d13, x[1]))
    to0 = ps.PresheafMap(two_edges, two_points,
                         lambda o, x: (x[0], th.to_terminal(o)))
    Z = ps.finite_colimit([F3, two_points, two_edges], [(2, 0, to3), (2, 1, to0)], name="Z")
    Z.presented = True
    return Z


# ---------------------------------------------------------------------------
# V[1] on cells


def _iso_by_transport(phi: ps.PresheafMap) -> bool:
    return phi.check_naturality() and phi.is_iso()


def verify_v_cell_shift(win: ps.Window) -> dict:
    """V[1] of the level-(n-1) cell diagrams against the level-n ones."""
    n = win.level
    sub = ps.window(n - 1, max(win.bound - 1, 0))
    results = {}
    # V[1](F theta) = F([1](theta)) via nu, for every theta in the lower window
    ok = True
    for c in sub.objects:
        target = th.suspension(c)
        nu = iv.nu(target, win)
        ok = ok and _iso_by_transport(nu)
    results["v_of_representable"] = ok
    # V[1](initial) = dO_1
    VI = iv.V([ps.initial_presheaf(sub)], win)
    d1 = boundary_subobject(1, win)
    results["v_of_initial"] = all(len(VI(o)) == len(d1(o)) for o in win.objects) and _map_initial(VI, d1, win)
    for k in range(1, n):
        results[f"shift_{k}"] = _shift_ok(k, sub, win)
    return results


def _map_initial(VI, d1, win):
    """The constant summands of V[1](0) go to the two vertices of sigma[0]."""
    base = th.cell_object(1, win.level)
    phi = ps.PresheafMap(VI, d1, lambda o, x: th.compose_theta(th.vertex(x.delta[0], base),
                                                               th.to_terminal(o)))
    return _iso_by_transport(phi)


def _shift_ok(k, sub, win):
    # e_k: dO_k -> O_k one level down, pushed through V[1], against e_{k+1}
    lower = boundary_subobject(k, sub)
    VO = iv.V([O(k, sub)], win)
    VdO = iv.V([lower], win)
    upper_O = O(k + 1, win)
    upper_d = boundary_subobject(k + 1, win)
    to_O = ps.PresheafMap(VO, upper_O, lambda o, x: _as_morphism(o, x, th.cell_object(k + 1, win.level)))
    to_d = ps.PresheafMap(VdO, upper_d, lambda o, x: _as_morphism(o, x, th.cell_object(k + 1, win.level)))
    s_low, t_low = source_target(k, sub.level)
    s_up, t_up = source_target(k + 1, win.level)
    # V[1](s_k) corresponds to s_{k+1} after the identifications
    VOprev = iv.V([O(k - 1, sub)], win)
    to_prev = ps.PresheafMap(VOprev, O(k, win), lambda o, x: _as_morphism(o, x, th.cell_object(k, win.level)))
    ok = _iso_by_transport(to_O) and _iso_by_transport(to_d) and _iso_by_transport(to_prev)
    for leg_low, leg_up in ((s_low, s_up), (t_low, t_up)):
        for o in win.objects:
            for x in VOprev(o):
                pushed = iv.VElement(x.delta, tuple(tuple(th.compose_theta(leg_low, y) for y in row)
                                                    for row in x.factors))
                if to_O(o, pushed) != th.compose_theta(leg_up, to_prev(o, x)):
                    ok = False
    return ok


def _as_morphism(o, x, target):
    return th.ThetaMorphism(o, target, x.delta, x.factors)
