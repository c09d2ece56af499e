"""Order complexes of finite posets and their integral homology."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InvariantViolation, StructureError


class Poset:
    """A finite poset given by elements and a comparison leq(a, b)."""

    def __init__(self, elements, leq):
        self.elements = list(elements)
        self.leq = leq
        if len(set(self.elements)) != len(self.elements):
            raise StructureError("repeated poset elements")

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def chains(self, length: int) -> list:
        """Strict chains with `length` elements, listed increasingly."""
        els = self.linear_extension()
        above = {a: [b for b in els if self.lt(a, b)] for a in els}
        out = []

        def grow(chain):
            if len(chain) == length:
                out.append(tuple(chain))
                return
            for b in above[chain[-1]]:
                grow(chain + [b])

        for a in els:
            grow([a])
        return out

    def linear_extension(self) -> list:
        left = list(self.elements)
        out = []
        while left:
            mins = [a for a in left if not any(self.lt(b, a) for b in left)]
            if not mins:
                raise StructureError("relation is not a partial order")
            out.extend(mins)
            left = [a for a in left if a not in mins]
        return out

    def check_order(self) -> bool:
        E = self.elements
        return (all(self.leq(a, a) for a in E)
                and all(not (self.leq(a, b) and self.leq(b, a)) or a == b for a in E for b in E)
                and all(not (self.leq(a, b) and self.leq(b, c)) or self.leq(a, c)
                        for a in E for b in E for c in E))


def product_poset(P: Poset, Q: Poset) -> Poset:
    return Poset(list(itertools.product(P.elements, Q.elements)),
                 lambda a, b: P.leq(a[0], b[0]) and Q.leq(a[1], b[1]))


# ---------------------------------------------------------------------------
# chain complexes


@dataclass
class ChainComplex:
    """basis[d] lists the d-simplices; boundary[d] maps degree d to d-1 as {(row, col): value}."""

    basis: list
    boundary: list = field(default_factory=list)

    def rank(self, d: int) -> int:
        return len(self.basis[d]) if 0 <= d < len(self.basis) else 0

    def matrix(self, d: int) -> list:
        rows, cols = self.rank(d - 1), self.rank(d)
        M = [[0] * cols for _ in range(rows)]
        if 0 < d < len(self.basis):
            for (i, j), v in self.boundary[d].items():
                M[i][j] = v
        return M

    def check_dd(self) -> bool:
        for d in range(2, len(self.basis)):
            prod = {}
            for (i, j), v in self.boundary[d].items():
                for (k, l), w in self._by_col(d - 1).get(i, []):
                    prod[(k, j)] = prod.get((k, j), 0) + w * v
            if any(prod.values()):
                return False
        return True

    def _by_col(self, d):
        out = {}
        for (i, j), v in self.boundary[d].items():
            out.setdefault(j, []).append(((i, j), v))
        return out


def nerve_complex(P: Poset) -> ChainComplex:
    """Order complex: d-simplices are strict chains of d+1 elements."""
    basis = []
    d = 0
    while True:
        ch = P.chains(d + 1)
        if not ch:
            break
        basis.append(ch)
        d += 1
    boundary = [{}]
    for d in range(1, len(basis)):
        index = {c: i for i, c in enumerate(basis[d - 1])}
        B = {}
        for j, c in enumerate(basis[d]):
            for k in range(len(c)):
                face = c[:k] + c[k + 1:]
                B[(index[face], j)] = (-1) ** k
        boundary.append(B)
    C = ChainComplex(basis, boundary)
    if not C.check_dd():
        raise InvariantViolation("boundary of boundary is non-zero")
    return C


def simplicial_complex(facets) -> ChainComplex:
    """Chain complex of the simplicial complex generated by vertex-tuple facets."""
    faces = set()
    for f in facets:
        f = tuple(sorted(f))
        for r in range(1, len(f) + 1):
            faces.update(itertools.combinations(f, r))
    top = max((len(f) for f in faces), default=0)
    basis = [sorted(f for f in faces if len(f) == r + 1) for r in range(top)]
    boundary = [{}]
    for d in range(1, top):
        index = {c: i for i, c in enumerate(basis[d - 1])}
        B = {}
        for j, c in enumerate(basis[d]):
            for k in range(len(c)):
                B[(index[c[:k] + c[k + 1:]], j)] = (-1) ** k
        boundary.append(B)
    C = ChainComplex(basis, boundary)
    if not C.check_dd():
        raise InvariantViolation("boundary of boundary is non-zero")
    return C


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(M) -> list:
    """Non-zero invariant factors d_1 | d_2 | ... of an integer matrix.

    Sparse elimination with a minimal-|value| pivot; Python ints do not overflow.
    """
    rows = {}
    for i, row in enumerate(M):
        r = {j: int(v) for j, v in enumerate(row) if v}
        if r:
            rows[i] = r
    return _snf_sparse(rows)


def _snf_sparse(rows: dict) -> list:
    diag = []
    while rows:
        # pivot: entry of least absolute value
        pi, pj, pv = None, None, None
        for i, r in rows.items():
            for j, v in r.items():
                if pv is None or abs(v) < abs(pv):
                    pi, pj, pv = i, j, v
                    if abs(v) == 1:
                        break
            if pv is not None and abs(pv) == 1:
                break
        while True:
            changed = False
            # clear column pj using row pi
            prow = rows[pi]
            for i in list(rows):
                if i == pi or pj not in rows[i]:
                    continue
                q = rows[i][pj] // pv
                r = rows[i]
                for j, v in prow.items():
                    nv = r.get(j, 0) - q * v
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
                if not r:
                    del rows[i]
                elif pj in r:
                    changed = True
            # clear row pi using column pj
            prow = rows[pi]
            for j in list(prow):
                if j == pj:
                    continue
                q = prow[j] // pv
                if q:
                    for i, r in list(rows.items()):
                        if pj in r:
                            nv = r.get(j, 0) - q * r[pj]
                            if nv:
                                r[j] = nv
                            else:
                                r.pop(j, None)
                if j in prow:
                    changed = True
            if not changed:
                break
            # a smaller remainder appeared: move the pivot there
            best = (pi, pj, pv)
            for i, r in rows.items():
                if pj in r and abs(r[pj]) < abs(best[2]):
                    best = (i, pj, r[pj])
            for j, v in rows[pi].items():
                if abs(v) < abs(best[2]):
                    best = (pi, j, v)
            pi, pj, pv = best
        diag.append(abs(pv))
        del rows[pi]
        for r in list(rows.values()):
            r.pop(pj, None)
        for i in [i for i, r in rows.items() if not r]:
            del rows[i]
    return _divisibility(diag)


def _divisibility(diag: list) -> list:
    """Normalise a diagonal to invariant factors d_1 | d_2 | ...."""
    from math import gcd

    d = sorted(x for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                a, b = d[i], d[j]
                if b % a:
                    g = gcd(a, b)
                    d[i], d[j] = g, a * b // g
                    changed = True
        d.sort()
    return d


@dataclass
class HomologyGroup:
    betti: int
    torsion: tuple

    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self):
        parts = [f"Z^{self.betti}"] if self.betti else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def homology(C: ChainComplex, reduced: bool = False) -> list:
    top = len(C.basis)
    factors = [None] + [smith_normal_form(C.matrix(d)) for d in range(1, top)]
    out = []
    for d in range(top):
        rank_out = len(factors[d]) if d >= 1 else 0
        inc = factors[d + 1] if d + 1 < top else []
        cycles = C.rank(d) - rank_out
        if reduced and d == 0 and C.rank(0):
            cycles -= 1
        out.append(HomologyGroup(cycles - len(inc), tuple(t for t in inc if t > 1)))
    if reduced and not C.rank(0):
        # the empty complex has reduced homology Z in degree -1
        return [HomologyGroup(0, ())]
    return out


def reduced_homology(C: ChainComplex) -> list:
    return homology(C, reduced=True)


def is_acyclic(C: ChainComplex) -> bool:
    return C.rank(0) > 0 and all(h.is_zero() for h in reduced_homology(C))


def euler_characteristic(C: ChainComplex) -> int:
    return sum((-1) ** d * C.rank(d) for d in range(len(C.basis)))


def euler_from_betti(C: ChainComplex) -> int:
    return sum((-1) ** d * h.betti for d, h in enumerate(homology(C)))


def report(C: ChainComplex, reduced: bool = True) -> str:
    hs = reduced_homology(C) if reduced else homology(C)
    return "\n".join(f"{d}: betti={h.betti} torsion={list(h.torsion)}" for d, h in enumerate(hs))


# ---------------------------------------------------------------------------
# retractions


def certify_retraction(P: Poset, S, r: dict, direction: str) -> bool:
    """r: P -> S monotone, identity on S, and r(p) <= p ("below") or r(p) >= p ("above")."""
    if direction not in ("below", "above"):
        raise StructureError("direction is 'below' or 'above'")
    S = set(S)
    if not S <= set(P.elements):
        return False
    for p in P.elements:
        if p not in r or r[p] not in S:
            return False
    if any(r[s] != s for s in S):
        return False
    for a in P.elements:
        for b in P.elements:
            if P.leq(a, b) and not P.leq(r[a], r[b]):
                return False
    if direction == "below":
        return all(P.leq(r[p], p) for p in P.elements)
    return all(P.leq(p, r[p]) for p in P.elements)
