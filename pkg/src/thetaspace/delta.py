"""The simplex category: monotone maps, subobjects of F[m] and covers."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import StructureError


@dataclass(frozen=True)
class MonotoneMap:
    """A weakly monotone map [m] -> [n], stored by its value sequence."""

    values: tuple
    dst_rank: int

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise StructureError("a monotone map needs at least one value")
        for a, b in zip(vals, vals[1:]):
            if a > b:
                raise StructureError(f"values not monotone: {vals}")
        if vals[0] < 0 or vals[-1] > self.dst_rank:
            raise StructureError(f"values {vals} out of range [0, {self.dst_rank}]")

    @property
    def src_rank(self) -> int:
        return len(self.values) - 1

    def __call__(self, i: int) -> int:
        return self.values[i]

    def __str__(self):
        return to_digits(self.values)

    @classmethod
    def parse(cls, text: str, dst_rank: int | None = None) -> "MonotoneMap":
        vals = tuple(int(ch) for ch in text)
        if dst_rank is None:
            dst_rank = max(vals)
        return cls(vals, dst_rank)

    @classmethod
    def identity(cls, m: int) -> "MonotoneMap":
        return cls(tuple(range(m + 1)), m)

    def image(self) -> tuple:
        return tuple(sorted(set(self.values)))

    @property
    def injective(self) -> bool:
        return is_injective(self.values)

    @property
    def surjective(self) -> bool:
        return len(set(self.values)) == self.dst_rank + 1

    @property
    def sequential(self) -> bool:
        return is_sequential(self.values)


def to_digits(values) -> str:
    if any(v > 9 for v in values):
        return ".".join(str(v) for v in values)
    return "".join(str(v) for v in values)


def delta(text: str, dst_rank: int | None = None) -> MonotoneMap:
    """Shorthand: ``delta("0122", 3)`` is the map written with superscript 0122."""
    return MonotoneMap.parse(text, dst_rank)


def is_injective(values) -> bool:
    return all(a < b for a, b in zip(values, values[1:]))


def is_sequential(values) -> bool:
    return all(b <= a + 1 for a, b in zip(values, values[1:]))


def compose_delta(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """g after f."""
    if f.dst_rank != g.src_rank:
        raise StructureError(f"cannot compose {g} after {f}: [{f.dst_rank}] != [{g.src_rank}]")
    return MonotoneMap(tuple(g.values[v] for v in f.values), g.dst_rank)


@lru_cache(maxsize=None)
def monotone_tuples(m: int, n: int) -> tuple:
    """All weakly monotone value tuples [m] -> [n], lexicographically ordered."""
    if m < 0 or n < 0:
        raise StructureError("ranks must be non-negative")
    return tuple(itertools.combinations_with_replacement(range(n + 1), m + 1))


def enumerate_delta(m: int, n: int) -> list:
    return [MonotoneMap(v, n) for v in monotone_tuples(m, n)]


def classify(f: MonotoneMap) -> dict:
    return {"injective": f.injective, "surjective": f.surjective, "sequential": f.sequential}


# ---------------------------------------------------------------------------
# subobjects of F[m]


@dataclass(frozen=True)
class SimplicialSubset:
    """A face-closed set of nondegenerate simplices of F[m].

    Faces are strictly increasing vertex tuples.  An arbitrary monotone map
    into [m] belongs to the subobject iff its image does.
    """

    ambient_rank: int
    faces: frozenset

    def __post_init__(self):
        faces = frozenset(tuple(f) for f in self.faces)
        object.__setattr__(self, "faces", faces)
        m = self.ambient_rank
        for face in faces:
            if not face or not is_injective(face) or face[0] < 0 or face[-1] > m:
                raise StructureError(f"{face} is not a face of F[{m}]")
            for r in range(1, len(face)):
                for sub in itertools.combinations(face, r):
                    if sub not in faces:
                        raise StructureError(f"not face closed: {sub} missing under {face}")

    @classmethod
    def generated_by(cls, m: int, generators: Iterable) -> "SimplicialSubset":
        faces = set()
        for g in generators:
            g = tuple(sorted(set(g)))
            for r in range(1, len(g) + 1):
                faces.update(itertools.combinations(g, r))
        return cls(m, frozenset(faces))

    def contains(self, f) -> bool:
        """Membership of a monotone map (or value tuple) via its image."""
        values = f.values if isinstance(f, MonotoneMap) else f
        return tuple(sorted(set(values))) in self.faces

    __contains__ = contains

    def evaluate(self, q: int) -> list:
        """The set K[q] of all monotone maps [q] -> [m] lying in K."""
        return [f for f in enumerate_delta(q, self.ambient_rank) if self.contains(f)]

    def face_strings(self) -> list:
        return sorted((to_digits(f) for f in self.faces), key=lambda s: (len(s), s))

    def __len__(self):
        return len(self.faces)


def full_simplex(m: int) -> SimplicialSubset:
    return SimplicialSubset.generated_by(m, [tuple(range(m + 1))])


def spine(m: int) -> SimplicialSubset:
    """The minimal cover G[m]: vertices and consecutive edges."""
    if m == 0:
        return full_simplex(0)
    return SimplicialSubset.generated_by(m, [(i - 1, i) for i in range(1, m + 1)])


def boundary(m: int) -> SimplicialSubset:
    return SimplicialSubset(m, frozenset(f for f in full_simplex(m).faces if len(f) <= m))


def vertices(m: int) -> SimplicialSubset:
    return SimplicialSubset(m, frozenset((i,) for i in range(m + 1)))


def _spine_present(K: SimplicialSubset) -> bool:
    m = K.ambient_rank
    return all((a,) in K.faces and (a >= m or (a, a + 1) in K.faces) for a in range(m + 1))


def is_cover(K: SimplicialSubset) -> bool:
    """Spine present, and every edge (a, b) of K spans a full interval a..b in K.

    The lifting condition reduces to this because the largest image of a map
    with endpoints a, b is the interval itself.
    """
    if not _spine_present(K):
        return False
    return all(tuple(range(f[0], f[-1] + 1)) in K.faces for f in K.faces if len(f) == 2)


def is_cover_bruteforce(K: SimplicialSubset) -> bool:
    """Lifting against F[1] -> F[n] along the long edge, for every n <= m."""
    if not _spine_present(K):
        return False
    m = K.ambient_rank
    for n in range(1, m + 1):
        for g in monotone_tuples(n, m):
            if K.contains((g[0], g[-1])) and not K.contains(g):
                return False
    return True


def pullback_cover(d: MonotoneMap, K: SimplicialSubset) -> SimplicialSubset:
    if d.dst_rank != K.ambient_rank:
        raise StructureError("pullback along a map with the wrong target")
    if not d.sequential:
        raise StructureError(f"{d} is not sequential")
    p = d.src_rank
    faces = [
        face
        for face in _all_faces(p)
        if K.contains(tuple(d.values[i] for i in face))
    ]
    return SimplicialSubset(p, frozenset(faces))


def product_pullback_cover(d1: MonotoneMap, d2: MonotoneMap,
                           M: SimplicialSubset, N: SimplicialSubset) -> SimplicialSubset:
    if d1.src_rank != d2.src_rank:
        raise StructureError("the two maps must share a source")
    if d1.dst_rank != M.ambient_rank or d2.dst_rank != N.ambient_rank:
        raise StructureError("pullback along maps with the wrong targets")
    if not (d1.sequential and d2.sequential):
        raise StructureError("product pullback needs sequential maps")
    p = d1.src_rank
    faces = [
        face
        for face in _all_faces(p)
        if M.contains(tuple(d1.values[i] for i in face))
        and N.contains(tuple(d2.values[i] for i in face))
    ]
    return SimplicialSubset(p, frozenset(faces))


def _all_faces(m: int):
    for r in range(1, m + 2):
        yield from itertools.combinations(range(m + 1), r)


def all_subobjects(m: int) -> list:
    """Every face-closed subset of F[m] (down-sets of nonempty vertex sets)."""
    faces = sorted(_all_faces(m), key=lambda f: (len(f), f))
    out = []

    def extend(idx, chosen):
        if idx == len(faces):
            out.append(SimplicialSubset(m, frozenset(chosen)))
            return
        face = faces[idx]
        extend(idx + 1, chosen)
        if all(sub in chosen for sub in itertools.combinations(face, len(face) - 1)) or len(face) == 1:
            chosen.add(face)
            extend(idx + 1, chosen)
            chosen.discard(face)

    extend(0, set())
    return out


def all_covers(m: int) -> list:
    return [K for K in all_subobjects(m) if is_cover(K)]


def sequential_maps(p: int, m: int) -> list:
    return [MonotoneMap(v, m) for v in monotone_tuples(p, m) if is_sequential(v)]
