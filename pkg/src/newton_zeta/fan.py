"""The fan of cones over interior boundary faces, and triangulations of cones."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from . import exact
from .errors import PreconditionError
from .geometry import NewtonPolyhedron, cone_facets


@dataclass(frozen=True)
class DeltaCone:
    vertices: tuple  # vertex indices (tag "vertex")
    dirs: tuple  # axis indices (tag "axis"), 0-based
    gens: tuple  # generator vectors, vertices first then axes
    dim: int
    sigma: frozenset  # smallest coordinate face, as a set of coordinates
    face_index: Optional[int]  # Newton face index when the cone is C_F

    @property
    def key(self) -> tuple:
        return (frozenset(self.vertices), frozenset(self.dirs))

    @property
    def excess(self) -> int:
        return len(self.sigma) - self.dim

    @property
    def unb_key(self) -> tuple:
        """Key of C_unb, the face spanned by the axis generators."""
        return (frozenset(), frozenset(self.dirs))

    @property
    def bounded(self) -> bool:
        return not self.dirs

    @property
    def tagged(self) -> list[tuple]:
        return [("vertex", i) for i in self.vertices] + [("axis", i) for i in self.dirs]

    def vertex_mask(self) -> list[bool]:
        return [True] * len(self.vertices) + [False] * len(self.dirs)

    def contains(self, other: "DeltaCone") -> bool:
        return set(other.vertices) <= set(self.vertices) and set(other.dirs) <= set(self.dirs)


class DeltaFan:
    def __init__(self, np: NewtonPolyhedron):
        self.np = np
        self.n = np.n
        keys: dict[tuple, Optional[int]] = {}
        for F in np.gamma:
            keys[F.key] = F.index
        for F in np.gamma:
            if F.interior:
                for k in range(len(F.dirs) + 1):
                    for D in combinations(F.dirs, k):
                        keys.setdefault((frozenset(), frozenset(D)), None)
        keys.setdefault((frozenset(), frozenset()), None)
        cones = [self._make(V, D, idx) for (V, D), idx in keys.items()]
        cones.sort(key=lambda c: (c.dim, c.vertices, c.dirs))
        self.cones: list[DeltaCone] = cones
        self._by_key = {c.key: c for c in cones}
        self.maximal = [c for c in cones if c.dim == self.n]
        self.is_simplicial = all(len(c.gens) == c.dim for c in cones)
        self._check_support()

    def _make(self, V, D, idx) -> DeltaCone:
        np = self.np
        vs, ds = tuple(sorted(V)), tuple(sorted(D))
        gens = tuple(np.vertices[i] for i in vs) + tuple(np.unit(i) for i in ds)
        dim = np.faces[idx].dim + 1 if idx is not None else len(ds)
        sigma = frozenset(ds) | frozenset(k for g in gens for k, x in enumerate(g) if x)
        return DeltaCone(vs, ds, gens, dim, sigma, idx)

    def _check_support(self) -> None:
        # every codimension-one cone is shared by two maximal cones or lies on the boundary
        for c in self.cones:
            if c.dim != self.n - 1:
                continue
            owners = sum(1 for m in self.maximal if m.contains(c))
            if len(c.sigma) == self.n:
                assert owners == 2, "fan support is not the orthant"
            else:
                assert owners == 1, "boundary cone not owned by exactly one maximal cone"

    def cone(self, key: tuple) -> DeltaCone:
        try:
            return self._by_key[key]
        except KeyError:
            raise PreconditionError("cone is not in the fan") from None

    def has(self, key: tuple) -> bool:
        return key in self._by_key

    def cone_of_face(self, F) -> DeltaCone:
        return self._by_key[F.key]

    def zero_cone(self) -> DeltaCone:
        return self._by_key[(frozenset(), frozenset())]

    def supercones(self, c: DeltaCone) -> list[DeltaCone]:
        return [d for d in self.cones if d.contains(c)]

    def codim(self, c: DeltaCone) -> int:
        return self.n - c.dim

    def locate(self, point: Sequence) -> list[DeltaCone]:
        """Maximal cones containing the point in their relative interior."""
        out = []
        for m in self.maximal:
            lam = exact.express(m.gens, point)
            if lam is not None and all(x > 0 for x in lam):
                out.append(m)
        return out


def build_delta(np: NewtonPolyhedron) -> DeltaFan:
    return DeltaFan(np)


# ------------------------------------------------------------------ triangulation


class ConeLattice:
    """Face lattice of a pointed cone given by its ray generators."""

    def __init__(self, rays: Sequence[Sequence[int]]):
        self.rays = [tuple(r) for r in rays]
        self.dim = exact.rank(self.rays)
        full = frozenset(range(len(self.rays)))
        self.faces: dict[frozenset, int] = {full: self.dim}
        if self.dim <= 1:
            if self.dim == 1:
                self.faces[frozenset()] = 0
            return
        n = len(self.rays[0])
        basis = exact.saturated_basis(self.rays, n)
        coords = [[int(x) for x in exact.express(basis, r)] for r in self.rays]
        normals = cone_facets(coords)
        facets = [frozenset(i for i, c in enumerate(coords) if _dot(c, y) == 0) for y in normals]
        frontier = list(set(facets))
        for f in frontier:
            self.faces[f] = self.dim - 1
        while frontier:
            nxt = []
            for a in frontier:
                for b in facets:
                    c = a & b
                    if c not in self.faces:
                        self.faces[c] = exact.rank([self.rays[i] for i in c]) if c else 0
                        nxt.append(c)
            frontier = nxt
        self.faces.setdefault(frozenset(), 0)

    def facets_of(self, face: frozenset) -> list[frozenset]:
        d = self.faces[face]
        return [g for g, k in self.faces.items() if k == d - 1 and g < face]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def triangulate_cone(rays: Sequence[Sequence[int]], order: Optional[Sequence[int]] = None) -> list[tuple]:
    """Pulling triangulation of a pointed cone using only its rays.

    Returns the full-dimensional simplicial cells as sorted tuples of ray
    indices. `order` fixes the pulling priority (default: index order).
    """
    rays = [tuple(r) for r in rays]
    if not rays:
        return [()]
    prio = {r: k for k, r in enumerate(order if order is not None else range(len(rays)))}
    lat = ConeLattice(rays)
    full = frozenset(range(len(rays)))

    def pull(face: frozenset) -> list[tuple]:
        d = lat.faces[face]
        if len(face) == d:
            return [tuple(sorted(face))]
        apex = min(face, key=lambda i: prio[i])
        out = []
        for g in lat.facets_of(face):
            if apex in g:
                continue
            for cell in pull(g):
                out.append(tuple(sorted(cell + (apex,))))
        return out

    return sorted(pull(full))


def all_cells(cells: Sequence[tuple]) -> list[tuple]:
    """All faces (nonempty subsets) of the given simplicial cells."""
    out = set()
    for c in cells:
        for k in range(1, len(c) + 1):
            out.update(combinations(c, k))
    return sorted(out, key=lambda c: (len(c), c))


class RefinedFan:
    """Simplicial refinement of a fan without new rays.

    Every maximal cone is pulled with one global ray order (vertices before
    axes), so the cells agree on shared faces. Cones are DeltaCone records
    with face_index None.
    """

    def __init__(self, delta: DeltaFan):
        self.np = delta.np
        self.n = delta.n
        self.base = delta
        rays = [("v", i) for i in range(len(self.np.vertices))] + [("a", i) for i in range(self.n)]
        prio = {r: k for k, r in enumerate(rays)}
        keys: set[tuple] = set()
        for m in delta.maximal:
            tagged = [("v", i) for i in m.vertices] + [("a", i) for i in m.dirs]
            order = sorted(range(len(tagged)), key=lambda k: prio[tagged[k]])
            for cell in triangulate_cone(m.gens, order):
                for k in range(len(cell) + 1):
                    for sub in combinations(cell, k):
                        keys.add((frozenset(tagged[j][1] for j in sub if tagged[j][0] == "v"),
                                  frozenset(tagged[j][1] for j in sub if tagged[j][0] == "a")))
        cones = [self._make(V, D) for V, D in keys]
        cones.sort(key=lambda c: (c.dim, c.vertices, c.dirs))
        self.cones = cones
        self._by_key = {c.key: c for c in cones}
        self.maximal = [c for c in cones if c.dim == self.n]
        self.is_simplicial = True
        DeltaFan._check_support(self)

    def _make(self, V, D) -> DeltaCone:
        np = self.np
        vs, ds = tuple(sorted(V)), tuple(sorted(D))
        gens = tuple(np.vertices[i] for i in vs) + tuple(np.unit(i) for i in ds)
        sigma = frozenset(ds) | frozenset(k for g in gens for k, x in enumerate(g) if x)
        return DeltaCone(vs, ds, gens, len(gens), sigma, None)

    has = DeltaFan.has
    cone = DeltaFan.cone
    supercones = DeltaFan.supercones
    codim = DeltaFan.codim
    zero_cone = DeltaFan.zero_cone


def simplicial_fan(delta: DeltaFan, refine: bool = False):
    """delta itself when simplicial, else its refinement if allowed."""
    if delta.is_simplicial:
        return delta
    if not refine:
        raise PreconditionError("the fan is not simplicial")
    return RefinedFan(delta)
