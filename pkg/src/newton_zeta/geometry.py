"""Newton polyhedra: hull, face lattice, visible faces and per-face lattice data."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from . import exact
from .errors import PreconditionError

Point = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class Polynomial:
    """A polynomial given by its exponent-to-coefficient map."""

    n: int
    terms: Mapping[Point, Fraction]

    def __post_init__(self):
        terms = {}
        for e, c in dict(self.terms).items():
            e = tuple(int(x) for x in e)
            c = Fraction(c)
            if len(e) != self.n:
                raise PreconditionError(f"exponent {e} has length {len(e)}, expected {self.n}")
            if any(x < 0 for x in e):
                raise PreconditionError(f"negative exponent in {e}")
            if c == 0:
                continue
            terms[e] = terms.get(e, Fraction(0)) + c
        terms = {e: c for e, c in terms.items() if c != 0}
        if not terms:
            raise PreconditionError("polynomial has no terms")
        if (0,) * self.n in terms:
            raise PreconditionError("polynomial must vanish at the origin (nonzero constant term)")
        object.__setattr__(self, "terms", dict(sorted(terms.items())))

    @property
    def support(self) -> list[Point]:
        return list(self.terms)

    def face_part(self, face: "Face", np: "NewtonPolyhedron") -> dict[Point, Fraction]:
        """Terms of f lying on a compact face."""
        return {e: c for e, c in self.terms.items() if np.point_on_face(e, face)}

    def evaluate(self, x: Sequence[int], modulus: Optional[int] = None):
        total = 0
        for e, c in self.terms.items():
            term = c
            for xi, ei in zip(x, e):
                term *= xi ** ei
            total += term
        if modulus is None:
            return total
        return total % modulus


@dataclass(frozen=True)
class Facet:
    normal: Point  # primitive inner normal u >= 0
    offset: int  # N with u.x >= N on the polyhedron
    vertices: frozenset  # indices of tight vertices
    dirs: frozenset  # coordinates i with u_i = 0


@dataclass
class Face:
    index: int
    vertices: tuple  # vertex indices, sorted
    dirs: tuple  # unbounded directions (0-based coordinates), sorted
    dim: int
    facets: tuple  # facet indices containing the face
    interior: bool
    in_gamma: bool = False

    @property
    def compact(self) -> bool:
        return not self.dirs

    @property
    def key(self) -> tuple:
        return (frozenset(self.vertices), frozenset(self.dirs))


@dataclass(frozen=True)
class FaceMetrics:
    psi: tuple  # rational covector lying in Span(F)
    rho: int
    vol: Optional[int]  # None for non-compact faces


def cone_facets(gens: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Facet normals of a full-dimensional pointed cone, by double description.

    Returns primitive integer vectors y with y.g >= 0 for every generator
    and equality on a facet. Generators are processed in the given order.
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    d = len(gens[0])
    chosen: list[int] = []
    for i, g in enumerate(gens):
        if exact.rank([gens[j] for j in chosen] + [g]) > len(chosen):
            chosen.append(i)
        if len(chosen) == d:
            break
    if len(chosen) < d:
        raise ValueError("generators do not span the ambient space")
    inv = exact.inverse([list(gens[i]) for i in chosen])
    rays = [exact.primitive([inv[r][c] for r in range(d)]) for c in range(d)]
    processed = list(chosen)
    zero = [frozenset(i for i in processed if _dot(gens[i], r) == 0) for r in rays]
    for i in range(len(gens)):
        if i in chosen:
            continue
        g = gens[i]
        vals = [_dot(g, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new_rays = [rays[k] for k in pos] + [rays[k] for k in zer]
        new_zero = [zero[k] for k in pos] + [zero[k] | {i} for k in zer]
        for a in pos:
            for b in neg:
                common = zero[a] & zero[b]
                if len(common) < d - 2:
                    continue
                if any(k != a and k != b and common <= zero[k] for k in range(len(rays))):
                    continue
                va, vb = vals[a], vals[b]
                r = exact.primitive([va * y - vb * x for x, y in zip(rays[a], rays[b])])
                new_rays.append(r)
                new_zero.append(common | {i})
        rays, zero = new_rays, new_zero
        processed.append(i)
    return sorted(set(rays))


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


class NewtonPolyhedron:
    """conv(points) + R_{>=0}^n with its face lattice.

    Coordinates are 0-based internally; reports convert to 1-based.
    """

    def __init__(self, points: Iterable[Sequence[int]], n: Optional[int] = None):
        pts = sorted(set(tuple(int(x) for x in p) for p in points))
        if not pts:
            raise PreconditionError("empty support")
        self.n = n if n is not None else len(pts[0])
        if any(len(p) != self.n for p in pts):
            raise PreconditionError("inconsistent point dimensions")
        if (0,) * self.n in pts:
            raise PreconditionError("origin lies in the support")
        self.points = pts
        self._build_hull()
        self._build_faces()

    # ---------------------------------------------------------------- hull

    def _build_hull(self) -> None:
        n = self.n
        gens = [(1,) + p for p in self.points]
        gens += [(0,) + tuple(int(i == j) for j in range(n)) for i in range(n)]
        raw = cone_facets(gens)
        normals = []
        for r in raw:
            u = r[1:]
            if not any(u):
                continue  # the face at infinity t >= 0
            normals.append((u, -r[0]))
        # vertices: support points whose tight normals have full rank
        verts = []
        for p in self.points:
            tight = [u for u, N in normals if _dot(u, p) == N]
            if exact.rank(tight) == n:
                verts.append(p)
        self.vertices: list[Point] = sorted(verts)
        vidx = {v: i for i, v in enumerate(self.vertices)}
        facets = []
        for u, N in sorted(normals, key=lambda t: (t[1] == 0, t[0])):
            tv = frozenset(vidx[v] for v in self.vertices if _dot(u, v) == N)
            dirs = frozenset(i for i in range(n) if u[i] == 0)
            facets.append(Facet(tuple(u), N, tv, dirs))
        self.facets: list[Facet] = facets
        for p in self.points:
            for f in facets:
                assert _dot(f.normal, p) >= f.offset, "support point violates a facet"

    def _build_faces(self) -> None:
        found: dict[tuple, None] = {}
        frontier = [(f.vertices, f.dirs) for f in self.facets]
        for key in frontier:
            found[key] = None
        while frontier:
            nxt = []
            for V, D in frontier:
                for f in self.facets:
                    V2, D2 = V & f.vertices, D & f.dirs
                    if not V2 or (V2, D2) in found:
                        continue
                    found[(V2, D2)] = None
                    nxt.append((V2, D2))
            frontier = nxt
        faces = []
        for V, D in found:
            faces.append(self._make_face(V, D))
        faces.sort(key=lambda F: (F.dim, F.vertices, F.dirs))
        for i, F in enumerate(faces):
            F.index = i
        self.faces: list[Face] = faces
        self._by_key = {F.key: F for F in faces}
        interior_facets = [F for F in faces if F.dim == self.n - 1 and F.interior]
        for F in faces:
            F.in_gamma = any(set(F.vertices) <= set(G.vertices) and set(F.dirs) <= set(G.dirs)
                             for G in interior_facets)
            if F.compact:
                assert F.in_gamma, "compact face outside the visible complex"

    def _make_face(self, V: frozenset, D: frozenset) -> Face:
        vs = sorted(V)
        v0 = self.vertices[vs[0]]
        vecs = [tuple(a - b for a, b in zip(self.vertices[i], v0)) for i in vs[1:]]
        vecs += [self.unit(i) for i in sorted(D)]
        dim = exact.rank(vecs) if vecs else 0
        tight = tuple(j for j, f in enumerate(self.facets) if V <= f.vertices and D <= f.dirs)
        supp = set(D)
        for i in vs:
            supp |= {k for k, x in enumerate(self.vertices[i]) if x}
        return Face(-1, tuple(vs), tuple(sorted(D)), dim, tight, len(supp) == self.n)

    # ---------------------------------------------------------------- queries

    def unit(self, i: int) -> Point:
        return tuple(int(i == j) for j in range(self.n))

    def face(self, vertices: Iterable[int], dirs: Iterable[int] = ()) -> Face:
        key = (frozenset(vertices), frozenset(dirs))
        try:
            return self._by_key[key]
        except KeyError:
            raise PreconditionError(f"no face with vertices {sorted(key[0])} and directions {sorted(key[1])}")

    def face_by_points(self, points: Iterable[Sequence[int]], dirs: Iterable[int] = ()) -> Face:
        idx = {v: i for i, v in enumerate(self.vertices)}
        try:
            vs = [idx[tuple(p)] for p in points]
        except KeyError as exc:
            raise PreconditionError(f"{exc.args[0]} is not a vertex") from None
        return self.face(vs, dirs)

    def has_face(self, key: tuple) -> bool:
        return key in self._by_key

    def face_from_key(self, key: tuple) -> Face:
        return self._by_key[key]

    @property
    def gamma(self) -> list[Face]:
        return [F for F in self.faces if F.in_gamma]

    @property
    def compact_faces(self) -> list[Face]:
        return [F for F in self.faces if F.compact]

    def generators(self, F: Face) -> list[Point]:
        """Distinguished generators of the cone over F: vertices then axis vectors."""
        return [self.vertices[i] for i in F.vertices] + [self.unit(i) for i in F.dirs]

    def is_subface(self, G: Face, F: Face) -> bool:
        return set(G.vertices) <= set(F.vertices) and set(G.dirs) <= set(F.dirs)

    def subfaces(self, F: Face) -> list[Face]:
        return [G for G in self.faces if self.is_subface(G, F)]

    def point_on_face(self, p: Sequence[int], F: Face) -> bool:
        return all(_dot(self.facets[j].normal, p) == self.facets[j].offset for j in F.facets)

    def dual_rays(self, F: Face) -> list[Point]:
        """Primitive ray generators of the normal cone sigma_F."""
        return sorted({self.facets[j].normal for j in F.facets})

    def N(self, u: Sequence[int]) -> int:
        """min over the polyhedron of <u, x> for u >= 0."""
        return min(_dot(u, v) for v in self.vertices)

    def minimizing_face(self, u: Sequence) -> Optional[Face]:
        """The face on which the covector u >= 0 attains its minimum (None for u = 0)."""
        if not any(u):
            return None
        m = min(_dot(u, v) for v in self.vertices)
        V = frozenset(i for i, v in enumerate(self.vertices) if _dot(u, v) == m)
        D = frozenset(i for i in range(self.n) if u[i] == 0)
        return self._by_key[(V, D)]

    @cached_property
    def is_convenient(self) -> bool:
        return all(any(sum(1 for x in v if x) == 1 and v[i] for v in self.vertices) for i in range(self.n))

    @cached_property
    def is_simplicial(self) -> bool:
        """Every cone over a visible face has linearly independent generators."""
        return all(len(F.vertices) + len(F.dirs) == F.dim + 1 for F in self.gamma)

    # ---------------------------------------------------------------- metrics

    def span_basis(self, F: Face) -> list[Point]:
        return exact.saturated_basis(self.generators(F), self.n)

    def psi(self, F: Face) -> tuple:
        """The covector in Span(F) equal to 1 on vertices and 0 on directions of F."""
        return self.metrics(F).psi

    def metrics(self, F: Face) -> FaceMetrics:
        cache = self.__dict__.setdefault("_metrics", {})
        if F.index in cache:
            return cache[F.index]
        B = self.span_basis(F)
        gens = self.generators(F)
        targets = [1] * len(F.vertices) + [0] * len(F.dirs)
        m = [[_dot(b, g) for b in B] for g in gens]
        c, _ = exact.solve_rational(m, targets)
        if c is None:
            raise PreconditionError("psi undefined: the origin lies in the affine span of the face")
        psi = tuple(sum(cj * b[i] for cj, b in zip(c, B)) for i in range(self.n))
        rho = exact.lcm_list(Fraction(_dot(psi, b)).denominator for b in B) if B else 1
        vol = self.normalized_volume(F) if F.compact else None
        out = FaceMetrics(tuple(Fraction(x) for x in psi), rho, vol)
        cache[F.index] = out
        return out

    def normalized_volume(self, F: Face) -> int:
        if not F.compact:
            raise PreconditionError("normalized volume needs a compact face")
        total = 0
        for simplex in self.triangulate_face(F):
            pts = [self.vertices[i] for i in simplex]
            if len(pts) == 1:
                total += 1
                continue
            diffs = [tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]]
            total += exact.lattice_index(diffs, self.n)
        return total

    def triangulate_face(self, F: Face) -> list[tuple]:
        """Pulling triangulation of a compact face, pulling the smallest vertex first."""
        if len(F.vertices) == F.dim + 1:
            return [F.vertices]
        v = F.vertices[0]
        out = []
        for G in self.subfaces(F):
            if G.dim == F.dim - 1 and v not in G.vertices:
                for s in self.triangulate_face(G):
                    out.append(tuple(sorted((v,) + tuple(s))))
        return sorted(out)

    # ---------------------------------------------------------------- coordinate data

    def coordinate_subspaces(self) -> list[frozenset]:
        """All I (0-based) with R^I_{>=0} disjoint from the polyhedron, including the empty set."""
        out = []
        supports = [frozenset(i for i, x in enumerate(v) if x) for v in self.vertices]
        for k in range(self.n + 1):
            for I in combinations(range(self.n), k):
                I = frozenset(I)
                if not any(s <= I for s in supports):
                    out.append(I)
        return out

    def project(self, J: Sequence[int]) -> "NewtonPolyhedron":
        """Image of the polyhedron under the coordinate projection onto R^J."""
        J = sorted(set(J))
        I = frozenset(range(self.n)) - frozenset(J)
        if not J or I not in set(self.coordinate_subspaces()):
            raise PreconditionError(f"projection onto {sorted(j + 1 for j in J)} is not complementary to a coordinate subspace in the hypersurface")
        if not I:
            return self
        return NewtonPolyhedron([tuple(p[j] for j in J) for p in self.points], len(J))

    # ---------------------------------------------------------------- reporting

    def describe_face(self, F: Face) -> dict:
        return {
            "vertices": [list(self.vertices[i]) for i in F.vertices],
            "directions": [i + 1 for i in F.dirs],
        }


def build_newton(f: Polynomial) -> NewtonPolyhedron:
    return NewtonPolyhedron(f.support, f.n)


def normalized_volume(np: NewtonPolyhedron, F: Face) -> int:
    return np.normalized_volume(F)


def face_functionals(np: NewtonPolyhedron, F: Face) -> FaceMetrics:
    if not F.in_gamma:
        raise PreconditionError("face is not visible from the origin")
    return np.metrics(F)


def coordinate_subspaces(np: NewtonPolyhedron) -> list[frozenset]:
    return np.coordinate_subspaces()


def project_newton(np: NewtonPolyhedron, J: Sequence[int]) -> NewtonPolyhedron:
    return np.project(J)


def nondegeneracy_note(f: Polynomial, np: NewtonPolyhedron) -> Optional[str]:
    """None when the syntactic sufficient condition holds, else a warning string."""
    if np.is_simplicial and set(f.support) == set(np.vertices):
        return None
    return "results assume f is nondegenerate; this is not checked"
