"""The local formal zeta function and its topological and p-adic specializations."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional

import numpy

from . import exact, kernels
from .boxes import box_index, box_points
from .errors import PreconditionError, VerificationError
from .fan import all_cells, triangulate_cone
from .geometry import Face, NewtonPolyhedron
from .polys import RatFn, UPoly

GENFUN_BUDGET = 200_000  # box points summed over the cells of one normal cone


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# ------------------------------------------------------------------ Laurent polynomials in L, T


class LaurentLT:
    """Integer Laurent polynomial in L and T: {(i, j): c} means c * L^i * T^j."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Mapping | None = None):
        self.c = {k: v for k, v in (coeffs or {}).items() if v}

    @classmethod
    def mono(cls, i: int = 0, j: int = 0, c: int = 1) -> "LaurentLT":
        return cls({(i, j): c})

    @classmethod
    def const(cls, c) -> "LaurentLT":
        return cls({(0, 0): c})

    def is_zero(self) -> bool:
        return not self.c

    def __add__(self, other) -> "LaurentLT":
        if not isinstance(other, LaurentLT):
            other = LaurentLT.const(other)
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, 0) + v
        return LaurentLT(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentLT":
        return LaurentLT({k: -v for k, v in self.c.items()})

    def __sub__(self, other) -> "LaurentLT":
        if not isinstance(other, LaurentLT):
            other = LaurentLT.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentLT":
        return LaurentLT.const(other) - self

    def __mul__(self, other) -> "LaurentLT":
        if not isinstance(other, LaurentLT):
            return LaurentLT({k: v * other for k, v in self.c.items()})
        out: dict = {}
        for (i1, j1), a in self.c.items():
            for (i2, j2), b in other.c.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return LaurentLT(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentLT":
        out = LaurentLT.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentLT):
            other = LaurentLT.const(other)
        return self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def divide_exact(self, i0: int, j0: int) -> Optional["LaurentLT"]:
        """Quotient by (1 - L^i0 T^j0) when it divides exactly, else None."""
        if (i0, j0) == (0, 0):
            raise ZeroDivisionError("factor is zero")
        w = (0, 1) if j0 else ((1 if i0 > 0 else -1), 0)
        gm = w[0] * i0 + w[1] * j0
        grade = lambda k: w[0] * k[0] + w[1] * k[1]
        if not self.c:
            return LaurentLT()
        lo = min(grade(k) for k in self.c)
        r = dict(self.c)
        q: dict = {}
        # g = 1 - m; the top part H of r is replaced by H/m
        while r:
            top = max(grade(k) for k in r)
            if top - lo < gm:
                return None
            for k in [k for k in r if grade(k) == top]:
                v = r.pop(k)
                # r - (-H/m) * (1 - m) = r + H/m - H
                km = (k[0] - i0, k[1] - j0)
                q[km] = q.get(km, 0) - v
                r[km] = r.get(km, 0) + v
                if r[km] == 0:
                    del r[km]
        return LaurentLT({k: -v for k, v in q.items()})

    def substitute(self, L, T):
        total = Fraction(0)
        for (i, j), v in self.c.items():
            total += v * Fraction(L) ** i * Fraction(T) ** j
        return total

    def to_upoly_t(self, L) -> tuple[UPoly, int]:
        """(P(t), k) with self(L, t) = P(t) * t^k, k the minimal T exponent."""
        if not self.c:
            return UPoly(), 0
        k = min(j for _, j in self.c)
        deg = max(j for _, j in self.c) - k
        co = [Fraction(0)] * (deg + 1)
        L = Fraction(L)
        for (i, j), v in self.c.items():
            co[j - k] += v * L ** i
        return UPoly(co), k

    def __str__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for (i, j), v in sorted(self.c.items(), key=lambda kv: (kv[0][1], -kv[0][0])):
            mono = "*".join(x for x in (_pw("L", i), _pw("T", j)) if x)
            mag = abs(v)
            body = mono if mono and mag == 1 else (f"{mag}*{mono}" if mono else str(mag))
            parts.append(("-" if v < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sg, body in parts[1:]:
            s += f" {sg} {body}"
        return s

    __repr__ = __str__


def _pw(var: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return var
    return f"{var}^{k}" if k > 0 else f"{var}^({k})"


L_MINUS_1 = LaurentLT({(1, 0): 1, (0, 0): -1})


# ------------------------------------------------------------------ rational functions in L, T


class RationalLT:
    """num / prod (1 - L^(-a) T^b)^m over a Counter {(a, b): m}."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentLT, den: Iterable | Mapping = ()):
        self.num = num if isinstance(num, LaurentLT) else LaurentLT.const(num)
        self.den = Counter(den)
        for (a, b) in self.den:
            if (a, b) == (0, 0) or b < 0:
                raise PreconditionError(f"bad denominator factor {(a, b)}")

    @classmethod
    def const(cls, c) -> "RationalLT":
        return cls(LaurentLT.const(c))

    def _over(self, den: Counter) -> LaurentLT:
        """Numerator rewritten over a denominator that contains self.den."""
        out = self.num
        for f, m in den.items():
            extra = m - self.den.get(f, 0)
            for _ in range(extra):
                out = out * factor_poly(*f)
        return out

    def __add__(self, other) -> "RationalLT":
        if not isinstance(other, RationalLT):
            other = RationalLT.const(other)
        den = self.den | other.den
        return RationalLT(self._over(den) + other._over(den), den)

    __radd__ = __add__

    def __neg__(self) -> "RationalLT":
        return RationalLT(-self.num, self.den)

    def __sub__(self, other) -> "RationalLT":
        if not isinstance(other, RationalLT):
            other = RationalLT.const(other)
        return self + (-other)

    def __mul__(self, other) -> "RationalLT":
        if isinstance(other, RationalLT):
            return RationalLT(self.num * other.num, self.den + other.den)
        return RationalLT(self.num * other, self.den)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalLT):
            other = RationalLT.const(other)
        den = self.den | other.den
        return self._over(den) == other._over(den)

    def __hash__(self):
        raise TypeError("RationalLT is not hashable")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def reduced(self) -> "RationalLT":
        """Cancel denominator factors that divide the numerator exactly."""
        num, den = self.num, Counter(self.den)
        for f in sorted(den):
            while den[f]:
                q = num.divide_exact(-f[0], f[1])
                if q is None:
                    break
                num = q
                den[f] -= 1
        return RationalLT(num, +den)

    def candidate_poles(self) -> set:
        return {Fraction(-a, b) for (a, b) in self.den if b > 0}

    def specialize(self, L, T) -> Fraction:
        d = Fraction(1)
        for (a, b), m in self.den.items():
            d *= (1 - Fraction(L) ** (-a) * Fraction(T) ** b) ** m
        return self.num.substitute(L, T) / d

    def at_prime(self, p: int) -> RatFn:
        """L = p as a rational function of t = T."""
        P, k = self.num.to_upoly_t(p)
        num = P * UPoly.monomial(k) if k >= 0 else P
        den = UPoly([1]) if k >= 0 else UPoly.monomial(-k)
        for (a, b), m in self.den.items():
            f = UPoly([1] + [0] * (b - 1) + [-Fraction(p) ** (-a)]) if b else UPoly([1 - Fraction(p) ** (-a)])
            den = den * f ** m
        return RatFn(num, den)

    def __str__(self) -> str:
        r = self.reduced()
        ns = str(r.num)
        if not r.den:
            return ns
        ds = "*".join(_factor_str(a, b, m) for (a, b), m in sorted(r.den.items()))
        if len(r.num.c) > 1:
            ns = f"({ns})"
        if sum(1 for _ in r.den) > 1 or any(m > 1 for m in r.den.values()):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    __repr__ = __str__


def factor_poly(a: int, b: int) -> LaurentLT:
    return LaurentLT({(0, 0): 1}) - LaurentLT.mono(-a, b)


def _factor_str(a: int, b: int, m: int) -> str:
    mono = "*".join(x for x in (_pw("L", -a), _pw("T", b)) if x)
    s = f"(1 - {mono})"
    return s if m == 1 else f"{s}^{m}"


# ------------------------------------------------------------------ cone generating functions


def _interior_cells(np: NewtonPolyhedron, K: Face, rays: list, order=None) -> list[tuple]:
    cells = triangulate_cone(rays, order)
    out = []
    for c in all_cells(cells):
        s = [sum(rays[i][k] for i in c) for k in range(np.n)]
        if np.minimizing_face(s).key == K.key:
            out.append(c)
    return out


def cone_genfun(np: NewtonPolyhedron, K: Face, order=None) -> RationalLT:
    """(L-1)^(n - dim K) * sum over lattice points u of the open normal cone of K of L^-<u,1> T^N(u)."""
    if not K.compact or not K.vertices:
        raise PreconditionError("cone_genfun needs a nonempty compact face")
    rays = np.dual_rays(K)
    v0 = np.vertices[K.vertices[0]]
    total = RationalLT(LaurentLT())
    cells = _interior_cells(np, K, rays, order)
    size = 0
    for c in cells:
        size += box_index([rays[i] for i in c])
        if size > GENFUN_BUDGET:
            raise PreconditionError(f"normal cone of face needs over {GENFUN_BUDGET} box points (budget exceeded)")
    for cell in cells:
        urays = [rays[i] for i in cell]
        pts = box_points(urays, "plus")
        keys = zip((-pts.sum(axis=1)).tolist(), (pts @ numpy.array(v0, dtype=pts.dtype)).tolist())
        box = LaurentLT(Counter(keys))
        den = Counter()
        zero = 0
        for u in urays:
            N = _dot(u, v0)
            if N == 0:
                assert sum(u) == 1
                zero += 1
            else:
                den[(sum(u), N)] += 1
        # (L - 1) / (1 - L^-1) = L for each ray with N = 0
        e = np.n - K.dim - zero
        if e < 0:
            raise VerificationError("too many rays with N = 0 in an interior cell")
        num = box * (L_MINUS_1 ** e) * LaurentLT.mono(zero, 0)
        total = total + RationalLT(num, den)
    return total


# ------------------------------------------------------------------ formal zeta and relations


def _c_const(np: NewtonPolyhedron, dimK: int) -> RationalLT:
    """(L-1)^(dim K + 1) / (1 - L^-1 T) * sum_{i=0}^{n-dim K-1} (1-L)^i."""
    s = LaurentLT()
    one_minus_L = LaurentLT.const(1) - LaurentLT.mono(1, 0)
    for i in range(np.n - dimK):
        s = s + one_minus_L ** i
    return RationalLT(L_MINUS_1 ** (dimK + 1) * s, {(1, 1): 1})


@dataclass
class Relations:
    """Equivalence classes of compact faces under G ~ F (F compact B1 with base G)."""

    classes: list  # list of sorted face-key lists
    pinned: dict  # class index -> primitive vertex key
    pairs: list  # (G key, F key)

    def class_of(self, key) -> int:
        for i, c in enumerate(self.classes):
            if key in c:
                return i
        raise KeyError(key)


def primitive_vertex(np: NewtonPolyhedron, K: Face) -> bool:
    return K.dim == 0 and exact.gcd_list(np.vertices[K.vertices[0]]) == 1


def b1_bases(np: NewtonPolyhedron, F: Face) -> list[Face]:
    """Nonempty bases G = conv(F minus A) over the B1 apices A of a compact face F."""
    from .poles import apices

    out = []
    for i, bases in apices(np, F):
        if any(np.vertices[i][l] == 1 for l in bases):
            rest = [v for v in F.vertices if v != i]
            if rest:
                out.append(np.face(rest))
    return out


def relations(np: NewtonPolyhedron) -> Relations:
    keys = [K.key for K in np.gamma if K.compact and K.vertices]
    parent = {k: k for k in keys}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    pairs = []
    for F in np.gamma:
        if not F.compact or F.dim < 1:
            continue
        for G in b1_bases(np, F):
            pairs.append((G.key, F.key))
            parent[find(G.key)] = find(F.key)
    groups: dict = {}
    for k in keys:
        groups.setdefault(find(k), []).append(k)
    order = lambda k: (len(k[0]), sorted(k[0]))
    classes = sorted((sorted(g, key=order) for g in groups.values()), key=lambda g: order(g[0]))
    pinned = {}
    for i, c in enumerate(classes):
        for k in c:
            if len(k[0]) == 1 and primitive_vertex(np, np.face_from_key(k)):
                pinned[i] = k
                break
    return Relations(classes, pinned, pairs)


@dataclass
class FormalZeta:
    np: NewtonPolyhedron
    terms: dict  # compact face key -> RationalLT coefficient of Y_K
    const: RationalLT = field(default_factory=lambda: RationalLT(LaurentLT()))

    def __add__(self, other: "FormalZeta") -> "FormalZeta":
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t[k] + v if k in t else v
        return FormalZeta(self.np, t, self.const + other.const)

    def normal_form(self) -> tuple[dict, RationalLT]:
        """Coefficients of the free class variables and the constant term."""
        rel = relations(self.np)
        free: dict[int, RationalLT] = {}
        const = self.const
        for key, coef in self.terms.items():
            dimK = self.np.face_from_key(key).dim
            ci = rel.class_of(key)
            sign = -1 if dimK % 2 else 1
            free[ci] = free[ci] + coef * sign if ci in free else coef * sign
            const = const + coef * _c_const(self.np, dimK)
        for ci, vkey in rel.pinned.items():
            if ci in free:
                const = const + free.pop(ci) * (RationalLT.const(1) - _c_const(self.np, 0))
        return {ci: v for ci, v in free.items() if not v.is_zero()}, const

    def specialize(self, values: Callable[[Face], RationalLT]) -> RationalLT:
        total = self.const
        for key, coef in self.terms.items():
            total = total + coef * values(self.np.face_from_key(key))
        return total

    def candidate_poles(self) -> set:
        out = set(self.const.candidate_poles())
        for v in self.terms.values():
            out |= v.candidate_poles()
        return out

    def to_str(self) -> str:
        parts = []
        for key, coef in self.terms.items():
            K = self.np.face_from_key(key)
            parts.append(f"Y[{_face_label(self.np, K)}]*({coef})")
        if not self.const.is_zero():
            parts.append(f"({self.const})")
        return " + ".join(parts) if parts else "0"


def _face_label(np: NewtonPolyhedron, K: Face) -> str:
    return ";".join(",".join(str(x) for x in np.vertices[i]) for i in K.vertices)


def formal_zeta(np: NewtonPolyhedron) -> FormalZeta:
    faces = [K for K in np.gamma if K.compact and K.vertices]
    parts = kernels.parallel_map(lambda K: cone_genfun(np, K), faces)
    return FormalZeta(np, {K.key: z for K, z in zip(faces, parts)})


def equals_mod_relations(z1: FormalZeta, z2: FormalZeta) -> bool:
    if z1.np is not z2.np and z1.np.vertices != z2.np.vertices:
        raise PreconditionError("formal zeta functions over different polyhedra")
    f1, c1 = z1.normal_form()
    f2, c2 = z2.normal_form()
    if set(f1) != set(f2):
        return False
    return all(f1[k] == f2[k] for k in f1) and c1 == c2


# ------------------------------------------------------------------ topological zeta


def _cone_J(np: NewtonPolyhedron, K: Face) -> dict:
    """sum over full cells of mult * prod 1/(N s + nu), as {sorted factor tuple: weight}."""
    rays = np.dual_rays(K)
    v0 = np.vertices[K.vertices[0]]
    out: dict = {}
    for cell in triangulate_cone(rays):
        urays = [rays[i] for i in cell]
        mult = box_index(urays)
        facs = tuple(sorted((_dot(u, v0), sum(u)) for u in urays if _dot(u, v0) != 0))
        out[facs] = out.get(facs, 0) + mult
    return out


def z_top(np: NewtonPolyhedron) -> RatFn:
    """Topological zeta function from the L -> 1 limit of the formal zeta function."""
    acc: dict = {}  # factor multiset (with the (1,1) factor for 1/(s+1)) -> coefficient
    for K in np.gamma:
        if not K.compact or not K.vertices:
            continue
        vol = np.metrics(K).vol
        chi0 = (-1) ** (K.dim - 1) * vol if K.dim >= 1 else 0
        chi1 = (-1) ** K.dim * vol
        for facs, mult in _cone_J(np, K).items():
            if chi1:
                acc[facs] = acc.get(facs, 0) + chi1 * mult
            if chi0:
                f2 = tuple(sorted(facs + ((1, 1),)))
                acc[f2] = acc.get(f2, 0) + chi0 * mult
    # common denominator: maximal multiplicity of each distinct linear factor
    lin = {}
    for facs in acc:
        cnt = Counter(_normal_linear(N, nu) for N, nu in facs)
        for f, m in cnt.items():
            lin[f] = max(lin.get(f, 0), m)
    den = UPoly([1])
    for (N, nu), m in lin.items():
        den = den * UPoly([nu, N]) ** m
    num = UPoly()
    for facs, c in acc.items():
        if not c:
            continue
        cnt = Counter(_normal_linear(N, nu) for N, nu in facs)
        scale = Fraction(c)
        for N, nu in facs:
            g = exact.gcd_list([N, nu])
            scale /= g
        part = UPoly([scale])
        for (N, nu), m in lin.items():
            k = m - cnt.get((N, nu), 0)
            if k:
                part = part * UPoly([nu, N]) ** k
        num = num + part
    return RatFn(num, den)


def _normal_linear(N: int, nu: int) -> tuple:
    g = exact.gcd_list([N, nu])
    return (N // g, nu // g)


# ------------------------------------------------------------------ p-adic zeta


def z_padic(np: NewtonPolyhedron, f, p: int, check: bool = True, k_max: int = 2) -> RatFn:
    """Igusa's local zeta function as a rational function of t = p^-s."""
    from .ffcount import good_reduction_check, torus_counts

    if check:
        rep = good_reduction_check(f, p, k_max=k_max, np=np)
        if not rep.passed:
            raise PreconditionError(f"no good reduction at p = {p}: " + "; ".join(rep.failures))
    z = formal_zeta(np)
    total = RatFn(UPoly())
    pt = Fraction(1, p)
    geo = RatFn(UPoly([0, pt]), UPoly([1, -pt]))  # p^-1 t / (1 - p^-1 t)
    keys = list(z.terms)
    recs = kernels.parallel_map(lambda k: torus_counts(f, np, np.face_from_key(k), p), keys)
    for key, rec in zip(keys, recs):
        coef = z.terms[key]
        y = geo * rec.n0 + RatFn.const(rec.n1)
        total = total + coef.at_prime(p) * y
    return total + z.const.at_prime(p)
