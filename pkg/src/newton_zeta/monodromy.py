"""Eigenvalue multiplicities of monodromy and monodromy zeta functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from .boxes import CycSum, box_cyc_sum, box_cyc_sum_halfopen
from .errors import PreconditionError
from .fan import DeltaFan, build_delta, simplicial_fan
from .geometry import NewtonPolyhedron
from .localh import local_h_at_one
from .polys import RatFn, UPoly


def _fan(np: NewtonPolyhedron) -> DeltaFan:
    cache = np.__dict__.setdefault("_delta", [])
    if not cache:
        cache.append(build_delta(np))
    return cache[0]


def varchenko_etilde(np: NewtonPolyhedron, refine: bool = False) -> CycSum:
    """Reduced eigenvalue multiplicities at the origin.

    Sum over cones C with no axis generators and excess 0 of
    (-1)^(dim C + 1) * sum over the half-open box of C of [-psi(w)].
    With refine=True a non-simplicial fan is replaced by a simplicial
    refinement on the same rays.
    """
    delta = simplicial_fan(_fan(np), refine)
    total = CycSum()
    for c in delta.cones:
        if c.dirs or c.excess != 0:
            continue
        s = box_cyc_sum_halfopen(delta, c)
        total = total + (s if c.dim % 2 else -s)
    return total


def etilde_at_subspace(np: NewtonPolyhedron, I, refine: bool = False) -> CycSum:
    """Reduced multiplicities at a general point of the coordinate subspace A^I (0-based I)."""
    I = frozenset(I)
    if I not in set(np.coordinate_subspaces()):
        raise PreconditionError(f"{sorted(i + 1 for i in I)} does not index a coordinate subspace in the hypersurface")
    J = [j for j in range(np.n) if j not in I]
    return varchenko_etilde(np.project(J), refine)


def alternating_sum_lhs(np: NewtonPolyhedron, refine: bool = False) -> CycSum:
    total = CycSum()
    for I in np.coordinate_subspaces():
        e = etilde_at_subspace(np, I, refine)
        total = total + (e if (np.n - 1 - len(I)) % 2 == 0 else -e)
    return total


@dataclass
class RhsBreakdown:
    total: CycSum
    per_cone: dict = field(default_factory=dict)  # cone key -> (l(1), box sum)


def nonneg_rhs(np: NewtonPolyhedron, refine: bool = False) -> RhsBreakdown:
    """sum over cones C of l(Delta, C; 1) * sum over the open box of C of [-psi(w)]."""
    delta = simplicial_fan(_fan(np), refine)
    total = CycSum()
    per = {}
    for c in delta.cones:
        l1 = local_h_at_one(delta, c)
        if l1 == 0:
            continue
        s = box_cyc_sum(delta, c)
        if s.is_zero():
            continue
        per[c.key] = (l1, s)
        total = total + s * l1
    return RhsBreakdown(total, per)


# ------------------------------------------------------------------ zeta functions


@dataclass(frozen=True)
class FactoredZeta:
    """prod over m of (1 - t^m)^(c_m)."""

    factors: tuple  # sorted (m, c_m) with c_m != 0

    def to_ratfn(self) -> RatFn:
        num, den = UPoly([1]), UPoly([1])
        for m, c in self.factors:
            f = UPoly([1] + [0] * (m - 1) + [-1])
            if c > 0:
                num = num * f ** c
            else:
                den = den * f ** (-c)
        return RatFn(num, den)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        num = [_fac(m, c) for m, c in self.factors if c > 0]
        den = [_fac(m, -c) for m, c in self.factors if c < 0]
        s = "*".join(num) if num else "1"
        if den:
            d = "*".join(den)
            s += f"/({d})" if len(den) > 1 else f"/{d}"
        return s

    def to_json(self) -> dict:
        return {str(m): c for m, c in self.factors}


def _fac(m: int, c: int) -> str:
    base = "(1 - t)" if m == 1 else f"(1 - t^{m})"
    return base if c == 1 else f"{base}^{c}"


def _mobius(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    if n > 1:
        out = -out
    return out


def zeta_factor(e: CycSum) -> FactoredZeta:
    """(1 - t) * prod over alpha of (1 - exp(2 pi i alpha) t)^(m(alpha)) as a product of (1 - t^m)."""
    from math import gcd

    classes: dict[int, int] = {}
    for q, m in e.terms.items():
        den = q.denominator
        if den in classes and classes[den] != m:
            raise PreconditionError("not a rational zeta: multiplicities differ within a Galois class")
        classes[den] = m
    for den, m in classes.items():
        for a in range(den):
            if gcd(a, den) == 1 and e.coefficient(Fraction(a, den)) != m:
                raise PreconditionError("not a rational zeta: multiplicities differ within a Galois class")
    # the class of primitive m-th roots contributes prod_{d | m} (1 - t^d)^(mu(m/d))
    c: dict[int, int] = {1: 1}
    for den, k in classes.items():
        for d in range(1, den + 1):
            if den % d == 0:
                mu = _mobius(den // d)
                if mu:
                    c[d] = c.get(d, 0) + k * mu
    return FactoredZeta(tuple(sorted((m, x) for m, x in c.items() if x)))
