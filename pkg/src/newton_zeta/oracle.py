"""Brute-force oracles: truncated p-adic Poincare series and box enumeration by scanning."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np_

from . import exact
from .errors import PreconditionError
from .ffcount import is_prime
from .geometry import Polynomial
from .polys import RatFn

BUDGET = 10 ** 8


@dataclass
class PoincareSeries:
    """c[m] = normalized measure of {u in (pZ_p)^n : v_p(f(u)) = m}."""

    p: int
    depth: int
    coefficients: list

    def matches(self, z: RatFn) -> bool:
        """Compare with the Taylor expansion of z at t = 0 up to t^depth."""
        return list(z.series(self.depth)) == list(self.coefficients)

    def to_json(self) -> dict:
        return {"p": self.p, "depth": self.depth, "coefficients": [str(c) for c in self.coefficients]}


def _eval_mod(exps: np_.ndarray, coefs: list, pts: np_.ndarray, mod: int) -> np_.ndarray:
    """f(x) mod `mod` for each row of pts, in int64 with reductions after every product."""
    acc = np_.zeros(len(pts), dtype=np_.int64)
    for e, c in zip(exps, coefs):
        term = np_.full(len(pts), c % mod, dtype=np_.int64)
        for j, k in enumerate(e):
            for _ in range(int(k)):
                term = (term * pts[:, j]) % mod
        acc = (acc + term) % mod
    return acc


def padic_poincare_oracle(f: Polynomial, p: int, m_max: int) -> PoincareSeries:
    """Count solutions mod p^m by lifting, starting from the single class x = 0 mod p."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    n = f.n
    if p ** (n * m_max) > BUDGET:
        raise PreconditionError(f"p^(n*m_max) = {p ** (n * m_max)} exceeds the enumeration budget")
    top = p ** (m_max + 1)
    if top * top >= 2 ** 62:
        raise PreconditionError("modulus too large for int64 evaluation")
    exps = np_.array(list(f.terms), dtype=np_.int64)
    coefs = []
    for c in f.terms.values():
        if c.denominator % p == 0:
            raise PreconditionError(f"coefficient {c} is not {p}-integral")
        coefs.append(c.numerator * pow(c.denominator, -1, top) % top)
    # A[m] = #{x mod p^m : x = 0 mod p, f(x) = 0 mod p^m}; A[1] = 1 since f(0) = 0
    A = [1, 1]
    level = np_.zeros((1, n), dtype=np_.int64)
    lifts = np_.array(list(product(range(p), repeat=n)), dtype=np_.int64)
    for m in range(1, m_max + 1):
        pm = p ** m
        kids = (level[:, None, :] + pm * lifts[None, :, :]).reshape(-1, n)
        vals = _eval_mod(exps, coefs, kids, pm * p)
        level = kids[vals == 0]
        A.append(len(level))
    mu = [Fraction(1)] + [Fraction(A[m], p ** (n * (m - 1))) for m in range(1, m_max + 2)]
    c = [mu[m] - mu[m + 1] for m in range(m_max + 1)]
    return PoincareSeries(p, m_max, c)


def brute_box(gens: Sequence[Sequence[int]], mode: str = "halfopen") -> list[tuple[tuple, tuple]]:
    """Scan the bounding box of the parallelepiped and keep points with lambda in range."""
    gens = [tuple(int(x) for x in g) for g in gens]
    if not gens:
        return [((), ())]
    n = len(gens[0])
    if exact.rank(gens) != len(gens):
        raise PreconditionError("box generators are linearly dependent")
    lo = [sum(min(0, g[i]) for g in gens) for i in range(n)]
    hi = [sum(max(0, g[i]) for g in gens) for i in range(n)]
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    if size > 10 ** 6:
        raise PreconditionError(f"bounding box of {size} points exceeds the scan budget")
    if mode not in ("open", "halfopen", "plus"):
        raise PreconditionError(f"unknown box mode {mode!r}")
    # integer adjugate on k independent coordinates: det * lam = adj . pt[rows]
    k = len(gens)
    rows = _independent_rows(gens, n)
    sub = [[gens[j][r] for j in range(k)] for r in rows]
    det = int(exact.det(sub))
    inv = exact.inverse(sub)
    adj = np_.array([[int(x * det) for x in row] for row in inv], dtype=np_.int64)
    if det < 0:
        det, adj = -det, -adj
    G = np_.array(gens, dtype=np_.int64)
    pts = np_.array(list(product(*(range(a, b + 1) for a, b in zip(lo, hi)))), dtype=np_.int64)
    L = pts[:, rows] @ adj.T
    member = np_.all(L @ G == det * pts, axis=1)
    if mode == "open":
        ok = np_.all((L > 0) & (L < det), axis=1)
    elif mode == "halfopen":
        ok = np_.all((L >= 0) & (L < det), axis=1)
    else:
        ok = np_.all((L > 0) & (L <= det), axis=1)
    out = [(tuple(int(x) for x in pt), tuple(Fraction(int(x), det) for x in lam))
           for pt, lam in zip(pts[member & ok], L[member & ok])]
    out.sort()
    return out


def _independent_rows(gens: list, n: int) -> list[int]:
    rows: list[int] = []
    for r in range(n):
        trial = rows + [r]
        if exact.rank([[g[i] for g in gens] for i in trial]) == len(trial):
            rows = trial
    return rows


def facet_volume_etilde(f: Polynomial) -> "CycSum":
    """Reduced eigenvalue multiplicities at the origin from facet volumes of coordinate restrictions.

    For each nonempty coordinate subset I, every compact facet of the Newton
    polyhedron of f restricted to R^I contributes (-1)^(|I|-1) Vol * sum_{i < rho} [i / rho].
    Only valid when f is convenient; no fans or boxes are used.
    """
    from itertools import combinations

    from .boxes import CycSum
    from .geometry import NewtonPolyhedron

    n = f.n
    full = NewtonPolyhedron(f.support, n)
    if not full.is_convenient:
        raise PreconditionError("the facet-volume formula needs a convenient polynomial")
    acc: dict = {}
    for k in range(1, n + 1):
        for I in combinations(range(n), k):
            pts = [tuple(e[i] for i in I) for e in f.support if all(e[j] == 0 for j in range(n) if j not in I)]
            P = NewtonPolyhedron(pts, k)
            for F in P.compact_faces:
                if F.dim != k - 1 or not F.vertices:
                    continue
                m = P.metrics(F)
                sign = 1 if k % 2 else -1
                for i in range(m.rho):
                    q = Fraction(i, m.rho)
                    acc[q] = acc.get(q, 0) + sign * m.vol
    acc[Fraction(0)] = acc.get(Fraction(0), 0) - 1
    return CycSum({q: c for q, c in acc.items() if c})
