"""Torus point counts over finite fields and the good-reduction gate."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np_

from . import exact, kernels
from .errors import PreconditionError
from .geometry import Face, NewtonPolyhedron, Polynomial, build_newton

BUDGET = 10 ** 8
MAX_FIELD = 2048


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _prime_factors(m: int) -> list[int]:
    out, i = [], 2
    while i * i <= m:
        if m % i == 0:
            out.append(i)
            while m % i == 0:
                m //= i
        i += 1
    if m > 1:
        out.append(m)
    return out


def reduce_mod(c: Fraction, p: int) -> int:
    c = Fraction(c)
    if c.denominator % p == 0:
        raise PreconditionError(f"coefficient {c} is not {p}-integral")
    return c.numerator * pow(c.denominator, -1, p) % p


# ------------------------------------------------------------------ finite fields


class Field:
    """F_q, q = p^k, with elements coded as base-p digit strings of polynomial residues.

    Codes 0 and 1 are the field's 0 and 1; for k = 1 codes are residues.
    """

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        self.p, self.k, self.q = p, k, p ** k
        if self.q > MAX_FIELD and k > 1:
            raise PreconditionError(f"field of size {self.q} exceeds the table limit")
        self.modulus = _irreducible(p, k) if k > 1 else None
        g = self._generator()
        exp = [1]
        for _ in range(self.q - 2):
            exp.append(self._mul(exp[-1], g))
        self.exp_tab = np_.array(exp, dtype=np_.int64)
        self.log = {v: i for i, v in enumerate(exp)}
        if k == 1:
            self.add_tab = None
        else:
            q = self.q
            digits = np_.array([[(c // p ** i) % p for i in range(k)] for c in range(q)], dtype=np_.int64)
            s = (digits[:, None, :] + digits[None, :, :]) % p
            w = np_.array([p ** i for i in range(k)], dtype=np_.int64)
            self.add_tab = (s * w).sum(axis=2)

    def _mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        da = [(a // p ** i) % p for i in range(k)]
        db = [(b // p ** i) % p for i in range(k)]
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        m = self.modulus  # monic, degree k, low-to-high
        for t in range(2 * k - 2, k - 1, -1):
            c = prod[t]
            if c:
                for i in range(k + 1):
                    prod[t - k + i] = (prod[t - k + i] - c * m[i]) % p
        return sum(prod[i] * p ** i for i in range(k))

    def _generator(self) -> int:
        q = self.q
        if q == 2:
            return 1
        fac = _prime_factors(q - 1)
        for g in range(2, q):
            if all(self._pow(g, (q - 1) // r) != 1 for r in fac):
                return g
        raise AssertionError("no generator found")

    def _pow(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self._mul(out, a)
            a = self._mul(a, a)
            e >>= 1
        return out

    def log_of_residue(self, r: int) -> int:
        """Discrete log of an element of the prime field, -1 for zero."""
        r %= self.p
        return -1 if r == 0 else self.log[r]


def _irreducible(p: int, k: int) -> list[int]:
    """Lexicographically first monic irreducible polynomial of degree k (low-to-high)."""
    from itertools import product

    for tail in product(range(p), repeat=k):
        m = list(tail) + [1]
        if m[0] == 0:
            continue
        if not any(_has_factor(m, d, p) for d in range(1, k // 2 + 1)):
            return m
    raise AssertionError("no irreducible polynomial")


def _has_factor(m: list[int], d: int, p: int) -> bool:
    from itertools import product

    for tail in product(range(p), repeat=d):
        g = list(tail) + [1]
        if _polymod(m, g, p) == [0] * d:
            return True
    return False


def _polymod(a: list[int], g: list[int], p: int) -> list[int]:
    a = a[:]
    d = len(g) - 1
    for t in range(len(a) - 1, d - 1, -1):
        c = a[t] % p
        if c:
            for i in range(d + 1):
                a[t - d + i] = (a[t - d + i] - c * g[i]) % p
    return [x % p for x in a[:d]]


# ------------------------------------------------------------------ counts


@dataclass
class CountRecord:
    face: int
    p: int
    d: int
    n0: int
    n1: int
    basis: list
    mtilde_basis: list
    exps: list  # exponent coordinates in the span basis
    mexps: list  # exponent coordinates in the M-tilde basis


def _scan(exps: list, coefs: list, fld: Field, rows: Optional[list] = None) -> tuple:
    d = len(exps[0]) if exps else 0
    if (fld.q - 1) ** d > BUDGET:
        raise PreconditionError(f"torus of size {(fld.q - 1) ** d} exceeds the scan budget")
    rows = rows if rows is not None else [coefs]
    logs = np_.array([[fld.log_of_residue(c) for c in row] for row in rows], dtype=np_.int64)
    e = np_.array(exps, dtype=np_.int64).reshape(len(exps), d)
    return kernels.torus_scan(e, logs, fld.q, fld.p, fld.exp_tab, fld.add_tab)


def face_coordinates(np: NewtonPolyhedron, K: Face, f: Polynomial, basis=None) -> tuple:
    """Span basis and the face polynomial's exponents and coefficients in it."""
    B = basis if basis is not None else exact.saturated_basis(np.generators(K), np.n)
    part = f.face_part(K, np)
    exps, coefs = [], []
    for e, c in sorted(part.items()):
        y = exact.express(B, e)
        assert y is not None and all(x.denominator == 1 for x in y)
        exps.append([int(x) for x in y])
        coefs.append(c)
    return B, exps, coefs


def mtilde_basis(w: Sequence[int], rho: int) -> list[tuple]:
    """Basis of {y : rho | w.y}: kernel of [w, -rho] projected to the first coordinates."""
    ker = exact.integer_kernel([list(w) + [-rho]])
    # the last coordinate is determined by the others, so the projection is a basis
    return [tuple(v[:-1]) for v in ker]


def torus_counts(f: Polynomial, np: NewtonPolyhedron, K: Face, p: int, basis=None) -> CountRecord:
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if not K.compact or not K.vertices:
        raise PreconditionError("point counts need a nonempty compact face")
    B, exps, coefs = face_coordinates(np, K, f, basis)
    for i in K.vertices:
        if Fraction(f.terms[np.vertices[i]]).numerator % p == 0:
            raise PreconditionError(f"vertex coefficient vanishes mod {p}")
    res = [reduce_mod(c, p) for c in coefs]
    fld = Field(p)
    d = len(B)
    z0, _, _ = _scan(exps, res, fld)
    # M-tilde: characters whose weight is divisible by rho
    m = np.metrics(K)
    w = [int(m.rho * sum(a * b for a, b in zip(m.psi, b_))) for b_ in B]
    Mb = mtilde_basis(w, m.rho)
    mexps = []
    for y in exps:
        z = exact.express(Mb, y)
        assert z is not None and all(x.denominator == 1 for x in z), "exponent outside M-tilde"
        mexps.append([int(x) for x in z])
    _, o1, _ = _scan(mexps, res, fld)
    return CountRecord(K.index, p, d, z0, o1, [list(b) for b in B], [list(b) for b in Mb], exps, mexps)


# ------------------------------------------------------------------ good reduction


@dataclass
class ReductionReport:
    p: int
    passed: bool
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"p": self.p, "passed": self.passed, "failures": self.failures, "notes": self.notes}


def good_reduction_check(f: Polynomial, p: int, k_max: int = 2, np: Optional[NewtonPolyhedron] = None) -> ReductionReport:
    """Partial test of good reduction: integrality, unit vertex coefficients, no torus singularity found."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    np = np or build_newton(f)
    rep = ReductionReport(p, True)
    rep.notes.append(f"nondegeneracy mod {p} is tested by search over fields of size up to {p}^{k_max}; this is partial")
    for e, c in f.terms.items():
        if Fraction(c).denominator % p == 0:
            rep.failures.append(f"coefficient of {list(e)} is not {p}-integral")
    if rep.failures:
        rep.passed = False
        return rep
    for v in np.vertices:
        if Fraction(f.terms[v]).numerator % p == 0:
            rep.failures.append(f"vertex coefficient at {list(v)} vanishes mod {p}")
    for K in np.compact_faces:
        if K.vertices and K.in_gamma and np.metrics(K).rho % p == 0:  # quotient by mu_rho must be free
            rep.failures.append(f"{p} divides the lattice distance {np.metrics(K).rho} of face {np.describe_face(K)['vertices']}")
    if rep.failures:
        rep.passed = False
        return rep
    for k in range(1, k_max + 1):
        q = p ** k
        if k > 1 and q > MAX_FIELD:
            rep.notes.append(f"skipped F_{q}: field too large")
            continue
        fld = None
        for K in np.compact_faces:
            if not K.vertices:
                continue
            B, exps, coefs = face_coordinates(np, K, f)
            d = len(B)
            if (q - 1) ** d > BUDGET:
                rep.notes.append(f"skipped face {np.describe_face(K)['vertices']} over F_{q}: scan budget")
                continue
            fld = fld or Field(p, k)
            res = [reduce_mod(c, p) for c in coefs]
            rows = [res] + [[(c * y[j]) % p for c, y in zip(res, exps)] for j in range(d)]
            _, _, sing = _scan(exps, res, fld, rows)
            if sing:
                rep.failures.append(f"face {np.describe_face(K)['vertices']} has {sing} singular torus points over F_{q}")
    rep.passed = not rep.failures
    return rep
