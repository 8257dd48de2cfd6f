"""Lattice points of fundamental parallelepipeds and cyclotomic sums over them."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import exact, kernels
from .errors import PreconditionError
from .fan import DeltaCone, DeltaFan

MODES = ("open", "halfopen", "plus")


class CycSum:
    """Element of Z[Q/Z]: integer multiplicities on residues in [0, 1)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict[Fraction, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((t, 1) for t in terms)
        for q, m in items:
            q = exact.frac_part(Fraction(q))
            acc[q] = acc.get(q, 0) + int(m)
        self.terms = {q: m for q, m in acc.items() if m}

    @classmethod
    def _raw(cls, terms: dict) -> "CycSum":
        # terms already canonical residues
        out = cls.__new__(cls)
        out.terms = {q: m for q, m in terms.items() if m}
        return out

    @classmethod
    def single(cls, q, m: int = 1) -> "CycSum":
        return cls({q: m})

    def items(self) -> list:
        return sorted(self.terms.items())

    def __add__(self, other: "CycSum") -> "CycSum":
        t = dict(self.terms)
        for q, m in other.terms.items():
            t[q] = t.get(q, 0) + m
        return CycSum._raw(t)

    def __neg__(self) -> "CycSum":
        return CycSum._raw({q: -m for q, m in self.terms.items()})

    def __sub__(self, other: "CycSum") -> "CycSum":
        return self + (-other)

    def __mul__(self, k: int) -> "CycSum":
        return CycSum._raw({q: k * m for q, m in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, CycSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, q) -> int:
        return self.terms.get(exact.frac_part(Fraction(q)), 0)

    def total(self) -> int:
        return sum(self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def is_nonnegative(self) -> bool:
        return all(m > 0 for m in self.terms.values())

    def to_json(self) -> dict:
        return {_qstr(q): m for q, m in self.items()}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for q, m in self.items():
            if q == 0:
                parts.append((m < 0, str(abs(m))))
                continue
            base = f"[{_qstr(q)}]"
            parts.append((m < 0, base if abs(m) == 1 else f"{abs(m)}*{base}"))
        s = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            s += (" - " if neg else " + ") + body
        return s

    __repr__ = __str__


def _qstr(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


# ------------------------------------------------------------------ enumeration


class _BoxData:
    """SNF description of Z^k / W Z^k for generators written in a lattice basis."""

    def __init__(self, gens: Sequence[Sequence[int]]):
        gens = [tuple(int(x) for x in g) for g in gens]
        self.gens = gens
        self.k = len(gens)
        if not gens:
            self.d, self.Q = [], []
            return
        n = len(gens[0])
        basis = exact.saturated_basis(gens, n)
        if len(basis) != self.k:
            raise PreconditionError("box generators are linearly dependent")
        W = exact.columns_to_matrix([[int(x) for x in exact.express(basis, g)] for g in gens], self.k)
        s, _, q = exact.snf(W)
        self.d = [abs(s[i][i]) for i in range(self.k)]
        self.Q = q

    @property
    def index(self) -> int:
        out = 1
        for x in self.d:
            out *= x
        return out

    def numerators(self) -> tuple:
        """(D, N): row r of N holds D * lam for the r-th point of the half-open box."""
        k, D = self.k, exact.lcm_list(self.d)
        scale = [D // x for x in self.d]
        big = max((abs(x) for row in self.Q for x in row), default=0) * D * max(k, 1) >= 2 ** 62
        dt = object if big else np.int64
        Y = np.array(list(product(*(range(x) for x in self.d))), dtype=dt).reshape(-1, k)
        Q = np.array([[self.Q[i][j] * scale[j] for j in range(k)] for i in range(k)], dtype=dt)
        return D, (Y @ Q.T) % D

    def lambdas(self) -> Iterable[tuple]:
        """Fractional coordinate vectors of all points of the half-open box."""
        D, N = self.numerators()
        for row in N:
            yield tuple(Fraction(int(x), D) for x in row)


def enumerate_box(gens, mode: str = "halfopen") -> list[tuple[tuple, tuple]]:
    """Lattice points sum(lam_i g_i) with lam in [0,1)^k, (0,1)^k or (0,1]^k.

    Returns sorted (point, lam) pairs; gens may be a DeltaCone.
    """
    if isinstance(gens, DeltaCone):
        gens = gens.gens
    if mode not in MODES:
        raise PreconditionError(f"unknown box mode {mode!r}")
    box = _BoxData(gens)
    if box.k == 0:
        return [((), ())]
    D, N, P = _box_arrays(box, mode)
    out = [(tuple(int(x) for x in pt), tuple(Fraction(int(x), D) for x in lam)) for pt, lam in zip(P, N)]
    out.sort()
    return out


def _box_arrays(box: _BoxData, mode: str) -> tuple:
    D, N = box.numerators()
    if mode == "open":
        N = N[np.all(N != 0, axis=1)]
    elif mode == "plus":
        N = np.where(N == 0, D, N)
    G = np.array(box.gens, dtype=N.dtype)
    P = N @ G
    assert not np.any(P % D), "box point off the lattice"
    return D, N, P // D


def box_points(gens: Sequence[Sequence[int]], mode: str = "halfopen") -> np.ndarray:
    """Box points as the rows of an integer array, in no particular order."""
    if mode not in MODES:
        raise PreconditionError(f"unknown box mode {mode!r}")
    box = _BoxData(gens)
    if box.k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return _box_arrays(box, mode)[2]


def box_index(gens: Sequence[Sequence[int]]) -> int:
    """Number of lattice points in the half-open box: the gcd of the maximal minors."""
    gens = [tuple(int(x) for x in g) for g in gens]
    if not gens:
        return 1
    k = len(gens)
    g = 0
    for cols in combinations(range(len(gens[0])), k):
        g = gcd(g, exact.det_int([[r[c] for c in cols] for r in gens]))
    if g == 0:
        raise PreconditionError("box generators are linearly dependent")
    return abs(g)


def psi_residues(gens: Sequence[Sequence[int]], vertex_mask: Sequence[bool], open_mode: bool) -> CycSum:
    """Sum of [-psi(w)] over the open or half-open box, psi = sum of vertex coordinates."""
    box = _BoxData(gens)
    if box.k == 0:
        return CycSum.single(0)  # both boxes of the zero cone are {0}
    D = exact.lcm_list(box.d)
    c = np.array([[(box.Q[i][j] * (D // box.d[j])) % D for j in range(box.k)] for i in range(box.k)],
                 dtype=np.int64)
    hist = kernels.box_residues(c, np.array(box.d, dtype=np.int64), D,
                                np.array(vertex_mask, dtype=np.uint8), bool(open_mode))
    return CycSum._raw({Fraction(r, D): int(m) for r, m in enumerate(hist) if m})


def box_cyc_sum(delta: DeltaFan, c: DeltaCone) -> CycSum:
    """sum over the open box of C of [-psi(w)]."""
    return psi_residues(c.gens, c.vertex_mask(), True)


def box_cyc_sum_halfopen(delta: DeltaFan, c: DeltaCone) -> CycSum:
    return psi_residues(c.gens, c.vertex_mask(), False)


def bbox(gens: Sequence[Sequence[int]], v: Sequence) -> tuple:
    """Fractional-part vector of v in the generator basis (None if v is outside the span)."""
    lam = exact.express(gens, v)
    if lam is None:
        return None
    return tuple(exact.frac_part(x) for x in lam)


def compact_simplex_sum(vol: int, rho: int) -> CycSum:
    """Vol * sum_{i < rho} [i / rho]."""
    return CycSum({Fraction(i, rho): vol for i in range(rho)})
