"""Local h-polynomials of the fan."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PreconditionError
from .fan import DeltaCone, DeltaFan


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial in t, coefficients indexed by degree."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def monomial(cls, deg: int, c: int = 1) -> "IntPoly":
        if deg < 0:
            raise ValueError("negative degree")
        return cls((0,) * deg + (c,))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return IntPoly(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(tuple(other * x for x in self.coeffs))
        out = [0] * max(0, len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        out = IntPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, t):
        total = 0
        for c in reversed(self.coeffs):
            total = total * t + c
        return total

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def reversed_to(self, d: int) -> "IntPoly":
        """t^d * p(1/t)."""
        if self.degree > d:
            raise ValueError("degree exceeds reversal bound")
        c = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return IntPoly(tuple(reversed(c)))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


T = IntPoly((0, 1))
T_MINUS_1 = IntPoly((-1, 1))


def local_h(delta: DeltaFan, c: DeltaCone) -> IntPoly:
    """l(Delta, C; t) = sum over C' >= C of (-1)^codim C' t^(codim C - e(C')) (t-1)^e(C')."""
    if not delta.is_simplicial:
        raise PreconditionError("local h-polynomials need a simplicial fan")
    if not delta.has(c.key):
        raise PreconditionError("cone is not in the fan")
    n = delta.n
    codim_c = n - c.dim
    total = IntPoly()
    for d in delta.supercones(c):
        e = d.excess
        sign = -1 if (n - d.dim) % 2 else 1
        total = total + sign * IntPoly.monomial(codim_c - e) * (T_MINUS_1 ** e)
    return total


def local_h_at_one(delta: DeltaFan, c: DeltaCone) -> int:
    """Independent evaluation at t = 1: signed count of excess-zero supercones."""
    n = delta.n
    return sum(-1 if (n - d.dim) % 2 else 1 for d in delta.supercones(c) if d.excess == 0)


def all_local_h(delta: DeltaFan) -> dict:
    return {c.key: local_h(delta, c) for c in delta.cones}
