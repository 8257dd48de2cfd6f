"""Univariate polynomials and rational functions over Q."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .exact import lcm_list, gcd_list


class UPoly:
    """Dense univariate polynomial with Fraction coefficients (index = degree)."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, a) -> "UPoly":
        return cls([a])

    @classmethod
    def monomial(cls, k: int, a=1) -> "UPoly":
        return cls([0] * k + [a])

    @classmethod
    def linear(cls, a, b) -> "UPoly":
        """a*x + b"""
        return cls([b, a])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    @property
    def lead(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other) -> "UPoly":
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        a, b = self.c, other.c
        m = max(len(a), len(b))
        return UPoly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m))

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly(-x for x in self.c)

    def __sub__(self, other) -> "UPoly":
        if not isinstance(other, UPoly):
            other = UPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "UPoly":
        return UPoly.const(other) - self

    def __mul__(self, other) -> "UPoly":
        if not isinstance(other, UPoly):
            o = Fraction(other)
            return UPoly(x * o for x in self.c)
        if not self.c or not other.c:
            return UPoly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] += x * y
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UPoly":
        out, base = UPoly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(0, len(r) - len(other.c) + 1)
        lead = other.c[-1]
        while len(r) >= len(other.c) and r:
            k = len(r) - len(other.c)
            f = r[-1] / lead
            q[k] = f
            for i, y in enumerate(other.c):
                r[i + k] -= f * y
            while r and r[-1] == 0:
                r.pop()
        return UPoly(q), UPoly(r)

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[1]

    def monic(self) -> "UPoly":
        return self * (1 / self.lead) if self.c else self

    def __call__(self, x):
        total = 0 * x if not isinstance(x, int) else Fraction(0)
        for c in reversed(self.c):
            total = total * x + c
        return total

    def compose_scaled(self, a) -> "UPoly":
        """p(a * x)."""
        a = Fraction(a)
        return UPoly(c * a ** k for k, c in enumerate(self.c))

    def content_primitive(self) -> tuple[Fraction, "UPoly"]:
        """Split p = content * primitive integer polynomial with positive leading coefficient."""
        if not self.c:
            return Fraction(0), self
        den = lcm_list(x.denominator for x in self.c)
        ints = [int(x * den) for x in self.c]
        g = gcd_list(ints)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), UPoly(Fraction(x, g) for x in ints)

    def int_coeffs(self) -> list[int]:
        assert all(x.denominator == 1 for x in self.c)
        return [int(x) for x in self.c]

    def to_str(self, var: str = "s", descending: bool = True) -> str:
        if not self.c:
            return "0"
        terms = []
        idx = range(len(self.c) - 1, -1, -1) if descending else range(len(self.c))
        for k in idx:
            c = self.c[k]
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                body = _fstr(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fstr(mag)}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"UPoly({self.to_str('x')})"


def _fstr(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def pgcd(a: UPoly, b: UPoly) -> UPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


class RatFn:
    """Reduced quotient of univariate polynomials over Q with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UPoly, den: Optional[UPoly] = None, reduce: bool = True):
        if den is None:
            den = UPoly([1])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            g = pgcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.lead
            num, den = num * (1 / lead), den * (1 / lead)
        self.num, self.den = num, den

    @classmethod
    def const(cls, a) -> "RatFn":
        return cls(UPoly.const(a))

    def __add__(self, other) -> "RatFn":
        if not isinstance(other, RatFn):
            other = RatFn.const(other)
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFn":
        return RatFn(-self.num, self.den, reduce=False)

    def __sub__(self, other) -> "RatFn":
        if not isinstance(other, RatFn):
            other = RatFn.const(other)
        return self + (-other)

    def __mul__(self, other) -> "RatFn":
        if not isinstance(other, RatFn):
            return RatFn(self.num * other, self.den)
        return RatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFn":
        if not isinstance(other, RatFn):
            other = RatFn.const(other)
        return RatFn(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFn):
            other = RatFn.const(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return Fraction(self.num(x)) / Fraction(d)

    def series(self, order: int) -> list[Fraction]:
        """Taylor coefficients at 0 up to x^order (denominator must not vanish at 0)."""
        d = list(self.den.c) + [Fraction(0)] * (order + 1)
        nm = list(self.num.c) + [Fraction(0)] * (order + 1)
        if d[0] == 0:
            raise ZeroDivisionError("pole at 0")
        out = []
        for k in range(order + 1):
            acc = nm[k] - sum(d[j] * out[k - j] for j in range(1, k + 1))
            out.append(acc / d[0])
        return out

    def poles(self) -> dict:
        """Rational poles with multiplicity (irrational roots are not listed)."""
        out = {}
        den = self.den
        for r in rational_roots(den):
            m = 0
            lin = UPoly([-r, 1])
            while True:
                q, rem = den.divmod(lin)
                if not rem.is_zero():
                    break
                den = q
                m += 1
            out[r] = m
        return out

    def factored_str(self, var: str = "s") -> str:
        """Integer numerator over content times product of primitive integer factors."""
        num_content, num_prim = self.num.content_primitive()
        den = self.den
        lin = []
        for r, m in sorted(self.poles().items(), key=lambda kv: (kv[0].denominator, -kv[0].numerator)):
            fac = UPoly([-r.numerator, r.denominator])  # den*x - num
            for _ in range(m):
                den = den.divmod(UPoly([-r, 1]))[0]
            lin.append((fac, m))
        rest_content, rest_prim = den.content_primitive()
        # self = num_content*num_prim / (rest_content*rest_prim*prod(x - r)^m)
        # and (x - r) = fac / den(r)
        scale = num_content / rest_content
        for (fac, m) in lin:
            scale *= Fraction(fac.c[1]) ** m
        # display as sign * (a * num_prim) / (b * factors)
        sign = "-" if scale < 0 else ""
        scale = abs(scale)
        a, b = scale.numerator, scale.denominator
        numer = num_prim * a
        num_s = numer.to_str(var) if not numer.is_zero() else "0"
        if numer.is_zero():
            return "0"
        dens = []
        if b != 1:
            dens.append(str(b))
        for fac, m in lin:
            f = f"({fac.to_str(var)})"
            dens.append(f if m == 1 else f"{f}^{m}")
        if rest_prim.degree > 0:
            dens.append(f"({rest_prim.to_str(var)})")
        if len(numer.c) > 1 and (dens or sign):
            num_s = f"({num_s})"
        if not dens:
            return sign + num_s
        den_s = dens[0] if len(dens) == 1 else "(" + "*".join(dens) + ")"
        return f"{sign}{num_s}/{den_s}"

    def to_str(self, var: str = "t") -> str:
        n, d = self.num, self.den
        ns = n.to_str(var)
        if d == UPoly([1]):
            return ns
        return f"({ns})/({d.to_str(var)})"

    def __repr__(self) -> str:
        return f"RatFn({self.to_str('x')})"


def rational_roots(p: UPoly) -> list[Fraction]:
    """Distinct rational roots by the rational root test."""
    if p.degree < 1:
        return []
    _, prim = p.content_primitive()
    c = prim.int_coeffs()
    roots = set()
    k = 0
    while c[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
    c = c[k:]
    a0, an = abs(c[0]), abs(c[-1])
    if len(c) == 1:
        return sorted(roots)
    for pn in _divisors(a0):
        for qd in _divisors(an):
            for s in (1, -1):
                r = Fraction(s * pn, qd)
                if r not in roots and prim(r) == 0:
                    roots.add(r)
    return sorted(roots)


def _divisors(m: int) -> list[int]:
    m = abs(m)
    out = []
    i = 1
    while i * i <= m:
        if m % i == 0:
            out.append(i)
            if i * i != m:
                out.append(m // i)
        i += 1
    return out
