"""
Fractions whose denominators are kept as products of known irreducible factors.

Long recursions over Q(t1, t2) (the formal QDE solution) produce denominators
that are products of many linear forms.  Keeping them factored makes common
denominators free and replaces gcds by trial division.
"""

from __future__ import annotations

from math import gcd, lcm

from .exact import CTX, RatFunc

_ONE_P = CTX.constant(1)
_ZERO_P = CTX.from_dict({})


def _key(p):
    return tuple(sorted((tuple(int(e) for e in k), int(c)) for k, c in p.to_dict().items()))


class FactorBase:
    """Registry of primitive irreducible polynomials with positive leading term."""

    def __init__(self):
        self.polys: dict = {}

    def split(self, p):
        """(integer content, {key: exponent}) with p = content * prod factors."""
        if p.is_constant():
            return int(p.leading_coefficient()), {}
        # trial division by registered factors first; flint factor for the rest
        exps: dict = {}
        for key, f in self.polys.items():
            while True:
                quo, rem = divmod(p, f)
                if not rem.is_zero():
                    break
                p = quo
                exps[key] = exps.get(key, 0) + 1
            if p.is_constant():
                break
        if not p.is_constant():
            content, facs = p.factor()
            for f, e in facs:
                key = _key(f)
                self.polys.setdefault(key, f)
                exps[key] = exps.get(key, 0) + e
            c = int(content)
        else:
            c = int(p.leading_coefficient())
        return c, exps

    def poly(self, key):
        return self.polys[key]


class FFrac:
    """num / (dint * prod f^e) with dint a positive integer."""

    __slots__ = ("num", "den", "dint", "base")

    def __init__(self, num, den, dint, base):
        self.num, self.den, self.dint, self.base = num, den, dint, base

    @classmethod
    def from_ratfunc(cls, r: RatFunc, base: FactorBase) -> "FFrac":
        c, exps = base.split(r.den)
        num = r.num
        if c < 0:
            num, c = -num, -c
        return cls(num, exps, c, base)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __mul__(self, other: "FFrac") -> "FFrac":
        if self.num.is_zero() or other.num.is_zero():
            return FFrac(_ZERO_P, {}, 1, self.base)
        den = dict(self.den)
        for k, e in other.den.items():
            den[k] = den.get(k, 0) + e
        return FFrac(self.num * other.num, den, self.dint * other.dint, self.base)

    def scale(self, k: int) -> "FFrac":
        return FFrac(self.num * k, self.den, self.dint, self.base)

    def divide_by(self, p) -> "FFrac":
        """Divide by a polynomial (split over the factor base)."""
        c, exps = self.base.split(p)
        num = self.num
        if c < 0:
            num, c = -num, -c
        den = dict(self.den)
        for k, e in exps.items():
            den[k] = den.get(k, 0) + e
        return FFrac(num, den, self.dint * c, self.base)

    def reduce(self) -> "FFrac":
        num = self.num
        if num.is_zero():
            return FFrac(num, {}, 1, self.base)
        den = {}
        for k, e in self.den.items():
            f = self.base.poly(k)
            while e:
                quo, rem = divmod(num, f)
                if not rem.is_zero():
                    break
                num, e = quo, e - 1
            if e:
                den[k] = e
        g = gcd(int(num.content()), self.dint)
        dint = self.dint
        if g > 1:
            num, dint = num / g, dint // g
        return FFrac(num, den, dint, self.base)

    def to_ratfunc(self) -> RatFunc:
        """Exact RatFunc; call on reduced values to skip the gcd."""
        den = CTX.constant(self.dint)
        for k, e in self.den.items():
            den = den * self.base.poly(k) ** e
        return RatFunc(self.num, den, reduced=True)


def ffsum(items, base: FactorBase) -> FFrac:
    items = [x for x in items if not x.num.is_zero()]
    if not items:
        return FFrac(_ZERO_P, {}, 1, base)
    L: dict = {}
    for x in items:
        for k, e in x.den.items():
            if L.get(k, 0) < e:
                L[k] = e
    dint = 1
    for x in items:
        dint = lcm(dint, x.dint)
    num = _ZERO_P
    for x in items:
        term = x.num * (dint // x.dint)
        for k, e in L.items():
            extra = e - x.den.get(k, 0)
            if extra:
                term = term * base.poly(k) ** extra
        num = num + term
    return FFrac(num, L, dint, base)
