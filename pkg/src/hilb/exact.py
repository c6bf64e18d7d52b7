"""
Exact coefficient arithmetic.

Every coefficient in the package lives in the field Q(t1, t2, q).  Elements
are stored as reduced fractions of integer polynomials (FLINT ``fmpz_mpoly``)
in the single context ``(t1, t2, q)``:

* a *TPoly* is a `RatFunc` with constant denominator and no ``q``,
* a *TRat* is a `RatFunc` without ``q``,
* a *QRat* is any `RatFunc`.

Truncated expansions live in `QSeries` (powers of q), `SExpansion` (powers of
s = t1 + t2) and `LaurentU` (powers of v = iu after q = -e^v).  Truncation
orders are always explicit arguments.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import flint

__all__ = [
    "CTX", "VARS", "RatFunc", "Rational", "QSeries", "SExpansion", "LaurentU",
    "PoleError", "T1", "T2", "Q", "ZERO", "ONE", "as_ratfunc", "parse", "rsum",
    "series_expand", "s_expand", "laurent_u_substitute",
]

Rational = Fraction

VARS = ("t1", "t2", "q")
CTX = flint.fmpz_mpoly_ctx.get(VARS, "degrevlex")
# auxiliary context for t2 = s - t1
_S_CTX = flint.fmpz_mpoly_ctx.get(("t1", "s", "q"), "degrevlex")

_ZERO_P = CTX.from_dict({})
_ONE_P = CTX.constant(1)


class PoleError(ArithmeticError):
    """Raised when an expansion point is a pole of the expanded function."""


def _poly(x) -> flint.fmpz_mpoly:
    if isinstance(x, flint.fmpz_mpoly):
        return x
    return CTX.constant(int(x))


def _poly_from_fractions(terms: Mapping[tuple, Fraction]) -> tuple[flint.fmpz_mpoly, int]:
    """Integer polynomial and positive integer d with poly/d == sum of terms."""
    terms = {e: Fraction(c) for e, c in terms.items() if c}
    d = 1
    for c in terms.values():
        d = d * c.denominator // math.gcd(d, c.denominator)
    return CTX.from_dict({e: int(c * d) for e, c in terms.items()}), d


def _term_key(item):
    exps = item[0]
    return (-sum(exps), tuple(-e for e in exps))


def _format_poly(terms: Mapping[tuple, Fraction]) -> str:
    if not terms:
        return "0"
    out = []
    for exps, c in sorted(terms.items(), key=_term_key):
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(VARS, exps) if e
        )
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class RatFunc:
    """Reduced fraction num/den of integer polynomials in t1, t2, q.

    The canonical form has gcd(num, den) = 1 over Z[t1, t2, q] and a positive
    leading coefficient on den, so equal values have identical storage.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, *, reduced=False):
        if isinstance(num, Fraction):
            num, den = num.numerator, _poly(den) * num.denominator
        if isinstance(den, Fraction):
            num, den = _poly(num) * den.denominator, den.numerator
        num, den = _poly(num), _poly(den)
        if not reduced:
            if den.is_zero():
                raise ZeroDivisionError("RatFunc with zero denominator")
            if num.is_zero():
                den = _ONE_P
            elif not den.is_one():
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
                if den.leading_coefficient() < 0:
                    num, den = -num, -den
        self.num = num
        self.den = den
        self._hash = None

    # -- construction helpers -------------------------------------------------
    @classmethod
    def from_terms(cls, terms: Mapping[tuple, Fraction | int]) -> "RatFunc":
        """Polynomial with the given {(a, b, c): coefficient} terms."""
        num, d = _poly_from_fractions(terms)
        return cls(num, d)

    # -- predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_q_free(self) -> bool:
        return self.num.degrees()[2] <= 0 and self.den.degrees()[2] <= 0

    def is_integral(self) -> bool:
        """True if this is a polynomial with integer coefficients."""
        return self.den.is_one()

    def free_symbols(self) -> set[str]:
        degs = [max(a, b) for a, b in zip(self.num.degrees(), self.den.degrees())]
        return {v for v, d in zip(VARS, degs) if d > 0}

    # -- conversion ---------------------------------------------------------------
    def terms(self) -> dict[tuple, Fraction]:
        """Exponent -> rational coefficient map of a polynomial value."""
        if not self.is_polynomial():
            raise ValueError(f"not a polynomial: {self}")
        d = int(self.den.leading_coefficient())
        return {tuple(int(x) for x in e): Fraction(int(c), d)
                for e, c in self.num.to_dict().items()}

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        n = int(self.num.leading_coefficient()) if not self.num.is_zero() else 0
        return Fraction(n, int(self.den.leading_coefficient()))

    # -- arithmetic ----------------------------------------------------------------
    def __add__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        if g.is_one():
            return RatFunc(self.num * other.den + other.num * self.den,
                           self.den * other.den)
        a, b = self.den / g, other.den / g
        return RatFunc(self.num * b + other.num * a, self.den * b)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return as_ratfunc(other) - self

    def __mul__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        a, b, c, d = self.num, self.den, other.num, other.den
        g1 = a.gcd(d)
        g2 = c.gcd(b)
        if not g1.is_one():
            a, d = a / g1, d / g1
        if not g2.is_one():
            c, b = c / g2, b / g2
        num, den = a * c, b * d
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatFunc(num, den, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatFunc(num, den, reduced=True)

    def __truediv__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_ratfunc(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, reduced=True)

    def __eq__(self, other):
        other = as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(sorted(self.num.to_dict().items())),
                               tuple(sorted(self.den.to_dict().items()))))
        return self._hash

    # -- substitution --------------------------------------------------------------
    def compose(self, t1, t2, q) -> "RatFunc":
        """Substitute RatFunc values for t1, t2, q."""
        return _eval_poly(self.num, t1, t2, q) / _eval_poly(self.den, t1, t2, q)

    def swap_t(self) -> "RatFunc":
        return RatFunc(self.num.compose(_T2, _T1, _Q), self.den.compose(_T2, _T1, _Q))

    def at_q(self, value) -> "RatFunc":
        """Value at q = value (an integer or Fraction)."""
        return self.specialize(q=value)

    def specialize(self, t1=None, t2=None, q=None) -> "RatFunc":
        """Substitute rational numbers for any of t1, t2, q."""
        vals = (t1, t2, q)
        num = _specialize_poly(self.num, vals)
        den = _specialize_poly(self.den, vals)
        if den.is_zero():
            raise PoleError(f"{self} has a pole at {dict(zip(VARS, vals))}")
        return num / den

    def derivative(self, var: str = "q") -> "RatFunc":
        i = VARS.index(var)
        n, d = self.num, self.den
        return RatFunc(n.derivative(i) * d - n * d.derivative(i), d * d)

    def evaluate(self, t1: complex, t2: complex, q: complex) -> complex:
        """Floating-point value."""
        return _eval_float(self.num, (t1, t2, q)) / _eval_float(self.den, (t1, t2, q))

    # -- text ------------------------------------------------------------------------
    def __str__(self):
        if self.den.is_constant():
            return _format_poly(self.terms())
        num =_format_poly({e: Fraction(int(c)) for e, c in self.num.to_dict().items()})
        den = _format_poly({e: Fraction(int(c)) for e, c in self.den.to_dict().items()})
        if len(self.num.to_dict()) > 1:
            num = f"({num})"
        return f"{num}/({den})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


T1 = RatFunc(_T1 := CTX.gen(0))
T2 = RatFunc(_T2 := CTX.gen(1))
Q = RatFunc(_Q := CTX.gen(2))
ZERO = RatFunc(0)
ONE = RatFunc(1)


def as_ratfunc(x):
    """Coerce ints, Fractions, polynomials and strings to RatFunc."""
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, flint.fmpz_mpoly)):
        return RatFunc(x)
    if isinstance(x, Fraction):
        return RatFunc(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse(x)
    return NotImplemented


def rsum(items) -> RatFunc:
    """Sum of RatFuncs over a common denominator, reduced once at the end."""
    items = [x for x in map(as_ratfunc, items) if not x.num.is_zero()]
    if not items:
        return ZERO
    if len(items) == 1:
        return items[0]
    dens = []
    for x in items:
        if not any(x.den == d for d in dens):
            dens.append(x.den)
    L = dens[0]
    for d in dens[1:]:
        L = L * (d / L.gcd(d))
    num = _ZERO_P
    for x in items:
        num = num + (x.num if x.den == L else x.num * (L / x.den))
    return RatFunc(num, L)


def _eval_poly(p, t1, t2, q) -> RatFunc:
    vals = (as_ratfunc(t1), as_ratfunc(t2), as_ratfunc(q))
    acc = ZERO
    powers: dict = {}
    for exps, c in p.to_dict().items():
        term = RatFunc(int(c))
        for i, e in enumerate(exps):
            if e:
                key = (i, e)
                if key not in powers:
                    powers[key] = vals[i] ** e
                term = term * powers[key]
        acc = acc + term
    return acc


def _specialize_poly(p, vals) -> RatFunc:
    out: dict = {}
    for exps, c in p.to_dict().items():
        exps = tuple(int(e) for e in exps)
        coeff = Fraction(int(c))
        rest = list(exps)
        for i, v in enumerate(vals):
            if v is not None:
                coeff *= Fraction(v) ** exps[i]
                rest[i] = 0
        key = tuple(rest)
        out[key] = out.get(key, 0) + coeff
    return RatFunc.from_terms(out)


def _eval_float(p, vals) -> complex:
    total = 0
    for exps, c in p.to_dict().items():
        term = complex(int(c))
        for v, e in zip(vals, exps):
            if e:
                term *= v ** e
        total += term
    return total


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(t1|t2|q)|(\*\*|[-+*/^()]))")


def parse(text: str) -> RatFunc:
    """Parse the canonical text form (also accepts any +-*/^ expression)."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        num, name, op = m.groups()
        tokens.append(("num", int(num)) if num else ("name", name) if name
                      else ("op", "^" if op == "**" else op))
        pos = m.end()
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        i += 1
        return tokens[i - 1]

    def expr():
        val = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            val = val + term() if op == "+" else val - term()
        return val

    def term():
        val = factor()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            val = val * factor() if op == "*" else val / factor()
        return val

    def factor():
        if peek() == ("op", "-"):
            take()
            return -factor()
        if peek() == ("op", "+"):
            take()
            return factor()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            sign = 1
            if peek() == ("op", "-"):
                take()
                sign = -1
            kind, e = take()
            if kind != "num":
                raise ValueError(f"bad exponent in {text!r}")
            return base ** (sign * e)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return RatFunc(val)
        if kind == "name":
            return {"t1": T1, "t2": T2, "q": Q}[val]
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return inner
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    out = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return out


# ---------------------------------------------------------------------------
# Truncated power series in q
# ---------------------------------------------------------------------------

def _split_q(p) -> list:
    """Coefficients of q^0, q^1, ... of an integer polynomial, as t-polynomials."""
    groups: dict[int, dict] = {}
    for (a, b, c), coeff in p.to_dict().items():
        groups.setdefault(c, {})[(a, b, 0)] = coeff
    if not groups:
        return [_ZERO_P]
    top = max(groups)
    return [CTX.from_dict(groups.get(k, {})) for k in range(top + 1)]


class QSeries:
    """Truncated power series sum_{d=0}^{order} c_d q^d with q-free coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs = tuple(as_ratfunc(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("QSeries needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls([ZERO] * (order + 1))

    def __getitem__(self, d):
        return self.coeffs[d]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.coeffs[: order + 1])

    def _match(self, other):
        if isinstance(other, QSeries):
            n = min(self.order, other.order)
            return self.coeffs[: n + 1], other.coeffs[: n + 1]
        other = as_ratfunc(other)
        return self.coeffs, (other,) + (ZERO,) * self.order

    def __add__(self, other):
        a, b = self._match(other)
        return QSeries(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._match(other)
        return QSeries(x - y for x, y in zip(a, b))

    def __neg__(self):
        return QSeries(-c for c in self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            other = as_ratfunc(other)
            if other is NotImplemented:
                return NotImplemented
            return QSeries(c * other for c in self.coeffs)
        n = min(self.order, other.order)
        out = []
        for d in range(n + 1):
            acc = ZERO
            for i in range(d + 1):
                a, b = self.coeffs[i], other.coeffs[d - i]
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return QSeries(out)

    __rmul__ = __mul__

    def theta(self) -> "QSeries":
        """q d/dq."""
        return QSeries(c * d for d, c in enumerate(self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> "QSeries":
        return cls(parse(s) for s in json.loads(text))

    def __repr__(self):
        return f"QSeries({[str(c) for c in self.coeffs]})"


def series_expand(f, order: int) -> QSeries:
    """Taylor expansion of f at q = 0 up to and including q^order."""
    f = as_ratfunc(f)
    num = _split_q(f.num)
    den = _split_q(f.den)
    if den[0].is_zero():
        raise PoleError(f"{f} has a pole at q = 0")
    b0 = RatFunc(den[0])
    a = [RatFunc(c) for c in num] + [ZERO] * (order + 1)
    b = [RatFunc(c) for c in den]
    out = []
    for d in range(order + 1):
        acc = a[d]
        for i in range(1, min(d, len(b) - 1) + 1):
            if not b[i].is_zero() and not out[d - i].is_zero():
                acc = acc - b[i] * out[d - i]
        out.append(acc / b0)
    return QSeries(out)


# ---------------------------------------------------------------------------
# Expansion in s = t1 + t2
# ---------------------------------------------------------------------------

class SExpansion:
    """Truncated Laurent expansion sum_k c_k s^k with s = t1 + t2.

    ``coeffs[i]`` is the coefficient of ``s^(i - laurent_offset)``; the
    coefficients are rational in t1 (and q, when the source depends on q).
    """

    __slots__ = ("coeffs", "laurent_offset")

    def __init__(self, coeffs, laurent_offset: int = 0):
        self.coeffs = tuple(coeffs)
        self.laurent_offset = laurent_offset

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1 - self.laurent_offset

    def coefficient(self, k: int) -> RatFunc:
        i = k + self.laurent_offset
        if i < 0:
            return ZERO
        if i >= len(self.coeffs):
            raise IndexError(f"s^{k} is beyond the truncation order {self.order}")
        return self.coeffs[i]

    def resubstitute(self) -> RatFunc:
        """sum c_k (t1 + t2)^k over the stored range."""
        s = T1 + T2
        return sum((c * s ** (i - self.laurent_offset) for i, c in enumerate(self.coeffs)), ZERO)

    def __repr__(self):
        return f"SExpansion({[str(c) for c in self.coeffs]}, offset={self.laurent_offset})"


def _split_s(p) -> list:
    """Coefficients of s^0, s^1, ... after t2 -> s - t1, as RatFuncs in (t1, q)."""
    a, s, qq = _S_CTX.gens()
    sub = p.compose(a, s - a, qq, ctx=_S_CTX)
    groups: dict[int, dict] = {}
    for (i, j, k), c in sub.to_dict().items():
        groups.setdefault(j, {})[(i, 0, k)] = c
    if not groups:
        return [ZERO]
    return [RatFunc(CTX.from_dict(groups.get(j, {}))) for j in range(max(groups) + 1)]


def s_expand(f, order: int) -> SExpansion:
    """Laurent expansion in s = t1 + t2 (with t2 = s - t1) through s^order."""
    f = as_ratfunc(f)
    num = _split_s(f.num)
    den = _split_s(f.den)
    v = next((i for i, c in enumerate(den) if not c.is_zero()), None)
    if v is None:
        raise ZeroDivisionError("denominator vanishes identically after t2 = s - t1")
    den = den[v:]
    n_terms = order + v + 1
    a = num + [ZERO] * max(0, n_terms - len(num))
    out = []
    for k in range(n_terms):
        acc = a[k]
        for i in range(1, min(k, len(den) - 1) + 1):
            if not den[i].is_zero() and not out[k - i].is_zero():
                acc = acc - den[i] * out[k - i]
        out.append(acc / den[0])
    return SExpansion(out, laurent_offset=v)


# ---------------------------------------------------------------------------
# Laurent series in v = iu after q = -e^v
# ---------------------------------------------------------------------------

class LaurentU:
    """Laurent series in v = iu, known exactly for exponents <= ``order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Mapping[int, RatFunc], order: int):
        self.coeffs = {k: as_ratfunc(c) for k, c in coeffs.items()
                       if k <= order and not as_ratfunc(c).is_zero()}
        self.order = order

    @property
    def min_exp(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    def __getitem__(self, k: int) -> RatFunc:
        if k > self.order:
            raise IndexError(f"v^{k} is beyond the truncation order {self.order}")
        return self.coeffs.get(k, ZERO)

    def __mul__(self, other):
        if not isinstance(other, LaurentU):
            other = as_ratfunc(other)
            return LaurentU({k: c * other for k, c in self.coeffs.items()}, self.order)
        if not self.coeffs or not other.coeffs:
            return LaurentU({}, min(self.order, other.order))
        # each factor is only known up to its order; the product is known up to
        # min(order_a + minexp_b, order_b + minexp_a)
        order = min(self.order + other.min_exp, other.order + self.min_exp)
        out: dict[int, RatFunc] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if i + j <= order:
                    out[i + j] = out.get(i + j, ZERO) + a * b
        return LaurentU(out, order)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentU":
        """Multiply by v^k."""
        return LaurentU({e + k: c for e, c in self.coeffs.items()}, self.order + k)

    def odd_part(self) -> dict[int, RatFunc]:
        return {k: c for k, c in self.coeffs.items() if k % 2}

    def u_coefficients(self) -> dict[int, RatFunc]:
        """Coefficients in u, assuming only even powers of v occur (v^2 = -u^2)."""
        odd = self.odd_part()
        if odd:
            raise ValueError(f"odd powers of v present: {sorted(odd)}")
        return {k: -c if (k // 2) % 2 else c for k, c in self.coeffs.items()}

    def __eq__(self, other):
        if not isinstance(other, LaurentU):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def to_json(self) -> str:
        return json.dumps({str(k): str(c) for k, c in sorted(self.coeffs.items())})

    def __repr__(self):
        return f"LaurentU({ {k: str(c) for k, c in sorted(self.coeffs.items())} }, order={self.order})"


def _exp_substitute(p, length: int) -> list[RatFunc]:
    """Taylor coefficients in v of p(t1, t2, -e^v), for v^0 .. v^(length-1)."""
    parts = _split_q(p)
    out = []
    fact = 1
    for m in range(length):
        if m:
            fact *= m
        acc = ZERO
        for j, c in enumerate(parts):
            if not c.is_zero() and (m == 0 or j):
                acc = acc + RatFunc(c) * ((-1) ** j * j ** m)
        out.append(acc / fact)
    return out


def laurent_u_substitute(f, order: int) -> LaurentU:
    """Substitute q = -e^v and expand as a Laurent series in v through v^order."""
    f = as_ratfunc(f)
    if f.is_zero():
        return LaurentU({}, order)
    # find the order of vanishing of the denominator at v = 0
    probe = _exp_substitute(f.den, f.den.degrees()[2] + 2)
    while all(c.is_zero() for c in probe):
        probe = _exp_substitute(f.den, 2 * len(probe))
    v = next(i for i, c in enumerate(probe) if not c.is_zero())
    n_terms = order + v + 1
    if n_terms <= 0:
        return LaurentU({}, order)
    num = _exp_substitute(f.num, n_terms)
    den = _exp_substitute(f.den, n_terms + v)[v:]
    out = []
    for k in range(n_terms):
        acc = num[k]
        for i in range(1, k + 1):
            if not den[i].is_zero() and not out[k - i].is_zero():
                acc = acc - den[i] * out[k - i]
        out.append(acc / den[0])
    return LaurentU({k - v: c for k, c in enumerate(out)}, order)
