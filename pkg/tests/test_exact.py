from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hilb.exact import (ONE, Q, T1, T2, ZERO, LaurentU, QSeries, RatFunc, laurent_u_substitute,
                        parse, rsum, s_expand, series_expand)

coef = st.integers(-3, 3)
mono = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
poly = st.dictionaries(mono, coef, max_size=4).map(RatFunc.from_terms)
nonzero = poly.filter(lambda p: not p.is_zero())
ratfunc = st.builds(lambda a, b: a / b, poly, nonzero)
# regular at q = 0: denominator with nonzero constant term in q
regular = st.builds(lambda a, b, c: a / (b + c * Q),
                    poly, st.integers(1, 3).map(RatFunc), poly)
settings.register_profile("hilb", max_examples=40, deadline=None)
settings.load_profile("hilb")


@given(ratfunc, ratfunc, ratfunc)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(ratfunc, nonzero)
def test_cancellation(a, b):
    assert (a * b) / b == a


@given(nonzero)
def test_canonical_form(a):
    # reduced with positive leading denominator coefficient, and round-trips through text
    assert parse(str(a)) == a
    assert str(a * ONE) == str(a)


def test_rsum_matches_fold():
    items = [ONE / (1 - Q), T1 / (1 + Q), -ONE / (1 - Q * Q), T2]
    acc = ZERO
    for x in items:
        acc = acc + x
    assert rsum(items) == acc


def _univariate_oracle(num, den, order):
    # long division on Fraction coefficient lists
    out = []
    num = num + [Fraction(0)] * (order + 1)
    for d in range(order + 1):
        acc = num[d] - sum(den[i] * out[d - i] for i in range(1, min(d, len(den) - 1) + 1))
        out.append(acc / den[0])
    return out


@pytest.mark.parametrize("f, want", [
    (ONE / (1 - Q), [1, 1, 1, 1]),
    (RatFunc(Fraction(-1, 2)) * (1 - Q) / (1 + Q), [Fraction(-1, 2), 1, -1, 1]),
])
def test_series_examples(f, want):
    assert list(series_expand(f, 3)) == [RatFunc(w) for w in want]


def test_series_jj_instance():
    f = Q / (1 + Q) + 2 * Q ** 2 / (1 - Q ** 2)
    assert list(series_expand(f, 5)) == [ZERO] + [ONE] * 5


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4),
       st.lists(st.integers(-4, 4), min_size=1, max_size=4).filter(lambda l: l[0] != 0))
def test_series_against_long_division(num, den):
    f = sum((c * Q ** i for i, c in enumerate(num)), ZERO) / \
        sum((c * Q ** i for i, c in enumerate(den)), ZERO)
    want = _univariate_oracle([Fraction(c) for c in num], [Fraction(c) for c in den], 6)
    assert list(series_expand(f, 6)) == [RatFunc(w) for w in want]


@given(regular, regular)
def test_series_multiplicative(f, g):
    assert series_expand(f * g, 5) == series_expand(f, 5) * series_expand(g, 5)


def test_s_expand_examples():
    e = s_expand(T1 + T2, 1)
    assert e.coefficient(0) == ZERO and e.coefficient(1) == ONE
    e = s_expand(T1 * T2, 1)
    assert e.coefficient(0) == -T1 ** 2 and e.coefficient(1) == T1
    e = s_expand(ONE / (T1 * T2), 1)
    assert e.coefficient(0) == -ONE / T1 ** 2 and e.coefficient(1) == -ONE / T1 ** 3


@given(poly)
def test_s_expand_resubstitutes(p):
    deg = 6
    assert s_expand(p, deg).resubstitute() == p


def test_laurent_examples():
    c = laurent_u_substitute(T1 + 3, 4)
    assert c.coeffs == {0: T1 + 3}
    # (1+q)/(1-q) at q = -e^v is -tanh(v/2)
    t = laurent_u_substitute((1 + Q) / (1 - Q), 5)
    assert t.coeffs == {1: RatFunc(Fraction(-1, 2)), 3: RatFunc(Fraction(1, 24)),
                        5: RatFunc(Fraction(-1, 240))}
    r = laurent_u_substitute(ONE / (1 + Q), 1)
    assert r.coeffs == {-1: -ONE, 0: RatFunc(Fraction(1, 2)), 1: RatFunc(Fraction(-1, 12))}


@given(st.sampled_from([ONE / (1 + Q), (1 + Q) / (1 - Q), Q / (1 - Q ** 2), T1 + Q, ONE / (1 + Q + Q * Q)]),
       st.sampled_from([ONE / (1 + Q), T2 * Q, (1 - Q) / (1 + Q ** 3), ONE + Q]))
def test_laurent_multiplicative(f, g):
    a, b = laurent_u_substitute(f, 6), laurent_u_substitute(g, 6)
    prod = a * b
    assert laurent_u_substitute(f * g, prod.order) == prod


def test_qseries_json_roundtrip():
    s = series_expand(T1 / (1 - T2 * Q), 4)
    assert QSeries.from_json(s.to_json()) == s


def test_laurent_u_rejects_odd():
    with pytest.raises(ValueError):
        LaurentU({1: ONE}, 3).u_coefficients()
