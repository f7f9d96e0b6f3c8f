import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from rlab.series import (
    PoleError,
    TruncatedSeries,
    chart_monomial,
    first_discrepancy,
    geometric_expand,
    graded_lex_key,
    poch_ratio_expand,
    qpoch_series,
    ratio_expand,
    sorted_terms,
    theta_ratio_expand,
    x_exponent,
)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=7).map(
    lambda f: mpq(f.numerator, f.denominator))


@st.composite
def series(draw, nvars=2, order=3, unit=False):
    terms = {}
    for d in range(order + 1):
        for a in range(d + 1):
            k = (a, d - a) if nvars == 2 else (d,)
            if nvars == 1 and a:
                continue
            terms[k] = draw(rationals)
    if unit:
        terms[(0,) * nvars] = draw(rationals.filter(bool))
    return TruncatedSeries(nvars, order, terms)


def test_add_identities():
    one = TruncatedSeries.one(1, 2)
    zero = TruncatedSeries.zero(1, 2)
    assert one + zero == one
    a = TruncatedSeries(1, 2, {(0,): 1, (1,): 1})
    b = TruncatedSeries(1, 2, {(0,): 1, (1,): -1})
    assert a + b == TruncatedSeries.constant(2, 1, 2)
    assert not (a + a.scale(-1)).terms


def test_mul_truncates():
    a = TruncatedSeries(1, 2, {(0,): 1, (1,): 1})
    b = TruncatedSeries(1, 2, {(0,): 1, (1,): -1})
    assert (a * b).terms == {(0,): 1, (2,): -1}
    D = 5
    geo = TruncatedSeries(1, D, {(n,): 1 for n in range(D + 1)})
    assert geo * TruncatedSeries(1, D, {(0,): 1, (1,): -1}) == TruncatedSeries.one(1, D)


def test_geometric_expand():
    assert geometric_expand(1, (1,), 3).terms == {(k,): 1 for k in range(4)}
    assert geometric_expand(0, (1,), 3) == TruncatedSeries.one(1, 3)
    g = geometric_expand(2, (1, 1), 4)
    assert g.terms == {(0, 0): 1, (1, 1): 2, (2, 2): 4}
    back = g * TruncatedSeries(2, 4, {(0, 0): 1, (1, 1): -2})
    assert back == TruncatedSeries.one(2, 4)
    with pytest.raises(PoleError):
        geometric_expand(1, (0,), 3)


def test_poch_ratio_expand_examples():
    q = mpq(1, 2)
    assert poch_ratio_expand(q, q, q, (1,), 4) == TruncatedSeries.one(1, 4)
    s = poch_ratio_expand(0, q, q, (1,), 1)
    assert s.coefficient((1,)) == 1


@pytest.mark.parametrize("a,b,q", [(mpq(2, 3), mpq(5, 7), mpq(3, 4)), (mpq(3), mpq(1, 5), mpq(2, 5))])
def test_poch_ratio_q_binomial(a, b, q):
    # (a z;q)_inf/(b z;q)_inf = sum_k (a/b;q)_k b^k / (q;q)_k z^k
    D = 6
    s = poch_ratio_expand(a, b, q, (1,), D)
    c, qq = mpq(1), mpq(1)
    for k in range(D + 1):
        assert s.coefficient((k,)) == c * b**k / qq
        c *= 1 - (a / b) * q**k
        qq *= 1 - q ** (k + 1)


def test_poch_ratio_functional_equation():
    # F(z) = (a z)/(b z) satisfies (1 - b z) F(z) = (1 - a z) F(q z)
    a, b, q, D = mpq(2, 3), mpq(5, 7), mpq(3, 4), 6
    F = poch_ratio_expand(a, b, q, (1,), D)
    Fq = F.map_coefficients(lambda k: q ** k[0])
    lhs = TruncatedSeries(1, D, {(0,): 1, (1,): -b}) * F
    rhs = TruncatedSeries(1, D, {(0,): 1, (1,): -a}) * Fq
    assert lhs == rhs


def test_qpoch_series_finite_product():
    q, c = mpq(2, 3), mpq(5, 4)
    s = qpoch_series(c, q, 3, (1,), 4)
    expect = TruncatedSeries.one(1, 4)
    for n in range(3):
        expect = expect * TruncatedSeries(1, 4, {(0,): 1, (1,): -c * q**n})
    assert s == expect


def test_ratio_expand():
    s = ratio_expand(mpq(3), mpq(1, 2), (1,), 3)
    back = s * TruncatedSeries(1, 3, {(0,): 1, (1,): mpq(-1, 2)})
    assert back == TruncatedSeries(1, 3, {(0,): 1, (1,): -3})


@pytest.mark.parametrize("N,i,j", [(2, 1, 2), (2, 2, 1), (3, 1, 3), (3, 3, 2)])
def test_theta_routes_agree(N, i, j):
    u = mpq(3, 5)
    a = theta_ratio_expand(u, i, j, N, 5, "product")
    b = theta_ratio_expand(u, i, j, N, 5, "triple")
    assert first_discrepancy(a, b) is None


def test_theta_trivial_cases():
    assert theta_ratio_expand(1, 1, 2, 2, 4) == TruncatedSeries.one(2, 4)
    # p-free part for i > j is the plain ratio (1 - u x_i/x_j)/(1 - x_i/x_j)
    u = mpq(2, 7)
    s = theta_ratio_expand(u, 2, 1, 2, 4)
    pfree = s.select(lambda k: k[1] == 0)
    assert pfree == ratio_expand(u, 1, (1, 0), 4).select(lambda k: k[1] == 0)


def test_chart_monomial_and_exponent():
    assert chart_monomial(1, 3, 3) == (1, 1, 0)
    assert chart_monomial(3, 5, 3) == (1, 0, 1)  # x_5/x_3 = p x_2/x_3
    assert chart_monomial(1, 4, 3) == (1, 1, 1)  # p
    assert x_exponent((1, 1, 1)) == (0, 0, 0)
    assert x_exponent((1, 0, 0)) == (-1, 1, 0)


def test_graded_lex_order():
    s = TruncatedSeries(2, 2, {(0, 1): 1, (1, 0): 2, (0, 0): 3, (1, 1): 4})
    assert [k for k, _ in sorted_terms(s)] == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert graded_lex_key((2, 0)) < graded_lex_key((0, 2))


@settings(max_examples=40, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=40, deadline=None)
@given(series(unit=True))
def test_inverse(a):
    assert a * a.inverse() == TruncatedSeries.one(2, a.order)


@settings(max_examples=30, deadline=None)
@given(series(nvars=1, order=6), st.integers(0, 4))
def test_power_is_repeated_product(a, n):
    expect = TruncatedSeries.one(1, 6)
    for _ in range(n):
        expect = expect * a
    assert a**n == expect


def test_bigraded_swap():
    s = TruncatedSeries(4, 3, {(1, 0, 0, 2): 5, (0, 0, 1, 0): 1}, dual=(2, 3))
    w = s.swap_blocks()
    assert w.terms == {(0, 2, 1, 0): 5, (1, 0, 0, 0): 1}
    assert w.swap_blocks() == s
