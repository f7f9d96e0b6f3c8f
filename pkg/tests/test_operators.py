import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from rlab.operators import (
    apply_D_elliptic,
    apply_D_trig,
    apply_E,
    apply_qDelta_half,
    apply_qshift,
    apply_T_balanced,
    apply_T_nonstat,
    apply_T_nonstat_alt,
    apply_T_trig,
    apply_T_trig_alt,
    apply_Tkp,
    check_commutativity,
    delta_weight,
    eigenvalue_eps,
    random_body,
)
from rlab.ruijsenaars import f_nonstat, f_trig
from rlab.series import TruncatedSeries, first_discrepancy
from rlab.special import ParamPoint

r, t = mpq(2, 3), mpq(3, 5)


def test_qshift():
    one = TruncatedSeries.one(2, 3)
    assert apply_qshift(one, 1, 1, r) == one
    f = TruncatedSeries.one(1, 2).with_prefix((3,))
    assert apply_qshift(f, 1, 1, r) == f.scale(r**6)
    assert apply_qshift(f, 1, -1, r) == f.scale(r**-6)


def test_tkp():
    f = TruncatedSeries(3, 4, {(0, 0, 1): 1, (1, 0, 2): 1, (1, 1, 0): 1})
    assert apply_Tkp(f, 1) == f
    k = mpq(5, 3)
    g = apply_Tkp(f, k)
    assert g.coefficient((0, 0, 1)) == k
    assert g.coefficient((1, 0, 2)) == k**2
    assert g.coefficient((1, 1, 0)) == 1


def test_eps_examples():
    assert eigenvalue_eps((0,), mpq(1, 2), beta=0) == 1
    assert eigenvalue_eps((2,), mpq(1, 2), beta=0) == mpq(1, 16)
    assert eigenvalue_eps((1, 0), r, beta=1) == r**4


def test_delta_half():
    f = TruncatedSeries.one(1, 2).with_prefix((3,))
    assert apply_qDelta_half(f, r, beta=0) == f.scale(r**9)


def test_t_form_differs_by_constant():
    beta = 2
    tt = r ** (2 * beta)
    c = r ** (beta**2 * (1 + 0))
    for nu in [(0, 0), (1, -2), (3, 1)]:
        assert delta_weight(nu, r, beta=beta) == c * delta_weight(nu, r, tt)


@pytest.mark.parametrize("N", [2, 3])
def test_D_eigen_on_spectral_points(N):
    lam = (1, 0) if N == 2 else (2, 1, 0)
    P = ParamPoint.spectral(r, lam, t=t)
    f = f_trig(N, 5, P).with_prefix(lam)
    for sg in (1, -1):
        ev = sum(s**sg for s in P.s)
        assert apply_D_trig(f, sg, r, t) == f.scale(ev)


def test_E_eigen():
    P = ParamPoint(r=r, t=t, s=(mpq(5, 2), mpq(3, 7), mpq(1, 3)))
    f = f_trig(3, 5, P)
    for sg in (1, -1):
        assert apply_E(f, sg, P.s, r, t) == f.scale(sum(s**sg for s in P.s))


def test_D_elliptic_reduces_to_trig():
    f = random_body(2, 4, 1)
    e = apply_D_elliptic(f, 1, r, t).select(lambda k: k[-1] == 0)
    d = apply_D_trig(f, 1, r, t).select(lambda k: k[-1] == 0)
    assert e == d
    one = TruncatedSeries.one(1, 3).with_prefix((2,))
    assert apply_D_elliptic(one, 1, r, t) == apply_qshift(one, 1, 1, r)


def test_D_elliptic_routes():
    f = random_body(3, 3, 2, pfree=False)
    assert apply_D_elliptic(f, -1, r, t, "product") == apply_D_elliptic(f, -1, r, t, "triple")


@pytest.mark.parametrize("N,beta,lam", [(2, 1, (1, 0)), (2, 2, (2, 1)), (3, 1, (1, 0, 0)), (3, 2, (0, 0, 0))])
def test_trig_T_eigen_and_alt(N, beta, lam):
    P = ParamPoint.spectral(r, lam, beta=beta)
    f = f_trig(N, 4, P).with_prefix(lam)
    lhs = apply_T_trig(f, r, P.t, beta)
    assert lhs == f.scale(eigenvalue_eps(lam, r, P.t, beta))
    assert first_discrepancy(lhs, apply_T_trig_alt(f, r, P.t, beta)) is None


def test_trig_T_alt_on_random_bodies():
    f = random_body(2, 4, 3)
    assert first_discrepancy(apply_T_trig(f, r, t), apply_T_trig_alt(f, r, t)) is None


@pytest.mark.parametrize("lam", [(0, 0), (1, 0)])
def test_nonstat_T_alt(lam):
    P = ParamPoint.spectral(r, lam, beta=2, kappa=mpq(3, 4))
    f = f_nonstat(2, 3, P).with_prefix(lam)
    a = apply_T_nonstat(f, r, P.t, P.kappa, 2)
    b = apply_T_nonstat_alt(f, r, P.t, P.kappa, 2)
    assert first_discrepancy(a, b) is None
    assert a == f.scale(eigenvalue_eps(lam, r, P.t, 2))


def test_balanced_T_against_unbalanced():
    f = random_body(2, 2, 4, pfree=False)
    K = mpq(5, 7)
    assert apply_T_balanced(f, r, r * r / t, K) == apply_T_nonstat(f, r, t, K, pshift="total")


def test_commutativity_n1_and_n2():
    assert check_commutativity(random_body(1, 3, 0), 1, r, t).passed
    for seed in range(3):
        assert check_commutativity(random_body(2, 4, seed), -1, r, t).passed


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([1, -1]))
def test_D_matches_E_on_random_bodies(seed, sg):
    f = random_body(3, 3, seed)
    lam = tuple(int(x) for x in f.prefix)
    s = ParamPoint.spectral(r, lam, t=t).s
    assert apply_D_trig(f, sg, r, t) == apply_E(f.with_prefix(None), sg, s, r, t).with_prefix(f.prefix)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_qshift_inverse(seed):
    f = random_body(2, 4, seed)
    assert apply_qshift(apply_qshift(f, 2, 1, r), 2, -1, r) == f
