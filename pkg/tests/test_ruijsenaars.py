import pytest
from gmpy2 import mpq

from rlab.combinatorics import ThetaMatrix
from rlab.ruijsenaars import (
    check_chi_duality,
    check_duality,
    check_macdonald_reduction,
    chi,
    double_poch_prefactor,
    f_glN_balanced,
    f_nonstat,
    f_trig,
    macdonald_oracle,
    pair_prefactor,
    phi_bigraded,
    phi_trig,
    slice_pfree,
)
from rlab.series import (
    TruncatedSeries,
    chart_monomial,
    first_discrepancy,
    geometric_expand,
)
from rlab.special import ParamPoint, random_point


def test_trivial_series():
    assert f_trig(1, 5, random_point(1, 0)) == TruncatedSeries.one(1, 5)
    assert f_nonstat(2, 0, random_point(2, 0)) == TruncatedSeries.one(2, 0)
    P = random_point(2, 0)
    assert f_glN_balanced(2, 0, P.q, P.t, P.kappa, P.s) == TruncatedSeries.one(2, 0)
    assert phi_trig(1, 4, random_point(1, 0)) == TruncatedSeries.one(1, 4)


def test_t_equals_q_is_product_of_geometric_series():
    N, D = 3, 5
    P = random_point(N, 2)
    P = P.with_(t=P.q)
    expect = TruncatedSeries.one(N, D)
    for i in range(1, N + 1):
        for k in range(i + 1, N + 1):
            expect = expect * geometric_expand(1, chart_monomial(i, k, N), D)
    assert f_trig(N, D, P) == expect
    # the prefactor collapses to prod (1 - x_j/x_i), which cancels f exactly
    assert phi_trig(N, D, P) == TruncatedSeries.one(N, D)


def test_pfree_slice_is_trig():
    P = random_point(2, 1)
    assert slice_pfree(f_nonstat(2, 6, P), 2) == f_trig(2, 6, P)


def test_three_representations_agree():
    for seed in range(2):
        P = random_point(3, seed)
        a = f_nonstat(3, 4, P, "theta")
        assert first_discrepancy(a, f_nonstat(3, 4, P, "multipartition")) is None
        assert first_discrepancy(a, f_nonstat(3, 4, P, "nekrasov")) is None


@pytest.mark.parametrize("N", [1, 2, 3])
def test_balanced_series_transport(N):
    # f^{gl}(q, q/t, K, K^delta s) coincides with the unbalanced series at kappa = K^N
    K = mpq(5, 4)
    P = random_point(N, 3).with_(kappa=K**N)
    s_B = [K ** (N - i) * s for i, s in enumerate(P.s, 1)]
    assert f_glN_balanced(N, 4, P.q, P.q / P.t, K, s_B) == f_nonstat(N, 4, P)


def test_macdonald_oracle_small():
    q, t = mpq(4, 9), mpq(3, 5)
    assert macdonald_oracle((), 2, q, t) == {(0, 0): 1}
    assert macdonald_oracle((1,), 2, q, t) == {(1, 0): 1, (0, 1): 1}
    P2 = macdonald_oracle((2,), 2, q, t)
    assert P2[(2, 0)] == P2[(0, 2)] == 1
    assert P2[(1, 1)] == (1 + q) * (1 - t) / (1 - q * t)


@pytest.mark.parametrize("lam,N", [((1, 0), 2), ((2, 1), 2), ((1, 1, 1), 3), ((2, 1), 3)])
def test_macdonald_reduction(lam, N):
    assert check_macdonald_reduction(lam, N, mpq(2, 3), mpq(3, 5)).passed


def test_first_coefficient_of_spectral_point():
    r, t = mpq(2, 3), mpq(3, 5)
    P = ParamPoint(r=r, t=t, s=(t * r * r, 1))
    assert f_trig(2, 2, P).coefficient((1, 0)) == 1


def test_double_poch_prefactors():
    for N in (1, 2, 3):
        a, b, q = mpq(2, 3), mpq(5, 7), mpq(3, 4)
        assert pair_prefactor(N, 5, a, b, q, True) == double_poch_prefactor(N, 5, a, b, q)
        assert pair_prefactor(N, 5, a, a, q, True) == TruncatedSeries.one(N, 5)


@pytest.mark.parametrize("N", [2, 3])
def test_trig_dualities(N):
    for rep in check_duality(N, 3, mpq(4, 9), mpq(3, 5)):
        assert rep.passed, rep.as_dict()
    assert check_chi_duality(N, 3, mpq(4, 9), mpq(3, 5)).passed


def test_dualities_are_not_vacuous():
    q, t = mpq(4, 9), mpq(3, 5)
    F = phi_bigraded(2, 2, 2, q, t)
    G = phi_bigraded(2, 2, 2, q, t * 2)
    assert len(F.terms) >= 5
    assert first_discrepancy(F, G.swap_blocks()) is not None


def test_chi_constant_term():
    X = chi(2, 2, 2, mpq(4, 9), mpq(3, 5))
    assert X.coefficient((0, 0, 0, 0)) == 1


def test_nonstat_duality_evidence():
    for rep in check_duality(2, 2, mpq(4, 9), mpq(3, 5), periodic=True):
        assert rep.kind == "conjecture"
        assert rep.passed, rep.as_dict()


def test_theta_matrix_block_sum():
    # the theta series puts theta_12 = 1 on z_1 with the c_N coefficient
    P = random_point(2, 4)
    from rlab.special import coeff_cN

    assert f_trig(2, 1, P).coefficient((1, 0)) == coeff_cN(ThetaMatrix(2, {(1, 2): 1}), P)
