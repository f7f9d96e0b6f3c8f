"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Exact criteria compare rational term maps; the float criteria use relative
tolerance 1e-9 (coefficient bounds) and absolute tolerance 1e-12 (estimates).
"""

import pytest

from rlab import convergence as cv
from rlab import identities as ids

REL_TOL = 1e-9
ABS_TOL = 1e-12


@pytest.fixture
def report(capsys):
    def emit(number, title, results):
        ok = all(r.passed for r in results)
        cases = sum(r.cases for r in results)
        secs = sum(r.seconds for r in results)
        line = f"[{'PASS' if ok else 'FAIL'}] {number:>2} {title} ({cases} cases, {secs:.2f}s)"
        with capsys.disabled():
            print("\n" + line)
            for r in results:
                if not r.passed:
                    print(f"       {r.name}: first discrepancy {r.discrepancy}")
        return ok

    return emit


def test_01_theta_and_multipartition_coefficients(report):
    res = ids.theta_vs_multipartition(order=6, points=5)
    assert report(1, "theta-matrix vs multipartition coefficients, N<=3, degree<=6", [res])


def test_02_kappa_cancelled_coefficients(report):
    res = ids.kappa_cancellation(order=6, points=5)
    assert report(2, "Nekrasov-ratio vs multipartition coefficients, N<=3, degree<=6", [res])


def test_03_pfree_limit(report):
    res = ids.pfree_limit(order=8)
    assert report(3, "p-free slice equals the trigonometric series, N<=3, D=8", [res])


def test_04_macdonald_reduction(report):
    res = ids.macdonald(max_weight=4, points=3)
    assert report(4, "x^lam f_N equals the eigen-solve Macdonald polynomial, |lam|<=4", [res])


def test_05_e_eigenrelation(report):
    res = ids.e_eigen(order=8)
    assert report(5, "E+- f_N = (sum s_i^+-1) f_N, N<=3, D=8", [res])


def test_06_d_vs_e_intertwining(report):
    res = ids.intertwining(order=5, bodies=10)
    assert report(6, "D+-(x^lam g) = x^lam E+-(g) on 10 random bodies, D=5", [res])


def test_07_trig_T_operator(report):
    eig = ids.trig_T_eigen(order=6, max_weight=3, betas=(1, 2))
    com = ids.commutativity(order=4, bodies=5)
    assert report(7, "T x^lam f_N = eps x^lam f_N (D=6) and [T, D+-] = 0", [eig, com])


def test_08_nonstationary_T_conjecture(report):
    res = ids.nonstat_T_eigen(N=2, order=3, beta=1)
    assert res.kind == ids.CONJECTURE
    assert report(8, "non-stationary T residual vanishes, N=2, beta=1, order 3 (conjecture)", [res])


def test_09_balanced_T(report):
    res = ids.balanced_T(order=2)
    assert report(9, "balanced and unbalanced T agree under the transport, N<=2, D=2", [res])


def test_10_dualities(report):
    trig = ids.duality_trig(order=4, points=3)
    chi = ids.chi_duality(order=4, points=3)
    nonstat = ids.duality_nonstat(order=2, points=3)
    assert nonstat.kind == ids.CONJECTURE
    assert report(10, "bispectral, Poincare and chi dualities (4,4); non-stationary (2,2)",
                  [trig, chi, nonstat])


def test_11_convergence_bounds(report):
    res = ids.bounds(order=6, points=10, partial_order=10)
    C1, C2 = cv.closed_form_C1C2(2, 0.5, 0.5, 1.0, 2.0)
    closed = ids.CheckResult("closed_form", ids.PROVEN, (C1, C2) == (3.0, 2.0), 1)
    assert cv.REL_TOL == REL_TOL
    assert report(11, "|C(lam)| <= (C1 C2)^|lam| at 10 points per N, partial sums decay", [res, closed])


def test_12_pochhammer_estimates(report):
    res = ids.poch_estimates(samples=200)
    assert cv.ABS_TOL == ABS_TOL
    assert res.cases == 600
    assert report(12, "three Pochhammer-ratio estimates on 200 samples each", [res])


def test_13_product_identities(report):
    euler = ids.euler(order=12)
    d2 = ids.double_poch_product(order=6, points=3)
    assert report(13, "Euler identity to D=12 and the double-Pochhammer product to D=6", [euler, d2])
