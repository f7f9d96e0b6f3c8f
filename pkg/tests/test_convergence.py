import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlab import convergence as cv


def test_closed_forms():
    assert cv.closed_form_C1C2(2, 0.5, 0.5, 1.0, 2.0) == (3.0, 2.0)
    inp = cv.ConvergenceInput(2, 0.5, 0.5, 2.0, 1.0, (1, 1j))
    rep = cv.bounds_C1C2(inp)
    assert (rep.C1, rep.C2) == (3.0, 2.0)
    assert rep.rho_max == pytest.approx(1 / 6)
    # kappa branch dominates when sigma = 1
    C1, _ = cv.closed_form_C1C2(2, 1.0, 0.5, 1.0, 1.5)
    assert C1 == 4.0


def test_t_equals_q():
    inp = cv.sample_input(2, 0)
    inp.t = complex(inp.q)
    rep = cv.check_coeff_bound(inp, 4)
    assert rep.C1 == rep.C2 == 1 and rep.rho_max == 1
    assert rep.passed and rep.worst == pytest.approx(1.0)


def test_hypothesis_violation():
    with pytest.raises(cv.HypothesisError):
        cv.bounds_C1C2(cv.ConvergenceInput(2, 0.5, 0.5, 0.5, 1.0, (1, 1j)))
    with pytest.raises(cv.HypothesisError):
        cv.bounds_C1C2(cv.ConvergenceInput(2, 0.5, 0.5, 2.0, 1.0, (1, 2)))


@pytest.mark.parametrize("N", [1, 2, 3])
def test_sampled_inputs_are_admissible(N):
    for seed in range(10):
        assert not cv.sample_input(N, seed).violations()


def test_coefficient_bound_n2():
    rep = cv.check_coeff_bound(cv.sample_input(2, 3), 6)
    assert rep.passed and rep.margin > 0


def test_partial_sums():
    inp = cv.sample_input(2, 1)
    rho = 0.5 * cv.bounds_C1C2(inp).rho_max
    rep = cv.partial_sums(inp, [rho, rho], 8)
    assert rep.passed
    zero = cv.partial_sums(inp, [0.0, 0.0], 5)
    assert all(s == 1 for s in zero.sums)


def test_partial_sums_t_equals_q():
    inp = cv.sample_input(2, 2)
    inp.t = complex(inp.q)
    rep = cv.partial_sums(inp, [0.3, 0.2], 10)
    # every coefficient is 1: the sum is 1/((z1;z1 z2)(z2;z1 z2)) style product, here just check decay
    assert rep.passed
    assert rep.increments[-1] < rep.increments[0]


def test_estimates_edge_cases():
    lhs, rhs = cv.estimate_a(0, 2 + 1j, 0.5, 3, 1j)
    assert lhs == rhs == 1
    lhs, rhs = cv.estimate_b(3, 1.0, 0.5, 2.0, 1, 1)
    assert lhs == pytest.approx(1.0) and rhs == 1
    lhs, rhs = cv.estimate_c(0, 3.0, 2.0, 0.5, 0, 0)
    assert lhs == rhs == 1


def test_poch_estimate_samples():
    for rep in cv.check_poch_estimates(200):
        assert rep.passed, rep.failures[:3]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 6), st.floats(-3, 3), st.floats(-3, 3), st.floats(0.1, 0.9),
       st.floats(1.2, 5), st.integers(0, 4), st.integers(1, 3))
def test_estimate_b_property(theta, ar, ai, q, kappa, m, ell):
    lhs, rhs = cv.estimate_b(theta, complex(ar, ai), q, kappa, m, ell)
    assert lhs <= rhs + 1e-12 * max(1.0, rhs)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 6), st.floats(-3, 3), st.floats(-3, 3), st.floats(1.2, 5),
       st.integers(-4, 4), st.floats(0.05, math.pi - 0.05))
def test_estimate_a_property(theta, ar, ai, q, l, phase):
    u = complex(math.cos(phase), math.sin(phase))
    lhs, rhs = cv.estimate_a(theta, complex(ar, ai), q, l, u)
    assert lhs <= rhs * (1 + 1e-12) + 1e-12


def test_euler_and_multipartition_counts():
    ok, counts, coeffs = cv.check_euler_identity(6)
    assert ok and counts == [1, 1, 2, 3, 5, 7, 11]
    assert cv.check_euler_identity(0)[0]
    assert cv.multipartition_counts(2, 3) == [1, 2, 5, 10]


def test_double_poch_product():
    assert cv.check_double_poch_product(2, 4, 3, 3, "1/2") is None
    assert cv.check_double_poch_product(3, 5, "2/3", "5/7", "3/4") is None
