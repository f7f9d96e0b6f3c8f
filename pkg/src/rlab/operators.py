"""Difference operators acting on ``x**lam * (power series in the chart)``.

A prefixed series is a :class:`TruncatedSeries` whose ``prefix`` is the
exponent ``lam``; the chart monomial ``z**alpha`` stands for
``x**mu(alpha) p**alpha_N`` with ``mu`` from :func:`x_exponent`.  Every
operator here maps power series to power series, so no order is lost.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .combinatorics import (
    enumerate_multipartitions,
    enumerate_periodic_theta,
    enumerate_theta,
)
from .ruijsenaars import (
    double_poch_prefactor,
    multipartition_monomial,
    pair_prefactor,
    theta_monomial,
)
from .series import (
    ONE,
    TruncatedSeries,
    chart_monomial,
    first_discrepancy,
    ratio_expand,
    scalar,
    sum_series,
    theta_ratio_expand,
    x_exponent,
)
from .special import cN_factors, nekrasov_ratio_factors


def prefix_of(f: TruncatedSeries) -> tuple:
    return f.prefix if f.prefix is not None else (Fraction(0),) * f.nvars


def _half_power(r, e) -> mpq:
    """``q**e = r**(2e)``; requires ``2e`` integral."""
    two_e = 2 * Fraction(e)
    if two_e.denominator != 1:
        raise ValueError(f"q**{e} is not realizable with q = r**2")
    return scalar(r) ** int(two_e)


def _int(e) -> int:
    e = Fraction(e)
    if e.denominator != 1:
        raise ValueError(f"exponent {e} must be an integer")
    return int(e)


# -- elementary operators ------------------------------------------------------------------


def apply_qshift(f: TruncatedSeries, i: int, sign: int, r) -> TruncatedSeries:
    """``T_{q,x_i}**sign``: ``x**(lam+mu) -> q**(sign (lam_i+mu_i)) x**(lam+mu)`` (``i`` 1-based)."""
    lam = prefix_of(f)
    r = scalar(r)
    base = _half_power(r, lam[i - 1])
    if sign < 0:
        base = 1 / base
    q = r * r
    qs = q if sign > 0 else 1 / q
    return f.map_coefficients(lambda k: base * qs ** x_exponent(k)[i - 1])


def apply_Tkp(f: TruncatedSeries, kappa, mode: str = "p") -> TruncatedSeries:
    """Shift ``p -> kappa p``.

    In the cyclic chart the p-degree of ``z**alpha`` is ``alpha_N`` (``mode='p'``);
    in the balanced chart every variable carries one power of p (``mode='total'``).
    """
    kappa = scalar(kappa)
    N = f.nvars
    if mode == "p":
        return f.map_coefficients(lambda k: kappa ** k[N - 1])
    if mode == "total":
        return f.map_coefficients(lambda k: kappa ** sum(k))
    raise ValueError(f"unknown mode {mode!r}")


def delta_weight(nu, r, t=None, beta=None) -> mpq:
    """Eigenvalue of ``q**(Delta/2)`` on ``x**nu``.

    With integer ``beta`` (``t = q**beta``) this is ``r**sum (nu_i + (N-i) beta)**2``.
    Otherwise it is the normalized form ``r**sum nu_i**2 * t**sum (N-i) nu_i``, which
    differs from the former by the nu-independent factor ``r**(beta**2 sum (N-i)**2)``
    whenever both make sense.
    """
    N = len(nu)
    r = scalar(r)
    if beta is not None:
        e = sum((Fraction(x) + (N - i) * Fraction(beta)) ** 2 for i, x in enumerate(nu, 1))
        return r ** _int(e)
    e2 = sum(Fraction(x) ** 2 for x in nu)
    et = sum((N - i) * Fraction(x) for i, x in enumerate(nu, 1))
    return r ** _int(e2) * scalar(t) ** _int(et)


def eigenvalue_eps(exponents, r, t=None, beta=None) -> mpq:
    """``eps_N(s|q)`` for ``log s_i / log q = lam_i + beta (N-i)``.

    ``exponents`` are the ``lam_i``; with ``beta`` given the literal value
    ``r**sum (lam_i + beta (N-i))**2`` is returned, otherwise the normalized
    t-form of :func:`delta_weight`.
    """
    return delta_weight(exponents, r, t, beta)


def apply_qDelta_half(f: TruncatedSeries, r, t=None, beta=None) -> TruncatedSeries:
    lam = prefix_of(f)
    return f.map_coefficients(
        lambda k: delta_weight([a + b for a, b in zip(lam, x_exponent(k))], r, t, beta)
    )


# -- Macdonald-Ruijsenaars operators ---------------------------------------------------------


def _ratio_coefficient(N, i, c, order, elliptic=False, route="product", nvars=None):
    """``prod_{j != i} g(c x_i/x_j) / g(x_i/x_j)`` with g = 1 - z (trig) or theta (elliptic)."""
    out = TruncatedSeries.one(N, order)
    for j in range(1, N + 1):
        if j == i:
            continue
        if elliptic:
            out = out * theta_ratio_expand(c, i, j, N, order, route)
        elif j < i:
            out = out * ratio_expand(c, 1, chart_monomial(j, i, N), order)
        else:
            # (1 - c/w)/(1 - 1/w) = c (1 - w/c)/(1 - w), w = x_j/x_i
            out = out * ratio_expand(1 / c, 1, chart_monomial(i, j, N), order).scale(c)
    return out


def apply_D_trig(f: TruncatedSeries, sign: int, r, t) -> TruncatedSeries:
    """``D^{+-}_N(x|q,t)`` on a prefixed series."""
    N = f.nvars
    t = scalar(t)
    c = t if sign > 0 else 1 / t
    parts = [
        _ratio_coefficient(N, i, c, f.order).with_prefix(None) * apply_qshift(f, i, sign, r)
        for i in range(1, N + 1)
    ]
    return sum_series(parts, N, f.order, f.prefix, f.dual)


def apply_D_elliptic(f: TruncatedSeries, sign: int, r, t, route: str = "product") -> TruncatedSeries:
    """``D^{+-}_N(x|q,t,p)`` with theta-function ratios; p enters through ``z_N``."""
    N = f.nvars
    t = scalar(t)
    c = t if sign > 0 else 1 / t
    parts = [
        _ratio_coefficient(N, i, c, f.order, True, route) * apply_qshift(f, i, sign, r)
        for i in range(1, N + 1)
    ]
    return sum_series(parts, N, f.order, f.prefix, f.dual)


def A_coefficient(N: int, i: int, c, order: int) -> TruncatedSeries:
    """``A_{N,i}(x|c) = prod_{j<i} (1 - c x_i/x_j)/(1 - x_i/x_j) prod_{k>i} (1 - x_k/(c x_i))/(1 - x_k/x_i)``."""
    c = scalar(c)
    out = TruncatedSeries.one(N, order)
    for j in range(1, i):
        out = out * ratio_expand(c, 1, chart_monomial(j, i, N), order)
    for k in range(i + 1, N + 1):
        out = out * ratio_expand(1 / c, 1, chart_monomial(i, k, N), order)
    return out


def apply_E(f: TruncatedSeries, sign: int, s, r, t) -> TruncatedSeries:
    """``E^{+-}_N(x|s|q,t) = sum_i A_{N,i}(x|t^{+-}) s_i^{+-} T_{q,x_i}^{+-}``."""
    N = f.nvars
    t = scalar(t)
    c = t if sign > 0 else 1 / t
    parts = []
    for i in range(1, N + 1):
        si = scalar(s[i - 1]) ** sign
        parts.append(A_coefficient(N, i, c, f.order).scale(si) * apply_qshift(f, i, sign, r))
    return sum_series(parts, N, f.order, f.prefix, f.dual)


# -- T-operators ---------------------------------------------------------------------------------


def apply_T_trig(f: TruncatedSeries, r, t, beta=None) -> TruncatedSeries:
    """Trigonometric T-operator: ``sum_theta e(theta) q^{Delta/2} c_N(theta|x) prefactor``."""
    N, D = f.nvars, f.order
    r, t = scalar(r), scalar(t)
    q = r * r
    g = pair_prefactor(N, D, 1, t, q, False) * f
    parts = []
    for theta in enumerate_theta(N, D):
        d = theta.zdegree
        c = cN_factors(theta).series(q, t, D - d)
        h = apply_qDelta_half(c * g.truncate(D - d), r, t, beta)
        parts.append(_shift_keep_order(h, theta_monomial(theta), D))
    return sum_series(parts, N, D, f.prefix, f.dual)


def apply_T_trig_alt(f: TruncatedSeries, r, t, beta=None) -> TruncatedSeries:
    """The second representation, obtained from the chi-duality:
    ``prod (q x_j/x_i)_inf/(q x_j/(t x_i))_inf sum_theta c_N(theta|x|q,q/t) q^{Delta/2} e(theta) prod (1 - x_j/x_i)``.
    """
    N, D = f.nvars, f.order
    r, t = scalar(r), scalar(t)
    q = r * r
    g = f
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            g = g * TruncatedSeries(N, D, {(0,) * N: 1, chart_monomial(i, j, N): -1})
    parts = []
    for theta in enumerate_theta(N, D):
        d = theta.zdegree
        h = _shift_keep_order(g.truncate(D - d), theta_monomial(theta), D)
        h = apply_qDelta_half(h, r, t, beta)
        parts.append(cN_factors(theta, q_over_t=True).series(q, t, D) * h)
    total = sum_series(parts, N, D, f.prefix, f.dual)
    return pair_prefactor(N, D, q, q / t, q, False) * total


def apply_T_nonstat(f: TruncatedSeries, r, t, kappa, beta=None, pshift: str = "p") -> TruncatedSeries:
    """Non-stationary T-operator: ``sum_theta e(theta) q^{Delta/2} T_{kappa,p} c_{N,inf}(theta|x) prefactor``.

    ``pshift='total'`` replaces the p-shift by the balanced-chart shift
    ``z**alpha -> kappa**|alpha|`` (used to compare with the balanced operator).
    """
    N, D = f.nvars, f.order
    r, t = scalar(r), scalar(t)
    q = r * r
    g = pair_prefactor(N, D, 1, t, q, True) * f
    parts = []
    for theta in enumerate_periodic_theta(N, D):
        d = theta.zdegree
        c = cN_factors(theta).series(q, t, D - d)
        h = apply_Tkp(c * g.truncate(D - d), kappa, pshift)
        h = apply_qDelta_half(h, r, t, beta)
        parts.append(_shift_keep_order(h, theta_monomial(theta), D))
    return sum_series(parts, N, D, f.prefix, f.dual)


def apply_T_nonstat_alt(f: TruncatedSeries, r, t, kappa, beta=None) -> TruncatedSeries:
    """Representation suggested by the conjectured duality (cross-check only).

    ``prod (q x_j/x_i)/(q x_j/(t x_i)) sum_theta c_{N,inf}(theta|x|q,q/t) q^{Delta/2} T_{kappa,p}
    e(theta) prod_{j>i} (1 - x_j/x_i)``.
    """
    N, D = f.nvars, f.order
    r, t = scalar(r), scalar(t)
    q = r * r
    g = f
    for i in range(1, N + 1):
        for j in range(i + 1, i + D + 1):
            m = chart_monomial(i, j, N)
            if sum(m) <= D:
                g = g * TruncatedSeries(N, D, {(0,) * N: 1, m: -1})
    parts = []
    for theta in enumerate_periodic_theta(N, D):
        d = theta.zdegree
        h = _shift_keep_order(g.truncate(D - d), theta_monomial(theta), D)
        h = apply_qDelta_half(apply_Tkp(h, kappa), r, t, beta)
        parts.append(cN_factors(theta, q_over_t=True).series(q, t, D) * h)
    total = sum_series(parts, N, D, f.prefix, f.dual)
    return pair_prefactor(N, D, q, q / t, q, True) * total


def apply_T_balanced(f: TruncatedSeries, r, t_B, kappa_B, beta=None) -> TruncatedSeries:
    """Balanced T-operator on ``x**lam C[[p x_2/x_1, ..., p x_1/x_N]]``.

    ``sum_lam prod (p x_{a+b}/(t x_{a+b-1}))**lam q^{Delta/2} T_{kappa,p}
    prod N(t x_j/x_i|q,p)/N(x_j/x_i|q,p) * (double-Pochhammer prefactors)``
    with ``Delta`` built from ``log(q/t_B)/log q``.
    """
    N, D = f.nvars, f.order
    r, t_B = scalar(r), scalar(t_B)
    q = r * r
    g = double_poch_prefactor(N, D, 1, q / t_B, q) * f
    parts = []
    for lam in enumerate_multipartitions(N, D):
        d = lam.weight
        fac = nekrasov_ratio_factors(lam)
        tpow = fac.tpow
        fac.tpow = 0
        c = fac.series(q, t_B, D - d)
        h = apply_Tkp(c * g.truncate(D - d), kappa_B, "total")
        h = apply_qDelta_half(h, r, q / t_B, beta)
        parts.append(_shift_keep_order(h, multipartition_monomial(lam), D, t_B**tpow))
    return sum_series(parts, N, D, f.prefix, f.dual)


def _shift_keep_order(h: TruncatedSeries, e, order, coeff=ONE) -> TruncatedSeries:
    """Multiply by ``coeff * z**e``, raising the order of ``h`` to ``order``.

    Valid when ``h`` is known to order ``order - |e|``.
    """
    lifted = TruncatedSeries._raw(h.nvars, order, h.terms, h.prefix, h.dual)
    return lifted.shift(e, coeff)


# -- reports ---------------------------------------------------------------------------------------


@dataclass
class EigenReport:
    lhs: TruncatedSeries
    rhs: TruncatedSeries
    max_checked_degree: int
    first_discrepancy: object = None

    @property
    def passed(self) -> bool:
        return self.first_discrepancy is None

    def as_dict(self):
        d = {"passed": self.passed, "max_checked_degree": self.max_checked_degree}
        if self.first_discrepancy is not None:
            k, a, b = self.first_discrepancy
            d["discrepancy"] = {"exponents": list(k) if isinstance(k, tuple) else k,
                                "lhs": str(a), "rhs": str(b)}
        return d


def eigen_report(lhs: TruncatedSeries, rhs: TruncatedSeries) -> EigenReport:
    return EigenReport(lhs, rhs, min(lhs.order, rhs.order), first_discrepancy(lhs, rhs))


def random_body(N: int, order: int, seed: int, lam=None, pfree: bool = True, density=0.6):
    """Seeded random prefixed series with small rational coefficients and constant term."""
    import random

    from .combinatorics import compositions

    rng = random.Random(f"rlab-body-{N}-{order}-{seed}")
    terms = {(0,) * N: mpq(rng.randint(1, 5), rng.randint(1, 4))}
    for d in range(1, order + 1):
        for k in compositions(d, N):
            if pfree and k[N - 1]:
                continue
            if rng.random() < density:
                terms[k] = mpq(rng.randint(-6, 6), rng.randint(1, 5))
    if lam is None:
        lam = tuple(rng.randint(-2, 2) for _ in range(N))
    return TruncatedSeries(N, order, terms, prefix=lam)


def check_commutativity(f: TruncatedSeries, sign: int, r, t, beta=None) -> EigenReport:
    """``T D f`` against ``D T f`` for the trigonometric operators."""
    lhs = apply_T_trig(apply_D_trig(f, sign, r, t), r, t, beta)
    rhs = apply_D_trig(apply_T_trig(f, r, t, beta), sign, r, t)
    return eigen_report(lhs, rhs)
