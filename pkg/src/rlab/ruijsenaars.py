"""The asymptotically free series, their non-stationary generalizations and dualities.

All series live in the cyclic chart ``z_i = x_{i+1}/x_i`` (i < N),
``z_N = p x_1/x_N``.  The trigonometric series never involve ``z_N``.
Doubly expanded series carry a second block ``w`` for the spectral
variables, ``w_i = s_{i+1}/s_i``, ``w_N = kappa s_1/s_N``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import (
    MultiPartition,
    Partition,
    ThetaMatrix,
    enumerate_multipartitions,
    enumerate_periodic_theta,
    enumerate_theta,
    partitions_of,
)
from .series import (
    ONE,
    ZERO,
    PoleError,
    TruncatedSeries,
    chart_monomial,
    first_discrepancy,
    poch_ratio_expand,
    scalar,
)
from .special import (
    CN_inf_factors,
    ParamPoint,
    cN_factors,
    coeff_balanced,
)


def theta_monomial(theta: ThetaMatrix) -> tuple:
    """Chart exponent of ``prod (x_k/x_i)**theta_ik`` (with ``x_{i+N} = p x_i``)."""
    N = theta.N
    e = [0] * N
    for (i, k), v in theta.entries.items():
        for m in range(i, k):
            e[(m - 1) % N] += v
    return tuple(e)


def multipartition_monomial(lam: MultiPartition) -> tuple:
    """Chart exponent of ``prod_i prod_k (x_{i+k}/x_{i+k-1})**lam^{(i)}_k``."""
    N = lam.N
    e = [0] * N
    for i in range(1, N + 1):
        for k, v in enumerate(lam.component(i), 1):
            e[(i + k - 2) % N] += v
    return tuple(e)


def _pad(e, nvars, offset=0):
    return (0,) * offset + tuple(e) + (0,) * (nvars - offset - len(e))


# -- single-block series -----------------------------------------------------------------


def f_trig(N: int, order: int, point: ParamPoint) -> TruncatedSeries:
    """``f_N(x|s|q,t)`` truncated at total degree ``order``."""
    terms = {}
    for theta in enumerate_theta(N, order):
        c = cN_factors(theta).evaluate(point)
        if c:
            k = theta_monomial(theta)
            terms[k] = terms.get(k, ZERO) + c
    return TruncatedSeries(N, order, terms)


def f_nonstat(N: int, order: int, point: ParamPoint, representation: str = "theta") -> TruncatedSeries:
    """``f_{N,inf}(x,p|s,kappa|q,t)``.

    ``representation`` selects the summation: ``theta`` (periodic matrices),
    ``multipartition`` (the multipartition coefficients) or ``nekrasov``
    (Nekrasov-ratio coefficients with the kappa-dependence cancelled).
    """
    from .special import Ctilde_factors

    terms = {}
    if representation == "theta":
        for theta in enumerate_periodic_theta(N, order):
            c = cN_factors(theta).evaluate(point)
            if c:
                k = theta_monomial(theta)
                terms[k] = terms.get(k, ZERO) + c
    elif representation in ("multipartition", "nekrasov"):
        build = CN_inf_factors if representation == "multipartition" else Ctilde_factors
        for lam in enumerate_multipartitions(N, order):
            c = build(lam).evaluate(point)
            if c:
                k = multipartition_monomial(lam)
                terms[k] = terms.get(k, ZERO) + c
    else:
        raise ValueError(f"unknown representation {representation!r}")
    return TruncatedSeries(N, order, terms)


def f_glN_balanced(N: int, order: int, q, t_B, kappa_B, s_B) -> TruncatedSeries:
    """The Nekrasov-factor series in balanced variables ``zb_m = p x_{m+1}/x_m`` (x periodic).

    The parameter ``t_B`` is the balanced one; crossing to the unbalanced
    series needs ``t_B = q/t``, ``kappa_B**N = kappa`` and
    ``s_B,i = kappa_B**(N-i) s_i``.
    """
    terms = {}
    for lam in enumerate_multipartitions(N, order):
        c = coeff_balanced(lam, q, t_B, kappa_B, s_B)
        if c:
            k = multipartition_monomial(lam)
            terms[k] = terms.get(k, ZERO) + c
    return TruncatedSeries(N, order, terms)


def slice_pfree(f: TruncatedSeries, N: int) -> TruncatedSeries:
    """Terms with no ``z_N`` (the p-degree-0 part)."""
    return f.select(lambda k: k[N - 1] == 0)


# -- prefactors --------------------------------------------------------------------------


def pair_prefactor(N: int, order: int, a, b, q, periodic: bool, nvars=None, offset=0, dual=None):
    """``prod_{i<j} (a v_j/v_i; q)_inf / (b v_j/v_i; q)_inf`` in the chart.

    ``periodic`` extends the product to all ``j > i`` (``i = 1..N``) with
    ``v_{i+N} = P v_i``; factors whose monomial has degree above the block
    order are 1 to that order and are skipped.
    """
    nvars = nvars or N
    block_order = order if offset == 0 else dual[1]
    out = TruncatedSeries.one(nvars, order, dual)
    for i in range(1, N + 1):
        jmax = i + block_order if periodic else N
        for j in range(i + 1, jmax + 1):
            m = chart_monomial(i, j, N)
            if sum(m) > block_order:
                continue
            out = out * poch_ratio_expand(a, b, q, _pad(m, nvars, offset), order, dual)
    return out


def phi_trig(N: int, order: int, point: ParamPoint) -> TruncatedSeries:
    q, t = point.q, point.t
    return pair_prefactor(N, order, q / t, q, q, False) * f_trig(N, order, point)


def phi_nonstat(N: int, order: int, point: ParamPoint) -> TruncatedSeries:
    q, t = point.q, point.t
    return pair_prefactor(N, order, q / t, q, q, True) * f_nonstat(N, order, point)


def double_poch_prefactor(N: int, order: int, a, b, q):
    """``prod_{i<j} (a x_j/x_i; q, P)_inf/(b ...) * prod_{i<=j} (a P x_i/x_j; q, P)_inf/(b ...)``.

    Here ``P = z_1 ... z_N`` and ``x_j/x_i``, ``P x_i/x_j`` are the chart
    monomials ``M(i, j)`` and ``M(j, i + N)``.  This covers both charts: with
    ``x_{i+N} = p x_i`` it is the product over ``p``, and in the balanced chart
    (``zb_m = p x_{m+1}/x_m``, x periodic) it is the product with ``p^{j-i}``
    and ``p^{N-j+i}`` attached and ``P = p^N``.  The double Pochhammer
    ``(z; q, P)_inf = prod_m (P^m z; q)_inf`` contributes one q-binomial
    expansion per power of ``P``.
    """
    a, b, q = scalar(a), scalar(b), scalar(q)
    P = (1,) * N
    out = TruncatedSeries.one(N, order)
    bases = [chart_monomial(i, j, N) for i in range(1, N + 1) for j in range(i + 1, N + 1)]
    bases += [chart_monomial(j, i + N, N) for i in range(1, N + 1) for j in range(i, N + 1)]
    for m in bases:
        n = 0
        while True:
            e = tuple(x + n * y for x, y in zip(m, P))
            if sum(e) > order:
                break
            out = out * poch_ratio_expand(a, b, q, e, order)
            n += 1
    return out


# -- doubly expanded series (x-block z, s-block w) --------------------------------------------


def _f_bigraded(N, order, dual_order, q, t, periodic):
    nvars = 2 * N
    dual = (N, dual_order)
    enum = enumerate_periodic_theta if periodic else enumerate_theta
    out = TruncatedSeries.zero(nvars, order, dual=dual)
    terms = {}
    for theta in enum(N, order):
        c = cN_factors(theta).series(q, t, order, nvars=nvars, offset=N, dual=dual)
        shift = _pad(theta_monomial(theta), nvars)
        for k, v in c.terms.items():
            k2 = tuple(x + y for x, y in zip(k, shift))
            terms[k2] = terms.get(k2, ZERO) + v
    out.terms = {k: v for k, v in terms.items() if v}
    return out


def f_bigraded(N: int, order: int, dual_order: int, q, t, periodic: bool = False):
    """``f_N(x|s|q,t)`` (or ``f_{N,inf}``) as a series in both ``z`` and ``w``."""
    return _f_bigraded(N, order, dual_order, scalar(q), scalar(t), periodic)


def phi_bigraded(N, order, dual_order, q, t, periodic=False):
    q, t = scalar(q), scalar(t)
    dual = (N, dual_order)
    pre = pair_prefactor(N, order, q / t, q, q, periodic, nvars=2 * N, dual=dual)
    return pre * f_bigraded(N, order, dual_order, q, t, periodic)


def chi(N, order, dual_order, q, t, periodic=False):
    """``f_N(x|y|q,t) prod_{i<j} (q y_j/y_i;q)_inf/(t y_j/y_i;q)_inf`` in ``(z; w)``."""
    q, t = scalar(q), scalar(t)
    dual = (N, dual_order)
    pre = pair_prefactor(N, order, q, t, q, periodic, nvars=2 * N, offset=N, dual=dual)
    return pre * f_bigraded(N, order, dual_order, q, t, periodic)


@dataclass
class DualityReport:
    name: str
    N: int
    bidegree: tuple
    passed: bool
    discrepancy: object = None
    kind: str = "proven"

    def as_dict(self):
        d = {"name": self.name, "N": self.N, "bidegree": list(self.bidegree),
             "passed": self.passed, "kind": self.kind}
        if self.discrepancy is not None:
            k, a, b = self.discrepancy
            d["discrepancy"] = {"exponents": list(k) if isinstance(k, tuple) else k,
                                "lhs": str(a), "rhs": str(b)}
        return d


def _report(name, N, bideg, lhs, rhs, kind):
    disc = first_discrepancy(lhs, rhs)
    return DualityReport(name, N, bideg, disc is None, disc, kind)


def check_duality(N: int, order: int, q, t, periodic: bool = False) -> list[DualityReport]:
    """Bispectral and Poincare dualities of the prefactored series at bidegree (order, order).

    Checked forms: ``F_t(z,w) == F_t(w,z)``, ``F_t(z,w) == F_{q/t}(w,z)`` and
    ``F_t(z,w) == F_{q/t}(z,w)``.  For the periodic series the statements are
    conjectural and reported as such.
    """
    q, t = scalar(q), scalar(t)
    kind = "conjecture" if periodic else "proven"
    F = phi_bigraded(N, order, order, q, t, periodic)
    G = phi_bigraded(N, order, order, q, q / t, periodic)
    bideg = (order, order)
    return [
        _report("bispectral", N, bideg, F, F.swap_blocks(), kind),
        _report("poincare", N, bideg, F, G.swap_blocks(), kind),
        _report("poincare_same_side", N, bideg, F, G, kind),
    ]


def check_chi_duality(N: int, order: int, q, t, periodic: bool = False) -> DualityReport:
    """``chi(x|y|q,t) == chi(y|x|q,q/t)``."""
    q, t = scalar(q), scalar(t)
    F = chi(N, order, order, q, t, periodic)
    G = chi(N, order, order, q, q / t, periodic)
    return _report("chi", N, (order, order), F, G.swap_blocks(), "conjecture" if periodic else "proven")


# -- Macdonald polynomials by triangular eigen-solve -------------------------------------------


Poly = dict  # exponent tuple -> mpq


def _poly_mul(a: Poly, b: Poly) -> Poly:
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, ZERO) + ca * cb
    return {k: v for k, v in out.items() if v}


def _divide_linear(P: Poly, i: int, j: int) -> Poly:
    """Exact quotient ``P / (x_i - x_j)`` by synthetic division in ``x_i``."""
    out = {}
    rem = dict(P)
    while rem:
        k = max(rem, key=lambda e: (e[i], e))
        c = rem[k]
        if k[i] == 0:
            raise ArithmeticError("polynomial not divisible by x_i - x_j")
        qk = k[:i] + (k[i] - 1,) + k[i + 1:]
        out[qk] = out.get(qk, ZERO) + c
        # subtract c * x^qk * (x_i - x_j)
        rem[k] = rem[k] - c
        if not rem[k]:
            del rem[k]
        kj = list(qk)
        kj[j] += 1
        kj = tuple(kj)
        rem[kj] = rem.get(kj, ZERO) + c
        if not rem[kj]:
            del rem[kj]
    return {k: v for k, v in out.items() if v}


def _vandermonde(N, scale_index=None, factor=ONE) -> Poly:
    """``prod_{i<j} (x_i - x_j)`` with ``x_{scale_index}`` replaced by ``factor x_{scale_index}``."""
    P = {(0,) * N: ONE}
    for i in range(N):
        for j in range(i + 1, N):
            ci = factor if i == scale_index else ONE
            cj = factor if j == scale_index else ONE
            lin = {tuple(1 if m == i else 0 for m in range(N)): ci,
                   tuple(1 if m == j else 0 for m in range(N)): -cj}
            P = _poly_mul(P, lin)
    return P


def apply_D_plus_poly(f: Poly, N: int, q, t) -> Poly:
    """Macdonald operator ``D^+`` on a polynomial, via
    ``D^+ f = a_delta^{-1} sum_i (T_{t,x_i} a_delta)(T_{q,x_i} f)``."""
    q, t = scalar(q), scalar(t)
    total = {}
    for i in range(N):
        shifted = {k: c * q ** k[i] for k, c in f.items()}
        term = _poly_mul(_vandermonde(N, i, t), shifted)
        for k, c in term.items():
            total[k] = total.get(k, ZERO) + c
    total = {k: v for k, v in total.items() if v}
    for i in range(N):
        for j in range(i + 1, N):
            total = _divide_linear(total, i, j)
    return total


def _monomial_symmetric(mu: Partition, N: int) -> Poly:
    from itertools import permutations

    parts = tuple(mu) + (0,) * (N - len(mu))
    return {perm: ONE for perm in set(permutations(parts))}


def macdonald_oracle(lam, N: int, q, t) -> Poly:
    """Monic ``P_lam`` in N variables from the triangular action of ``D^+`` on ``m_mu``."""
    lam = Partition(lam)
    if len(lam) > N:
        raise ValueError("partition longer than N")
    q, t = scalar(q), scalar(t)
    n = lam.weight
    basis = [mu for mu in partitions_of(n) if len(mu) <= N]  # lex decreasing
    pad = lambda mu: tuple(mu) + (0,) * (N - len(mu))
    eig = {mu: sum(t ** (N - i) * q ** m for i, m in enumerate(pad(mu), 1)) for mu in basis}
    # column of D^+ m_mu in the m-basis, read off at dominant exponents
    M = {}
    for mu in basis:
        image = apply_D_plus_poly(_monomial_symmetric(mu, N), N, q, t)
        M[mu] = {nu: image.get(pad(nu), ZERO) for nu in basis}
    u = {lam: ONE}
    start = basis.index(lam)
    for nu in basis[start + 1:]:
        gap = eig[lam] - eig[nu]
        acc = sum((M[mu][nu] * u[mu] for mu in u), ZERO)
        if not gap:
            if acc:
                raise PoleError("eigenvalue collision at this point")
            u[nu] = ZERO
            continue
        u[nu] = acc / gap
    P = {}
    for mu, c in u.items():
        if c:
            for k in _monomial_symmetric(mu, N):
                P[k] = c
    return P


def polynomial_to_chart(P: Poly, lam) -> TruncatedSeries:
    """``x^-lam P`` written in the chart (all exponents must be nonnegative)."""
    N = len(lam)
    terms = {}
    for k, c in P.items():
        mu = [a - b for a, b in zip(k, lam)]
        alpha, acc = [], 0
        for m in mu:
            acc -= m
            alpha.append(acc)
        if alpha[-1] != 0 or min(alpha) < 0:
            raise ValueError(f"monomial {k} is not in x^lam C[[z]]")
        terms[tuple(alpha[:-1]) + (0,)] = c
    order = max((sum(a) for a in terms), default=0)
    return TruncatedSeries(N, order, terms)


@dataclass
class ReductionReport:
    lam: tuple
    N: int
    order: int
    passed: bool
    discrepancy: object = None


def check_macdonald_reduction(lam, N: int, r, t, order: int | None = None) -> ReductionReport:
    """``x^lam f_N(x|s)`` at ``s_i = t^{N-i} q^{lam_i}`` against the eigen-solve oracle."""
    lam = tuple(Partition(lam)) + (0,) * (N - len(Partition(lam)))
    point = ParamPoint.spectral(r, lam, t=t)
    P = macdonald_oracle(lam, N, point.q, point.t)
    target = polynomial_to_chart(P, lam)
    D = (target.order + 2) if order is None else order
    f = f_trig(N, D, point)
    disc = first_discrepancy(f, TruncatedSeries(N, D, target.terms))
    return ReductionReport(lam, N, D, disc is None, disc)
