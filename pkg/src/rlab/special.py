"""q-Pochhammer symbols, Nekrasov factors and the series coefficients.

Every coefficient is assembled as a :class:`Coeff`: a list of finite
Pochhammer symbols ``(q**a t**b X; q)_n`` in the numerator and denominator,
where ``X`` is a ratio of (extended) variables ``v_k / v_i``.  The same
factor list can then be evaluated

* at an exact parameter point (``v = s`` with ``s_{i+N} = kappa s_i``),
* as a limit along the spectral curve ``s_i = t**(N-i) q**lam_i`` when the
  point makes numerator and denominator vanish together,
* as a power series in the cyclic chart (``v = x`` with ``x_{i+N} = p x_i``),
* in complex floating point (for the convergence estimates).
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass, field

from gmpy2 import mpq

from .combinatorics import MultiPartition, Partition, ThetaMatrix
from .series import (
    ONE,
    ZERO,
    PoleError,
    TruncatedSeries,
    chart_monomial,
    geometric_expand,
    scalar,
)

# -- plain q-Pochhammer symbols -------------------------------------------------


def qpoch(z, q, k: int):
    """``(z; q)_k`` for any integer ``k``."""
    z, q = scalar(z), scalar(q)
    out = ONE
    if k >= 0:
        qn = ONE
        for _ in range(k):
            out *= 1 - qn * z
            qn *= q
        return out
    qn = ONE
    for _ in range(-k):
        qn /= q
        out *= 1 - qn * z
    if not out:
        raise PoleError(f"(z;q)_{k} has a pole")
    return 1 / out


def poch_flip_check(a, b, q, m: int) -> bool:
    """``(q^-m/a;q)_m / (q^-m/b;q)_m == (b/a)^m (qa;q)_m / (qb;q)_m``."""
    a, b, q = scalar(a), scalar(b), scalar(q)
    qm = q ** (-m)
    lden, rden = qpoch(qm / b, q, m), qpoch(q * b, q, m)
    if not lden or not rden:
        raise PoleError("flip identity evaluated at a pole")
    return qpoch(qm / a, q, m) / lden == (b / a) ** m * qpoch(q * a, q, m) / rden


def nekrasov(lam: Sequence[int], mu: Sequence[int], k: int, N: int, u, q, kappa):
    """The Nekrasov factor ``N^{(k|N)}_{lam,mu}(u|q,kappa)`` as an exact product."""
    lam, mu = Partition(lam), Partition(mu)
    u, q, kappa = scalar(u), scalar(q), scalar(kappa)
    out = ONE
    for b in range(1, len(lam) + 1):
        n = lam.part(b) - lam.part(b + 1)
        if not n:
            continue
        for a in range(1, b + 1):
            if (b - a - k) % N == 0:
                out *= qpoch(u * q ** (lam.part(b + 1) - mu.part(a)) * kappa ** (b - a), q, n)
    for beta in range(1, len(mu) + 1):
        n = mu.part(beta) - mu.part(beta + 1)
        if not n:
            continue
        for alpha in range(1, beta + 1):
            if (beta - alpha + k + 1) % N == 0:
                out *= qpoch(u * q ** (lam.part(alpha) - mu.part(beta)) * kappa ** (alpha - beta - 1), q, n)
    return out


# -- parameter points -------------------------------------------------------------


@dataclass
class ParamPoint:
    """Exact specialization of ``q = r**2``, ``t``, ``kappa`` and ``s_1..s_N``.

    If ``lam`` is given, ``s`` is the spectral point ``s_i = tau**(N-i) q**lam_i``
    with ``tau = t`` (or ``tau = q/t`` when ``balanced_spectrum`` is set), and
    coefficients are evaluated as limits along that curve.  ``beta``, when
    set, must satisfy ``t == q**beta``.
    """

    r: mpq
    t: mpq
    kappa: mpq = ONE
    s: tuple | None = None
    lam: tuple | None = None
    beta: int | None = None
    balanced_spectrum: bool = False
    N: int = field(default=0)

    def __post_init__(self):
        self.r = scalar(self.r)
        self.t = scalar(self.t)
        self.kappa = scalar(self.kappa)
        if not self.r or not self.t or not self.kappa:
            raise ValueError("r, t and kappa must be nonzero")
        if self.lam is not None:
            self.lam = tuple(int(x) for x in self.lam)
            self.N = len(self.lam)
            self.s = tuple(self.tau ** (self.N - i) * self.q ** l for i, l in enumerate(self.lam, 1))
        elif self.s is not None:
            self.s = tuple(scalar(x) for x in self.s)
            self.N = len(self.s)
            if not all(self.s):
                raise ValueError("s_i must be nonzero")
        if self.beta is not None and self.t != self.q**self.beta:
            raise ValueError("t must equal q**beta")

    @property
    def q(self) -> mpq:
        return self.r * self.r

    @property
    def tau(self) -> mpq:
        return self.q / self.t if self.balanced_spectrum else self.t

    @classmethod
    def spectral(cls, r, lam, beta=None, t=None, kappa=1, balanced=False):
        """Point with ``s_i = tau**(N-i) q**lam_i``; ``t = q**beta`` (or ``q**(1-beta)``
        in the balanced convention) unless ``t`` is given."""
        r = scalar(r)
        q = r * r
        if t is None:
            if beta is None:
                raise ValueError("need beta or t")
            t = q ** (1 - beta) if balanced else q**beta
            beta_t = 1 - beta if balanced else beta
        else:
            beta_t = None
        return cls(r=r, t=t, kappa=kappa, lam=tuple(lam), beta=beta_t, balanced_spectrum=balanced)

    def with_(self, **kw) -> ParamPoint:
        d = dict(r=self.r, t=self.t, kappa=self.kappa, s=None if self.lam else self.s,
                 lam=self.lam, beta=self.beta, balanced_spectrum=self.balanced_spectrum)
        d.update(kw)
        if "s" in kw:
            d["lam"] = None
        return ParamPoint(**d)

    def s_ext(self, m: int) -> mpq:
        """``s_m`` for any ``m >= 1`` using ``s_{m+N} = kappa s_m``."""
        ell, i = divmod(m - 1, self.N)
        return self.kappa**ell * self.s[i]

    def s_ratio(self, i: int, k: int) -> mpq:
        return self.s_ext(k) / self.s_ext(i)

    def describe(self) -> dict:
        out = {"r": str(self.r), "q": str(self.q), "t": str(self.t), "kappa": str(self.kappa)}
        if self.s is not None:
            out["s"] = [str(x) for x in self.s]
        if self.lam is not None:
            out["lambda"] = list(self.lam)
        if self.beta is not None:
            out["beta"] = self.beta
        return out


_HEIGHT_DENS = (2, 3, 4, 5, 7, 8, 9, 11)


def random_rational(rng: random.Random) -> mpq:
    """Small-height rational in (0,1) or (1,2)."""
    while True:
        d = rng.choice(_HEIGHT_DENS)
        n = rng.randrange(1, 2 * d)
        if n != d:
            return mpq(n, d)


def random_point(N: int, seed: int, kappa: bool = True) -> ParamPoint:
    """Deterministic generic point for a given seed (``q = r**2``)."""
    rng = random.Random(f"rlab-point-{N}-{seed}")
    r = random_rational(rng)
    while True:
        t = random_rational(rng)
        if t != r * r:
            break
    s = tuple(random_rational(rng) * (rng.choice((1, 2, 3))) for _ in range(N))
    k = random_rational(rng) if kappa else ONE
    return ParamPoint(r=r, t=t, kappa=k, s=s)


def generic_points(N: int, count: int, check=None, kappa: bool = True, start: int = 0):
    """``count`` seeded points on which ``check(point)`` does not raise PoleError."""
    out, seed = [], start
    while len(out) < count:
        p = random_point(N, seed, kappa)
        seed += 1
        if check is not None:
            try:
                check(p)
            except PoleError:
                continue
        out.append(p)
    return out


# -- factor lists -------------------------------------------------------------------


@dataclass(frozen=True)
class Poch:
    """``(q**a t**b v_k/v_i; q)_n``; ``(i, k) == (0, 0)`` means the bare scalar ``q**a t**b``."""

    a: int
    b: int
    i: int
    k: int
    n: int


@dataclass
class Coeff:
    """``q**qpow t**tpow * prod(num) / prod(den)`` over Pochhammer factors."""

    N: int
    num: list = field(default_factory=list)
    den: list = field(default_factory=list)
    qpow: int = 0
    tpow: int = 0

    def ratio(self, a_num, b_num, a_den, b_den, i, k, n):
        if n:
            self.num.append(Poch(a_num, b_num, i, k, n))
            self.den.append(Poch(a_den, b_den, i, k, n))

    # exact scalar ---------------------------------------------------------------
    def evaluate(self, point: ParamPoint) -> mpq:
        if point.lam is not None:
            return self.limit(point)
        q, t = point.q, point.t
        val = _qt(q, t, self.qpow, self.tpow)
        for f in self.num:
            val *= qpoch(_qt(q, t, f.a, f.b) * point.s_ratio(f.i, f.k), q, f.n)
        if not val:
            return ZERO
        den = ONE
        for f in self.den:
            den *= qpoch(_qt(q, t, f.a, f.b) * point.s_ratio(f.i, f.k), q, f.n)
        if not den:
            raise PoleError("coefficient denominator vanishes at this point")
        return val / den

    # limit along the spectral curve ---------------------------------------------
    def limit(self, point: ParamPoint) -> mpq:
        """Exact limit ``tau -> tau0`` with ``s_i = tau**(N-i) q**lam_i`` tied to ``tau``.

        Each linear factor ``1 - C tau**m`` is replaced by its leading germ:
        its value if nonzero, else ``-m`` times one power of the deformation.
        """
        lead, order = _germ(self.num, point)
        if lead is None:
            _, den_order = _germ(self.den, point, strict=True)
            return ZERO
        dlead, dorder = _germ(self.den, point, strict=True)
        order -= dorder
        if order > 0:
            return ZERO
        if order < 0:
            raise PoleError("coefficient has a pole on the spectral curve")
        q, t = point.q, point.t
        return lead / dlead * _qt(q, t, self.qpow, self.tpow)

    # complex floats -------------------------------------------------------------
    def evaluate_complex(self, q: complex, t: complex, s_ratio) -> complex:
        val = q**self.qpow * t**self.tpow
        for f in self.num:
            val *= _cpoch(q**f.a * t**f.b * s_ratio(f.i, f.k), q, f.n)
        for f in self.den:
            val /= _cpoch(q**f.a * t**f.b * s_ratio(f.i, f.k), q, f.n)
        return val

    # power series in the chart ------------------------------------------------------
    def series(self, q, t, order: int, nvars: int | None = None, offset: int = 0, dual=None):
        """Expansion with ``v_k/v_i`` read as the chart monomial ``M(i, k)``.

        ``M(i,k) = z_i z_{i+1} ... z_{k-1}`` (cyclic indices) for ``k >= i`` and its
        inverse for ``k < i``; negative monomials are flipped so that the product
        is a power series.  ``offset`` places the chart block inside a larger set
        of ``nvars`` variables.
        """
        q, t = scalar(q), scalar(t)
        N = self.N
        nvars = nvars or N
        scal = _qt(q, t, self.qpow, self.tpow)
        mono = [0] * N
        pos = []  # (const, exponent, is_num)
        for is_num, lst in ((True, self.num), (False, self.den)):
            for f in lst:
                base = _qt(q, t, f.a, f.b)
                if f.i == f.k:
                    e = None
                elif f.k > f.i:
                    e = chart_monomial(f.i, f.k, N)
                else:
                    e = chart_monomial(f.k, f.i, N)
                for j in range(f.n):
                    c = base * q**j
                    if e is None:
                        v = 1 - c
                        if is_num:
                            scal *= v
                        elif not v:
                            raise PoleError("vanishing constant factor in denominator")
                        else:
                            scal /= v
                    elif f.k > f.i:
                        pos.append((c, e, is_num))
                    else:
                        # 1 - c/w = (-c/w)(1 - w/c)
                        sgn = 1 if is_num else -1
                        scal *= (-c) ** sgn
                        for m, x in enumerate(e):
                            mono[m] -= sgn * x
                        pos.append((1 / c, e, is_num))
        if any(mono):
            raise ValueError("coefficient is not a power series in this chart")
        pad = lambda e: (0,) * offset + e + (0,) * (nvars - offset - N)
        out = TruncatedSeries.constant(scal, nvars, order, dual)
        if not scal:
            return out
        nums, dens = [], []
        for c, e, is_num in pos:
            (nums if is_num else dens).append((c, pad(e)))
        for c, e in nums:
            if c and out._fits(e):
                out = out * TruncatedSeries(nvars, order, {(0,) * nvars: 1, e: -c}, dual=dual)
        for c, e in dens:
            out = out * geometric_expand(c, e, order, dual)
        return out


def _qt(q, t, a, b):
    return q**a * t**b


def _cpoch(z, q, n):
    out = 1.0 + 0j
    qn = 1.0 + 0j
    for _ in range(n):
        out *= 1 - qn * z
        qn *= q
    return out


def _germ(factors, point: ParamPoint, strict=False):
    """(leading coefficient, order) of a product of Pochhammer factors in the deformation.

    Returns ``(None, inf)`` for an identically vanishing product (``strict`` turns
    that into a PoleError, used for denominators).
    """
    q = point.q
    N = point.N
    lam = point.lam
    bal = point.balanced_spectrum
    lead, order = ONE, 0
    for f in factors:
        # s_k/s_i = kappa^ell * tau^(i'-k') * q^(lam_k' - lam_i'); tau = t or q/t
        if f.i == f.k == 0:
            s_q, s_tau, s_k = 0, 0, ONE
        else:
            li, ii = divmod(f.i - 1, N)
            lk, kk = divmod(f.k - 1, N)
            s_k = point.kappa ** (lk - li)
            s_q = lam[kk] - lam[ii]
            s_tau = ii - kk
        # tau^m with tau = q/t contributes q^m t^-m
        if bal:
            a, b = f.a + s_q + s_tau, f.b - s_tau
        else:
            a, b = f.a + s_q, f.b + s_tau
        for j in range(f.n):
            c = q ** (a + j) * s_k * point.t**b
            v = 1 - c
            if v:
                lead *= v
            elif b:
                lead *= -b
                order += 1
            else:
                if strict:
                    raise PoleError("identically vanishing denominator on the spectral curve")
                return None, None
    return lead, order


# -- coefficient builders -------------------------------------------------------------


def cN_factors(theta: ThetaMatrix, q_over_t: bool = False) -> Coeff:
    """Factors of ``c_N(theta)`` (finite theta) or ``c_{N,inf}(theta)`` (periodic theta).

    With ``q_over_t`` the parameter ``t`` is replaced by ``q/t``.
    """
    N = theta.N
    W = theta.width()
    out = Coeff(N)
    top = N if not theta.periodic else None
    # tail sums: sum_{a>k} theta_{j a}
    def tail(j, k):
        lim = (top if top is not None else j + W)
        return sum(theta[j, a] for a in range(k + 1, lim + 1))

    # t -> (a, b) pair for q^a t^b; with q_over_t: t -> q t^-1
    tq, tt = (1, -1) if q_over_t else (0, 1)
    for i in range(1, N + 1):
        kmax = top if top is not None else i + W
        for k in range(i + 1, kmax + 1):
            n = theta[i, k]
            if not n:
                continue
            for j in range(i + 1, k + 1):
                e = tail(i, k) - tail(j, k)
                out.ratio(e + tq, tt, e + 1, 0, i, j, n)
            for j in range(i, k):
                e = -theta[j, k] - (tail(j, k) - tail(i, k))
                out.ratio(e + 1 - tq, -tt, e, 0, i, j, n)
    return out


def CN_inf_factors(lam: MultiPartition) -> Coeff:
    """Factors of ``C_{N,inf}(lam)`` in the multipartition form."""
    N = lam.N
    out = Coeff(N)
    L = lambda i, m: lam.part(i, m) if m >= 1 else 0
    for i in range(1, N + 1):
        li = len(lam.component(i))
        for k in range(i + 1, i + li + 1):
            n = L(i, k - i) - L(i, k - i + 1)
            if not n:
                continue
            for j in range(i + 1, k + 1):
                e = L(i, k - i + 1) - L(j, k - j + 1)
                out.ratio(e, 1, e + 1, 0, i, j, n)
            for j in range(i, k):
                e = -L(j, k - j) + L(i, k - i + 1)
                out.ratio(e + 1, -1, e, 0, i, j, n)
    return out


def Ctilde_factors(lam: MultiPartition) -> Coeff:
    """Factors of the Nekrasov-ratio coefficient with the kappa-dependence cancelled.

    For each pair ``(i, j)`` the two Nekrasov products are written as products over
    ``a >= 1, ell >= [i > j]`` and ``alpha >= 1, ell' >= [j >= i]`` with the shifted
    variables ``s_{j + ell N}`` and ``s_{i + ell' N}``; the ratio of ``c = q/t`` to
    ``c = 1`` is taken, times ``(t/q)**|lam|``.
    """
    N = lam.N
    out = Coeff(N, qpow=-lam.weight, tpow=lam.weight)
    for i in range(1, N + 1):
        li = lam.component(i)
        for j in range(1, N + 1):
            lj = lam.component(j)
            ell = 1 if i > j else 0
            while True:
                any_b = False
                for a in range(1, len(li) + 1):
                    b = a + j + ell * N - i
                    if b < a or b > len(li):
                        continue
                    any_b = True
                    n = li.part(b) - li.part(b + 1)
                    e = -lj.part(a) + li.part(b + 1)
                    out.ratio(e + 1, -1, e, 0, i, j + ell * N, n)
                if not any_b and j + ell * N - i + 1 > len(li):
                    break
                ell += 1
            ell = 1 if j >= i else 0
            while True:
                any_b = False
                for alpha in range(1, len(lj) + 1):
                    beta = alpha + i + ell * N - j - 1
                    if beta < alpha or beta > len(lj):
                        continue
                    any_b = True
                    n = lj.part(beta) - lj.part(beta + 1)
                    e = li.part(alpha) - lj.part(beta)
                    out.ratio(e + 1, -1, e, 0, i + ell * N, j, n)
                if not any_b and i + ell * N - j > len(lj):
                    break
                ell += 1
    return out


def nekrasov_ratio_factors(lam: MultiPartition, c_t: int = 1) -> Coeff:
    """``t**-|lam| prod_{i,j} N^{(j-i|N)}(t v_j/v_i | q, P) / N^{(j-i|N)}(v_j/v_i | q, P)``.

    ``P`` is the parameter that plays the role of kappa (or of p on the
    operator side); ``P**e v_j/v_i`` is recorded as the ratio ``v_{i+e}/v_i``,
    which is the balanced-chart monomial when ``v_{m+N} = v_m``.
    """
    N = lam.N
    out = Coeff(N, tpow=-c_t * lam.weight)
    for i in range(1, N + 1):
        li = lam.component(i)
        for j in range(1, N + 1):
            lj = lam.component(j)
            k = (j - i) % N
            for b in range(1, len(li) + 1):
                n = li.part(b) - li.part(b + 1)
                if not n:
                    continue
                for a in range(1, b + 1):
                    if (b - a - k) % N:
                        continue
                    e = li.part(b + 1) - lj.part(a)
                    out.ratio(e, c_t, e, 0, i, i + b - a, n)
            for beta in range(1, len(lj) + 1):
                n = lj.part(beta) - lj.part(beta + 1)
                if not n:
                    continue
                for alpha in range(1, beta + 1):
                    if (beta - alpha + k + 1) % N:
                        continue
                    e = li.part(alpha) - lj.part(beta)
                    out.ratio(e, c_t, e, 0, i, i + alpha - beta - 1, n)
    return out


def balanced_scalar(coeff: Coeff, q, t, P, v: Sequence) -> mpq:
    """Evaluate Nekrasov-ratio factors at periodic variables ``v_{m+N} = v_m``.

    A recorded ratio ``(i, i+e)`` stands for ``P**e v_j/v_i`` with
    ``j = ((i + e - 1) mod N) + 1``.
    """
    q, t, P = scalar(q), scalar(t), scalar(P)
    N = coeff.N
    v = [scalar(x) for x in v]

    def arg(f):
        j = (f.k - 1) % N + 1
        e = f.k - f.i  # power of P relative to v_j / v_i
        return q**f.a * t**f.b * P**e * v[j - 1] / v[f.i - 1]

    val = q**coeff.qpow * t**coeff.tpow
    for f in coeff.num:
        val *= qpoch(arg(f), q, f.n)
    if not val:
        return ZERO
    den = ONE
    for f in coeff.den:
        den *= qpoch(arg(f), q, f.n)
    if not den:
        raise PoleError("Nekrasov denominator vanishes")
    return val / den


# -- public coefficient functions --------------------------------------------------------


def coeff_cN(theta: ThetaMatrix, point: ParamPoint) -> mpq:
    """``c_N(theta|s|q,t)`` for a finite theta matrix."""
    if theta.periodic:
        theta = theta.as_finite()
    return cN_factors(theta).evaluate(point)


def coeff_cN_inf(theta: ThetaMatrix, point: ParamPoint) -> mpq:
    """``c_{N,inf}(theta|s,kappa|q,t)`` for an N-periodic theta matrix."""
    if not theta.periodic:
        theta = theta.as_periodic()
    return cN_factors(theta).evaluate(point)


def coeff_CN_inf(lam: MultiPartition, point: ParamPoint) -> mpq:
    return CN_inf_factors(lam).evaluate(point)


def coeff_Ctilde(lam: MultiPartition, point: ParamPoint) -> mpq:
    return Ctilde_factors(lam).evaluate(point)


def coeff_Ctilde_literal(lam: MultiPartition, r, t, K, s) -> mpq:
    """The Nekrasov-ratio coefficient with fractional powers made rational.

    ``K`` is the N-th root of kappa: the Nekrasov factors are taken with
    parameter ``K`` and argument ``c K**(i-j) s_j/s_i``, ``c in {q/t, 1}``.
    """
    lam = MultiPartition(lam)
    N = lam.N
    r, t, K = scalar(r), scalar(t), scalar(K)
    q = r * r
    s = [scalar(x) for x in s]
    num = den = ONE
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            u = K ** (i - j) * s[j - 1] / s[i - 1]
            num *= nekrasov(lam.component(i), lam.component(j), (j - i) % N, N, q / t * u, q, K)
            den *= nekrasov(lam.component(i), lam.component(j), (j - i) % N, N, u, q, K)
    if not den:
        raise PoleError("Nekrasov denominator vanishes")
    return (t / q) ** lam.weight * num / den


def coeff_balanced(lam: MultiPartition, q, t_B, kappa_B, s_B) -> mpq:
    """Coefficient ``t_B**-|lam| prod N(t_B s_j/s_i)/N(s_j/s_i)`` of the balanced series."""
    lam = MultiPartition(lam)
    N = lam.N
    q, t_B, kappa_B = scalar(q), scalar(t_B), scalar(kappa_B)
    s_B = [scalar(x) for x in s_B]
    num = den = ONE
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            u = s_B[j - 1] / s_B[i - 1]
            k = (j - i) % N
            num *= nekrasov(lam.component(i), lam.component(j), k, N, t_B * u, q, kappa_B)
            den *= nekrasov(lam.component(i), lam.component(j), k, N, u, q, kappa_B)
    if not den:
        raise PoleError("Nekrasov denominator vanishes")
    return t_B ** (-lam.weight) * num / den


__all__ = [
    "CN_inf_factors",
    "Coeff",
    "Ctilde_factors",
    "ParamPoint",
    "Poch",
    "PoleError",
    "balanced_scalar",
    "cN_factors",
    "coeff_CN_inf",
    "coeff_Ctilde",
    "coeff_Ctilde_literal",
    "coeff_balanced",
    "coeff_cN",
    "coeff_cN_inf",
    "generic_points",
    "nekrasov",
    "nekrasov_ratio_factors",
    "poch_flip_check",
    "qpoch",
    "random_point",
    "random_rational",
]
