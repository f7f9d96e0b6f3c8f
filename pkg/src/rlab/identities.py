"""Named identity and conjecture checks with uniform reports.

Each driver returns a :class:`CheckResult`.  ``kind`` separates proven
statements (a failure is a bug) from conjectural ones (a failure is a
finding).  Default ranges are the ones used by the acceptance suite; every
driver accepts smaller or larger ranges.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product

from gmpy2 import mpq

from . import convergence as cv
from .combinatorics import (
    compositions,
    enumerate_multipartitions,
    enumerate_partitions,
    enumerate_periodic_theta,
    theta_to_multipartition,
)
from .operators import (
    apply_D_trig,
    apply_E,
    apply_T_balanced,
    apply_T_nonstat,
    apply_T_trig,
    check_commutativity,
    delta_weight,
    eigenvalue_eps,
    random_body,
)
from .ruijsenaars import (
    check_chi_duality,
    check_duality,
    check_macdonald_reduction,
    f_glN_balanced,
    f_nonstat,
    f_trig,
    slice_pfree,
)
from .series import PoleError, first_discrepancy
from .special import (
    ParamPoint,
    coeff_CN_inf,
    coeff_cN_inf,
    coeff_Ctilde,
    generic_points,
)

PROVEN = "proven"
CONJECTURE = "conjecture"


@dataclass
class CheckResult:
    name: str
    kind: str
    passed: bool
    cases: int = 0
    discrepancy: dict | None = None
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def status(self) -> str:
        if self.kind == PROVEN:
            return "pass" if self.passed else "fail"
        return "consistent" if self.passed else "inconsistent"

    def as_dict(self):
        d = {"name": self.name, "kind": self.kind, "status": self.status,
             "passed": self.passed, "cases": self.cases}
        if self.discrepancy is not None:
            d["discrepancy"] = self.discrepancy
        if self.details:
            d["details"] = self.details
        return d


class _Tally:
    """Collects cases and keeps the first failure."""

    def __init__(self):
        self.cases = 0
        self.first = None

    def record(self, ok: bool, where: dict):
        self.cases += 1
        if not ok and self.first is None:
            self.first = where

    def compare(self, lhs, rhs, where: dict):
        disc = first_discrepancy(lhs, rhs)
        if disc is not None:
            k, a, b = disc
            where = dict(where, exponents=list(k) if isinstance(k, tuple) else k,
                         lhs=str(a), rhs=str(b))
        self.record(disc is None, where)

    def result(self, name, kind, t0, **details) -> CheckResult:
        return CheckResult(name, kind, self.first is None, self.cases, self.first,
                           details, time.perf_counter() - t0)


def _Ns(N, default):
    return default if N is None else (N,)


def _points(N, count, seed, check=None):
    return generic_points(N, count, check, start=seed * 1000)


# -- coefficient identities ----------------------------------------------------------------


def theta_vs_multipartition(N=None, order=6, points=5, seed=0) -> CheckResult:
    """theta-matrix coefficients against the multipartition form."""
    t0, tally = time.perf_counter(), _Tally()
    for n in _Ns(N, (1, 2, 3)):
        thetas = list(enumerate_periodic_theta(n, order))
        for P in _points(n, points, seed):
            for th in thetas:
                a = coeff_cN_inf(th, P)
                b = coeff_CN_inf(theta_to_multipartition(th), P)
                tally.record(a == b, {"N": n, "theta": str(th), "lhs": str(a), "rhs": str(b)})
    return tally.result("theta_vs_multipartition", PROVEN, t0, order=order)


def kappa_cancellation(N=None, order=6, points=5, seed=0) -> CheckResult:
    """The kappa-cancelled coefficient against the multipartition form."""
    t0, tally = time.perf_counter(), _Tally()
    for n in _Ns(N, (1, 2, 3)):
        lams = list(enumerate_multipartitions(n, order))
        for P in _points(n, points, seed):
            for lam in lams:
                a, b = coeff_Ctilde(lam, P), coeff_CN_inf(lam, P)
                tally.record(a == b, {"N": n, "lambda": repr(lam), "lhs": str(a), "rhs": str(b)})
    return tally.result("kappa_cancellation", PROVEN, t0, order=order)


def pfree_limit(N=None, order=8, points=1, seed=0) -> CheckResult:
    """p-free slice of the non-stationary series against the trigonometric series."""
    t0, tally = time.perf_counter(), _Tally()
    for n in _Ns(N, (1, 2, 3)):
        for P in _points(n, points, seed):
            tally.compare(slice_pfree(f_nonstat(n, order, P), n), f_trig(n, order, P),
                          {"N": n, "point": P.describe()})
    return tally.result("pfree_limit", PROVEN, t0, order=order)


# -- trigonometric eigenfunctions -----------------------------------------------------------------


_RT = ((mpq(2, 3), mpq(3, 5)), (mpq(3, 4), mpq(2, 7)), (mpq(4, 3), mpq(5, 3)))


def macdonald(N=None, max_weight=4, points=3, lam=None, seed=0) -> CheckResult:
    """``x^lam f_N`` at the spectral point against the eigen-solve oracle."""
    t0, tally = time.perf_counter(), _Tally()
    for n in _Ns(N, (2, 3)):
        lams = [lam] if lam is not None else [
            p for p in enumerate_partitions(max_weight) if len(p) <= n]
        for (r, t) in _RT[:points]:
            for mu in lams:
                rep = check_macdonald_reduction(mu, n, r, t)
                where = {"N": n, "lambda": list(mu), "r": str(r), "t": str(t)}
                if rep.discrepancy is not None:
                    k, a, b = rep.discrepancy
                    where.update(exponents=list(k), lhs=str(a), rhs=str(b))
                tally.record(rep.passed, where)
    return tally.result("macdonald", PROVEN, t0, max_weight=max_weight)


def e_eigen(N=None, order=8, points=1, seed=0) -> CheckResult:
    """``E^{+-} f_N = (sum s_i^{+-1}) f_N`` at generic spectral variables."""
    t0, tally = time.perf_counter(), _Tally()
    for n in _Ns(N, (1, 2, 3)):
        for P in _points(n, points, seed, check=lambda p, n=n: f_trig(n, order, p)):
            f = f_trig(n, order, P)
            for sg in (1, -1):
                ev = sum(s**sg for s in P.s)
                tally.compare(apply_E(f, sg, P.s, P.r, P.t), f.scale(ev),
                              {"N": n, "sign": sg, "point": P.describe()})
    return tally.result("e_eigen", PROVEN, t0, order=order)


def intertwining(N=None, order=5, bodies=10, seed=0) -> CheckResult:
    """``D^{+-}(x^lam g) = x^lam E^{+-}(g)`` with ``s_i = t^{N-i} q^{lam_i}``."""
    t0, tally = time.perf_counter(), _Tally()
    Ns = _Ns(N, (1, 2, 3))
    for b in range(bodies):
        n = Ns[b % len(Ns)]
        r, t = _RT[b % len(_RT)]
        f = random_body(n, order, seed * 100 + b)
        lam = tuple(int(x) for x in f.prefix)
        s = ParamPoint.spectral(r, lam, t=t).s
        for sg in (1, -1):
            lhs = apply_D_trig(f, sg, r, t)
            rhs = apply_E(f.with_prefix(None), sg, s, r, t).with_prefix(f.prefix)
            tally.compare(lhs, rhs, {"N": n, "sign": sg, "body": b, "lambda": list(lam)})
    return tally.result("intertwining", PROVEN, t0, order=order)


def _eigen_lambdas(n, max_weight):
    for w in range(max_weight + 1):
        yield from compositions(w, n)


def trig_T_eigen(N=None, order=6, max_weight=3, betas=(1, 2), r=mpq(2, 3), lam=None) -> CheckResult:
    """Diagonal action of the trigonometric T-operator on ``x^lam f_N``.

    Integer vectors ``lam`` for which ``f_N`` itself has a pole at the spectral
    point are skipped and counted.
    """
    t0, tally = time.perf_counter(), _Tally()
    skipped = []
    for n in _Ns(N, (2, 3)):
        lams = [tuple(lam)] if lam is not None else list(_eigen_lambdas(n, max_weight))
        for beta, mu in product(betas, lams):
            P = ParamPoint.spectral(r, mu, beta=beta)
            try:
                f = f_trig(n, order, P).with_prefix(mu)
            except PoleError:
                skipped.append({"N": n, "beta": beta, "lambda": list(mu)})
                continue
            ev = eigenvalue_eps(mu, r, P.t, beta)
            tally.compare(apply_T_trig(f, r, P.t, beta), f.scale(ev),
                          {"N": n, "beta": beta, "lambda": list(mu)})
    return tally.result("trig_T_eigen", PROVEN, t0, order=order, skipped_poles=skipped)


def commutativity(N=None, order=4, bodies=5, seed=0) -> CheckResult:
    """``[T, D^{+-}] = 0`` on random prefixed bodies at generic ``t``."""
    t0, tally = time.perf_counter(), _Tally()
    for n in _Ns(N, (2, 3)):
        for b in range(bodies):
            r, t = _RT[b % len(_RT)]
            f = random_body(n, order, seed * 100 + b)
            for sg in (1, -1):
                rep = check_commutativity(f, sg, r, t)
                where = {"N": n, "sign": sg, "body": b}
                if rep.first_discrepancy is not None:
                    k, a, c = rep.first_discrepancy
                    where.update(exponents=list(k), lhs=str(a), rhs=str(c))
                tally.record(rep.passed, where)
    return tally.result("commutativity", PROVEN, t0, order=order)


# -- non-stationary operators ------------------------------------------------------------------------


def nonstat_T_eigen(N=2, order=3, beta=1, lams=None, r=mpq(2, 3), kappa=mpq(3, 4)) -> CheckResult:
    """Residual of the non-stationary T-operator on ``x^lam f_{N,inf}``."""
    t0, tally = time.perf_counter(), _Tally()
    N = 2 if N is None else N
    lams = lams or [(0,) * N, (1,) + (0,) * (N - 1)]
    for mu in lams:
        P = ParamPoint.spectral(r, mu, beta=beta, kappa=kappa)
        f = f_nonstat(N, order, P).with_prefix(tuple(mu))
        ev = eigenvalue_eps(mu, r, P.t, beta)
        tally.compare(apply_T_nonstat(f, r, P.t, kappa, beta), f.scale(ev),
                      {"N": N, "beta": beta, "lambda": list(mu), "kappa": str(kappa)})
    return tally.result("nonstat_T_eigen", CONJECTURE, t0, order=order, beta=beta)


def balanced_T(N=None, order=2, bodies=3, seed=0) -> CheckResult:
    """Balanced T-operator against the unbalanced one transported to balanced coordinates.

    With ``t_B = q/t`` and ``kappa_B = K`` the balanced operator must coincide
    with the unbalanced one whose p-shift acts as ``z**alpha -> K**|alpha|``.
    The balanced operator is also applied to ``x^lam f^{gl_N}`` at
    ``s_i = (q/t_B)**(N-i) q**lam_i``, where it must act by the eigenvalue.
    """
    t0, tally = time.perf_counter(), _Tally()
    for n in _Ns(N, (1, 2)):
        for b in range(bodies):
            r, t = _RT[b % len(_RT)]
            K = mpq(5, 7) if b % 2 == 0 else mpq(9, 4)
            f = random_body(n, order, seed * 100 + b, pfree=False)
            lhs = apply_T_balanced(f, r, r * r / t, K)
            rhs = apply_T_nonstat(f, r, t, K, pshift="total")
            tally.compare(lhs, rhs, {"N": n, "body": b, "K": str(K)})
    r, K = mpq(2, 3), mpq(3, 4)
    q = r * r
    for n in _Ns(N, (1, 2)):
        for beta in (1, 2):
            t_B = q ** (1 - beta)
            for mu in [(0,) * n, (1,) + (0,) * (n - 1)]:
                s_B = [(q / t_B) ** (n - i) * q**l for i, l in enumerate(mu, 1)]
                f = f_glN_balanced(n, order, q, t_B, K, s_B).with_prefix(mu)
                ev = delta_weight(mu, r, q / t_B)
                tally.compare(apply_T_balanced(f, r, t_B, K), f.scale(ev),
                              {"N": n, "beta": beta, "lambda": list(mu), "balanced_eigen": True})
    return tally.result("balanced_T", PROVEN, t0, order=order)


# -- dualities ----------------------------------------------------------------------------------------


_QT = ((mpq(4, 9), mpq(3, 5)), (mpq(9, 16), mpq(2, 7)), (mpq(16, 9), mpq(5, 3)))


def _dualities(name, kind, Ns, order, points, periodic, chi_only=False):
    t0, tally = time.perf_counter(), _Tally()
    for n in Ns:
        for q, t in _QT[:points]:
            reps = [check_chi_duality(n, order, q, t, periodic)] if chi_only else \
                check_duality(n, order, q, t, periodic)
            for rep in reps:
                where = {"N": n, "form": rep.name, "q": str(q), "t": str(t)}
                if rep.discrepancy is not None:
                    k, a, b = rep.discrepancy
                    where.update(exponents=list(k), lhs=str(a), rhs=str(b))
                tally.record(rep.passed, where)
    return tally.result(name, kind, t0, bidegree=[order, order])


def duality_trig(N=None, order=4, points=3) -> CheckResult:
    return _dualities("duality_trig", PROVEN, _Ns(N, (2, 3)), order, points, False)


def chi_duality(N=None, order=4, points=3) -> CheckResult:
    return _dualities("chi_duality", PROVEN, _Ns(N, (2, 3)), order, points, False, True)


def duality_nonstat(N=None, order=2, points=3) -> CheckResult:
    return _dualities("duality_nonstat", CONJECTURE, _Ns(N, (2,)), order, points, True)


# -- convergence and identities ---------------------------------------------------------------------


def euler(order=12) -> CheckResult:
    t0, tally = time.perf_counter(), _Tally()
    ok, counts, coeffs = cv.check_euler_identity(order)
    tally.record(ok, {"counts": counts, "product": coeffs})
    return tally.result("euler", PROVEN, t0, order=order, coefficients=counts)


_ABQ = ((mpq(2, 3), mpq(5, 7), mpq(3, 4)), (mpq(3, 2), mpq(1, 5), mpq(2, 5)),
        (mpq(7, 4), mpq(7, 4), mpq(5, 3)))


def double_poch_product(N=None, order=6, points=3) -> CheckResult:
    t0, tally = time.perf_counter(), _Tally()
    for n in _Ns(N, (1, 2, 3)):
        for a, b, q in _ABQ[:points]:
            disc = cv.check_double_poch_product(n, order, a, b, q)
            where = {"N": n, "a": str(a), "b": str(b), "q": str(q)}
            if disc is not None:
                where.update(exponents=list(disc[0]), lhs=str(disc[1]), rhs=str(disc[2]))
            tally.record(disc is None, where)
    return tally.result("double_poch_product", PROVEN, t0, order=order)


def poch_estimates(samples=200, seed=0) -> CheckResult:
    t0, tally = time.perf_counter(), _Tally()
    for rep in cv.check_poch_estimates(samples, seed):
        for args, lhs, rhs in rep.failures:
            tally.record(False, {"part": rep.part, "args": str(args), "lhs": lhs, "rhs": rhs})
        tally.cases += rep.samples - len(rep.failures)
    return tally.result("poch_estimates", PROVEN, t0, samples=samples, float=True)


def bounds(N=None, order=6, points=10, seed=0, partial_order=10) -> CheckResult:
    """Coefficient bounds at sampled admissible points and partial-sum decay at an interior point."""
    t0, tally = time.perf_counter(), _Tally()
    reports = []
    for n in _Ns(N, (1, 2, 3)):
        for k in range(points):
            inp = cv.sample_input(n, seed * 1000 + k)
            rep = cv.check_coeff_bound(inp, order)
            reports.append({"N": n, **rep.as_dict()})
            tally.record(rep.passed, {"N": n, "sample": k, "failures": rep.as_dict()["failures"]})
    n = 2 if N is None else N
    inp = cv.sample_input(n, seed * 1000)
    rho = 0.5 * cv.bounds_C1C2(inp).rho_max
    ps = cv.partial_sums(inp, [rho] * n, partial_order)
    tally.record(ps.passed, {"partial_sums": ps.as_dict()})
    return tally.result("bounds", PROVEN, t0, float=True, samples=reports,
                        partial_sums=ps.as_dict())


REGISTRY = {
    "theta_vs_multipartition": theta_vs_multipartition,
    "kappa_cancellation": kappa_cancellation,
    "pfree_limit": pfree_limit,
    "macdonald": macdonald,
    "e_eigen": e_eigen,
    "intertwining": intertwining,
    "duality_trig": duality_trig,
    "duality_nonstat": duality_nonstat,
    "chi_duality": chi_duality,
    "trig_T_eigen": trig_T_eigen,
    "commutativity": commutativity,
    "nonstat_T_eigen": nonstat_T_eigen,
    "balanced_T": balanced_T,
    "euler": euler,
    "double_poch_product": double_poch_product,
    "poch_estimates": poch_estimates,
    "bounds": bounds,
}
