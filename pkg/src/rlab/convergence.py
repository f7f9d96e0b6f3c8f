"""Numerical validation of the convergence estimates for the non-stationary series.

This is the only module working in complex floating point: the hypotheses
(``|sin arg(s_i/s_j)| > sigma``, real ``q`` and ``kappa`` on opposite sides of the
unit circle) are analytic.  The identities at the end are checked exactly.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

from .combinatorics import enumerate_multipartitions, partition_counts
from .ruijsenaars import double_poch_prefactor, pair_prefactor
from .series import TruncatedSeries, first_discrepancy, geometric_expand, scalar
from .special import CN_inf_factors

REL_TOL = 1e-9
ABS_TOL = 1e-12


class HypothesisError(ValueError):
    """The sampled input does not satisfy the convergence hypotheses."""


@dataclass
class ConvergenceInput:
    N: int
    sigma: float
    q: float
    kappa: float
    t: complex
    s: tuple
    rho: float | None = None

    def violations(self) -> list[str]:
        out = []
        if self.sigma <= 0:
            out.append("sigma must be positive")
        for i in range(self.N):
            for j in range(i + 1, self.N):
                if abs(math.sin(cmath.phase(self.s[i] / self.s[j]))) <= self.sigma:
                    out.append(f"|sin arg(s_{i + 1}/s_{j + 1})| <= sigma")
        q, k = abs(self.q), abs(self.kappa)
        if not ((q < 1 < k) or (k < 1 < q)):
            out.append("need |q|<1<|kappa| or |kappa|<1<|q|")
        return out

    def s_ratio(self, i: int, k: int) -> complex:
        """``s_k / s_i`` with ``s_{m+N} = kappa s_m``."""
        def ext(m):
            w, j = divmod(m - 1, self.N)
            return self.kappa**w * self.s[j]

        return ext(k) / ext(i)


@dataclass
class BoundReport:
    C1: float
    C2: float
    rho_max: float
    worst: float = 0.0
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def margin(self) -> float:
        return self.C1 * self.C2 - self.worst

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self):
        return {"C1": self.C1, "C2": self.C2, "rho_max": self.rho_max,
                "worst_root": self.worst, "margin": self.margin,
                "checked": self.checked, "passed": self.passed,
                "failures": [str(f) for f in self.failures[:5]]}


def bounds_C1C2(inp: ConvergenceInput) -> BoundReport:
    """The closed-form constants ``C1``, ``C2`` and ``rho_max = 1/(C1 C2)``.

    For ``N = 1`` there are no pairs ``i < j`` and the ``1/sigma`` terms are dropped.
    """
    bad = inp.violations()
    if bad:
        raise HypothesisError("; ".join(bad))
    C1, C2 = closed_form_C1C2(inp.N, inp.sigma, inp.q, inp.t, inp.kappa)
    return BoundReport(C1, C2, 1 / (C1 * C2))


def closed_form_C1C2(N: int, sigma: float, q: float, t: complex, kappa: float) -> tuple[float, float]:
    """Evaluate the two closed forms without checking the hypotheses."""
    inv_sigma = 1 / sigma if N > 1 else 0.0
    C1 = 1 + abs(1 - t / q) * max(inv_sigma, abs(kappa) / abs(1 - abs(kappa)))
    C2 = 1 + abs(1 - q / t) * max(inv_sigma, 1 / abs(1 - abs(q)))
    return C1, C2


def check_coeff_bound(inp: ConvergenceInput, D: int) -> BoundReport:
    """``|C_{N,inf}(lam)| <= (C1 C2)**|lam|`` for every N-partition of weight at most ``D``."""
    rep = bounds_C1C2(inp)
    C = rep.C1 * rep.C2
    for lam in enumerate_multipartitions(inp.N, D):
        w = lam.weight
        val = abs(CN_inf_factors(lam).evaluate_complex(inp.q, inp.t, inp.s_ratio))
        rep.checked += 1
        if w:
            rep.worst = max(rep.worst, val ** (1 / w))
        if val > C**w * (1 + REL_TOL):
            rep.failures.append((lam, val, C**w))
    return rep


# -- sampling ----------------------------------------------------------------------------------


def sample_input(N: int, seed: int) -> ConvergenceInput:
    """Deterministic admissible input: spread angles, ``q``, ``kappa`` from one of the two regimes."""
    rng = random.Random(f"rlab-conv-{N}-{seed}")
    base = [math.pi * j / N for j in range(N)] if N > 1 else [0.0]
    jitter = 0.3 * math.pi / max(N, 2)
    angles = [a + rng.uniform(-jitter, jitter) for a in base]
    s = tuple(rng.uniform(0.5, 2.0) * cmath.exp(1j * a) for a in angles)
    sines = [abs(math.sin(angles[i] - angles[j])) for i in range(N) for j in range(i + 1, N)]
    sigma = 0.99 * min(sines) if sines else 1.0
    if rng.random() < 0.5:
        q = rng.choice((1, -1)) * rng.uniform(0.2, 0.8)
        kappa = rng.choice((1, -1)) * rng.uniform(1.25, 4.0)
    else:
        q = rng.choice((1, -1)) * rng.uniform(1.25, 4.0)
        kappa = rng.choice((1, -1)) * rng.uniform(0.2, 0.8)
    t = complex(q) * cmath.rect(rng.uniform(0.6, 1.6), rng.uniform(-1.0, 1.0))
    return ConvergenceInput(N, sigma, q, kappa, t, s)


# -- partial sums ------------------------------------------------------------------------------------


def multipartition_counts(N: int, D: int) -> list[int]:
    """Number of N-partitions of each weight ``0..D``."""
    p = partition_counts(D)
    out = [1] + [0] * D
    for _ in range(N):
        out = [sum(out[k] * p[n - k] for k in range(n + 1)) for n in range(D + 1)]
    return out


@dataclass
class PartialSumReport:
    sums: list
    increments: list
    envelope: list
    alpha: float

    @property
    def passed(self) -> bool:
        return all(d <= e * (1 + REL_TOL) + ABS_TOL for d, e in zip(self.increments, self.envelope))

    def as_dict(self):
        return {"alpha": self.alpha, "increments": self.increments,
                "envelope": self.envelope, "passed": self.passed,
                "sums": [[s.real, s.imag] for s in self.sums]}


def partial_sums(inp: ConvergenceInput, z, D: int) -> PartialSumReport:
    """Partial sums ``S_d`` of ``f_{N,inf}`` over ``|lam| <= d`` at the chart point ``z``.

    ``z_i = x_{i+1}/x_i`` (and ``z_N = p x_1/x_N``).  With ``rho = max |z_i|`` each
    increment ``|S_d - S_{d-1}|`` is bounded by ``P_N(d) alpha**d``, ``alpha = rho C1 C2``,
    where ``P_N(d)`` counts N-partitions of weight ``d``.
    """
    from .ruijsenaars import multipartition_monomial

    rep = bounds_C1C2(inp)
    rho = max(abs(x) for x in z)
    alpha = rho * rep.C1 * rep.C2
    if alpha >= 1:
        raise HypothesisError(f"chart point outside the domain (alpha = {alpha})")
    layers = [0j] * (D + 1)
    for lam in enumerate_multipartitions(inp.N, D):
        mono = 1 + 0j
        for zi, e in zip(z, multipartition_monomial(lam)):
            mono *= zi**e
        layers[lam.weight] += CN_inf_factors(lam).evaluate_complex(inp.q, inp.t, inp.s_ratio) * mono
    sums, acc = [], 0j
    for layer in layers:
        acc += layer
        sums.append(acc)
    counts = multipartition_counts(inp.N, D)
    increments = [abs(layers[d]) for d in range(1, D + 1)]
    envelope = [counts[d] * alpha**d for d in range(1, D + 1)]
    return PartialSumReport(sums, increments, envelope, alpha)


# -- the three elementary estimates ---------------------------------------------------------------


def _ratio(z0: complex, a: complex, q: float, theta: int) -> complex:
    val = 1 + 0j
    for n in range(theta):
        val *= (1 - q**n * a * z0) / (1 - q**n * z0)
    return val


def estimate_a(theta, a, q, l, u):
    lhs = abs(_ratio(q**l * u, a, q, theta))
    rhs = (1 + abs(1 - a) / abs(math.sin(cmath.phase(u)))) ** theta
    return lhs, rhs


def estimate_b(theta, a, q, kappa, m, ell):
    lhs = abs(_ratio(q ** (-theta - m + 1) * kappa**ell, a, q, theta))
    rhs = (1 + abs(1 - a) * abs(kappa) / abs(1 - abs(kappa))) ** theta
    return lhs, rhs


def estimate_c(theta, a, q, kappa, m, ell):
    lhs = abs(_ratio(q ** (-theta - m) * kappa**ell, a, q, theta))
    rhs = (1 + abs(1 - a) / abs(1 - abs(q))) ** theta
    return lhs, rhs


@dataclass
class EstimateReport:
    part: str
    samples: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


def check_poch_estimates(samples: int = 200, seed: int = 0) -> list[EstimateReport]:
    """The three Pochhammer-ratio estimates on seeded samples inside their hypotheses."""
    rng = random.Random(f"rlab-estimates-{seed}")

    def regime():
        if rng.random() < 0.5:
            return rng.choice((1, -1)) * rng.uniform(0.1, 0.9), rng.choice((1, -1)) * rng.uniform(1.1, 5.0)
        return rng.choice((1, -1)) * rng.uniform(1.1, 5.0), rng.choice((1, -1)) * rng.uniform(0.1, 0.9)

    def complex_a():
        return complex(rng.uniform(-3, 3), rng.uniform(-3, 3))

    reports = []
    for part in "abc":
        failures = []
        for _ in range(samples):
            theta = rng.randint(0, 6)
            a = complex_a()
            q, kappa = regime()
            if part == "a":
                u = cmath.rect(rng.uniform(0.1, 10), rng.choice((1, -1)) * rng.uniform(0.05, math.pi - 0.05))
                args = (theta, a, q, rng.randint(-5, 5), u)
                lhs, rhs = estimate_a(*args)
            elif part == "b":
                args = (theta, a, q, kappa, rng.randint(0, 4), rng.randint(1, 3))
                lhs, rhs = estimate_b(*args)
            else:
                args = (theta, a, q, kappa, rng.randint(0, 4), rng.randint(0, 3))
                lhs, rhs = estimate_c(*args)
            if not lhs <= rhs + ABS_TOL:
                failures.append((args, lhs, rhs))
        reports.append(EstimateReport(part, samples, failures))
    return reports


# -- exact identities ------------------------------------------------------------------------------


def euler_product(D: int) -> TruncatedSeries:
    """``1/(alpha;alpha)_inf`` as a series in ``alpha`` to order ``D``."""
    out = TruncatedSeries.one(1, D)
    for k in range(1, D + 1):
        out = out * geometric_expand(1, (k,), D)
    return out


def check_euler_identity(D: int):
    """Partition counts against the expanded product; returns ``(passed, counts, product)``."""
    counts = partition_counts(D)
    prod = euler_product(D)
    coeffs = [int(prod.coefficient((d,))) for d in range(D + 1)]
    lhs = TruncatedSeries(1, D, {(d,): c for d, c in enumerate(counts)})
    return first_discrepancy(lhs, prod) is None, counts, coeffs


def check_double_poch_product(N: int, D: int, a, b, q):
    """Product over ``x_{i+N} = p x_i`` against the double-Pochhammer form, in the cyclic chart."""
    a, b, q = scalar(a), scalar(b), scalar(q)
    lhs = pair_prefactor(N, D, a, b, q, True)
    rhs = double_poch_prefactor(N, D, a, b, q)
    return first_discrepancy(lhs, rhs)
