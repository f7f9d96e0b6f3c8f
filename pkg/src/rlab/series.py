"""Sparse truncated multivariate power series over exact rationals.

Exponent vectors are tuples of nonnegative ints.  A series is truncated by
total degree; optionally the trailing variables form a second block with
its own degree cap, which is how doubly expanded (x-side / s-side) series
are represented.

A series may carry a symbolic monomial prefix ``x**prefix`` (a tuple of
rationals).  The prefix never mixes with the exponent keys; arithmetic only
adds prefixes under multiplication.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence
from fractions import Fraction
from operator import add

from gmpy2 import mpq

Scalar = mpq
Exponent = tuple

ZERO = mpq(0)
ONE = mpq(1)


class PoleError(ZeroDivisionError):
    """Raised when an exact evaluation hits a vanishing denominator."""


def scalar(x) -> mpq:
    """Coerce ints, Fractions, strings like ``'3/7'`` and mpq to mpq."""
    if isinstance(x, str):
        return mpq(Fraction(x))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def unit_vector(n: int, i: int) -> tuple:
    """Exponent vector with a single 1 in (0-based) position ``i``."""
    return tuple(1 if k == i else 0 for k in range(n))


def _normalize_prefix(prefix, nvars):
    if prefix is None:
        return None
    prefix = tuple(Fraction(p) for p in prefix)
    if len(prefix) != nvars:
        raise ValueError(f"prefix of length {len(prefix)} for {nvars} variables")
    if not any(prefix):
        return None
    return prefix


class TruncatedSeries:
    """Element of ``x**prefix * Q[[z_1..z_n]]`` known up to total degree ``order``.

    ``dual`` is ``(n_dual, dual_order)``: the last ``n_dual`` variables are
    truncated separately at ``dual_order`` and excluded from ``order``.
    """

    __slots__ = ("dual", "nvars", "order", "prefix", "terms")

    def __init__(
        self,
        nvars: int,
        order: int,
        terms: Mapping[tuple, object] | None = None,
        prefix: Sequence | None = None,
        dual: tuple[int, int] | None = None,
    ):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.nvars = nvars
        self.order = order
        self.dual = dual
        self.prefix = _normalize_prefix(prefix, nvars)
        kept = {}
        if terms:
            for k, c in terms.items():
                k = tuple(k)
                if len(k) != nvars or min(k, default=0) < 0:
                    raise ValueError(f"bad exponent {k} for {nvars} variables")
                if c and self._fits(k):
                    kept[k] = scalar(c)
        self.terms = kept

    # -- construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, nvars, order, terms, prefix, dual):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.order = order
        obj.terms = terms
        obj.prefix = prefix
        obj.dual = dual
        return obj

    @classmethod
    def one(cls, nvars: int, order: int, dual=None) -> TruncatedSeries:
        return cls._raw(nvars, order, {(0,) * nvars: ONE}, None, dual)

    @classmethod
    def zero(cls, nvars: int, order: int, prefix=None, dual=None) -> TruncatedSeries:
        return cls._raw(nvars, order, {}, _normalize_prefix(prefix, nvars), dual)

    @classmethod
    def constant(cls, c, nvars: int, order: int, dual=None) -> TruncatedSeries:
        c = scalar(c)
        return cls._raw(nvars, order, {(0,) * nvars: c} if c else {}, None, dual)

    @classmethod
    def monomial(cls, exponent, nvars: int, order: int, coeff=1, dual=None):
        return cls(nvars, order, {tuple(exponent): coeff}, dual=dual)

    # -- degree bookkeeping ---------------------------------------------------

    def _split(self) -> int:
        return self.nvars - self.dual[0] if self.dual else self.nvars

    def degrees(self, k) -> tuple[int, int]:
        s = self._split()
        return sum(k[:s]), sum(k[s:])

    def _fits(self, k) -> bool:
        if self.dual is None:
            return sum(k) <= self.order
        d1, d2 = self.degrees(k)
        return d1 <= self.order and d2 <= self.dual[1]

    def _check_compatible(self, other: TruncatedSeries):
        if self.nvars != other.nvars:
            raise ValueError("series in different numbers of variables")
        if (self.dual is None) != (other.dual is None) or (
            self.dual and self.dual[0] != other.dual[0]
        ):
            raise ValueError("series with different variable blocks")

    def _min_dual(self, other):
        if self.dual is None:
            return None
        return (self.dual[0], min(self.dual[1], other.dual[1]))

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + TruncatedSeries.constant(other, self.nvars, self.order, self.dual)
        self._check_compatible(other)
        if self.prefix != other.prefix:
            raise ValueError(f"prefix mismatch: {self.prefix} vs {other.prefix}")
        order = min(self.order, other.order)
        dual = self._min_dual(other)
        out = TruncatedSeries._raw(self.nvars, order, {}, self.prefix, dual)
        terms = {k: c for k, c in self.terms.items() if out._fits(k)}
        for k, c in other.terms.items():
            if not out._fits(k):
                continue
            v = terms.get(k, ZERO) + c
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(
            self.nvars, self.order, {k: -c for k, c in self.terms.items()}, self.prefix, self.dual
        )

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> TruncatedSeries:
        c = scalar(c)
        if not c:
            return TruncatedSeries._raw(self.nvars, self.order, {}, self.prefix, self.dual)
        return TruncatedSeries._raw(
            self.nvars, self.order, {k: v * c for k, v in self.terms.items()}, self.prefix, self.dual
        )

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check_compatible(other)
        order = min(self.order, other.order)
        dual = self._min_dual(other)
        prefix = _add_prefix(self.prefix, other.prefix, self.nvars)
        out = TruncatedSeries._raw(self.nvars, order, {}, prefix, dual)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        split = out._split()
        b_items = sorted(
            ((k, c, sum(k[:split]), sum(k[split:])) for k, c in b.items()), key=lambda e: e[2]
        )
        dcap = dual[1] if dual else 0
        terms: dict = {}
        get = terms.get
        for ka, ca in a.items():
            da, ea = sum(ka[:split]), sum(ka[split:])
            lim = order - da
            elim = dcap - ea
            if lim < 0 or elim < 0:
                continue
            for kb, cb, db, eb in b_items:
                if db > lim:
                    break
                if eb > elim:
                    continue
                k = tuple(map(add, ka, kb))
                terms[k] = get(k, ZERO) + ca * cb
        out.terms = {k: c for k, c in terms.items() if c}
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.one(self.nvars, self.order, self.dual)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> TruncatedSeries:
        """Multiplicative inverse; requires a nonzero constant term."""
        if self.prefix is not None:
            raise ValueError("inverse of a prefixed series")
        c0 = self.constant_term()
        if not c0:
            raise PoleError("series with vanishing constant term is not invertible")
        # 1/(c0(1 - g)) = (1/c0) * sum g^k, g has no constant term
        g = (TruncatedSeries.constant(1, self.nvars, self.order, self.dual) - self.scale(1 / c0))
        total = TruncatedSeries.one(self.nvars, self.order, self.dual)
        power = total
        cap = self.order + (self.dual[1] if self.dual else 0)
        for _ in range(cap):
            power = power * g
            if not power.terms:
                break
            total = total + power
        return total.scale(1 / c0)

    # -- inspection -----------------------------------------------------------

    def constant_term(self) -> mpq:
        return self.terms.get((0,) * self.nvars, ZERO)

    def coefficient(self, k) -> mpq:
        return self.terms.get(tuple(k), ZERO)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.order == other.order
            and self.dual == other.dual
            and self.prefix == other.prefix
            and self.terms == other.terms
        )

    def __repr__(self):
        body = " + ".join(f"{c}*z^{k}" for k, c in sorted_terms(self)[:8])
        more = " + ..." if len(self.terms) > 8 else ""
        pre = f"x^{tuple(str(p) for p in self.prefix)} * " if self.prefix else ""
        return f"TruncatedSeries({pre}[{body or '0'}{more}] + O(deg {self.order + 1}))"

    def __len__(self):
        return len(self.terms)

    # -- structural maps ------------------------------------------------------

    def truncate(self, order: int, dual_order: int | None = None) -> TruncatedSeries:
        order = min(order, self.order)
        dual = self.dual
        if dual is not None and dual_order is not None:
            dual = (dual[0], min(dual[1], dual_order))
        out = TruncatedSeries._raw(self.nvars, order, {}, self.prefix, dual)
        out.terms = {k: c for k, c in self.terms.items() if out._fits(k)}
        return out

    def with_prefix(self, prefix) -> TruncatedSeries:
        return TruncatedSeries._raw(
            self.nvars, self.order, dict(self.terms), _normalize_prefix(prefix, self.nvars), self.dual
        )

    def shift(self, exponent, coeff=1) -> TruncatedSeries:
        """Multiply by ``coeff * z**exponent``; the order is unchanged."""
        exponent = tuple(exponent)
        coeff = scalar(coeff)
        out = TruncatedSeries._raw(self.nvars, self.order, {}, self.prefix, self.dual)
        terms = {}
        for k, c in self.terms.items():
            k2 = tuple(map(add, k, exponent))
            if out._fits(k2) and coeff:
                terms[k2] = c * coeff
        out.terms = terms
        return out

    def map_coefficients(self, weight: Callable[[tuple], object]) -> TruncatedSeries:
        """Multiply the coefficient of ``z**k`` by ``weight(k)``."""
        terms = {}
        for k, c in self.terms.items():
            v = c * weight(k)
            if v:
                terms[k] = v
        return TruncatedSeries._raw(self.nvars, self.order, terms, self.prefix, self.dual)

    def select(self, keep: Callable[[tuple], bool]) -> TruncatedSeries:
        return TruncatedSeries._raw(
            self.nvars, self.order, {k: c for k, c in self.terms.items() if keep(k)}, self.prefix, self.dual
        )

    def permute(self, perm: Sequence[int]) -> TruncatedSeries:
        """New series whose variable ``i`` is old variable ``perm[i]``."""
        terms = {tuple(k[p] for p in perm): c for k, c in self.terms.items()}
        return TruncatedSeries._raw(self.nvars, self.order, terms, self.prefix, self.dual)

    def swap_blocks(self) -> TruncatedSeries:
        """Exchange the primary and dual variable blocks (equal sizes required)."""
        if self.dual is None or 2 * self.dual[0] != self.nvars:
            raise ValueError("swap_blocks needs two blocks of equal size")
        n = self.dual[0]
        terms = {k[n:] + k[:n]: c for k, c in self.terms.items()}
        out = TruncatedSeries._raw(self.nvars, self.dual[1], {}, self.prefix, (n, self.order))
        out.terms = terms
        return out


def _add_prefix(a, b, nvars):
    if a is None:
        return b
    if b is None:
        return a
    return _normalize_prefix(tuple(x + y for x, y in zip(a, b)), nvars)


def graded_lex_key(k: tuple):
    return (sum(k), tuple(-e for e in k))


def sorted_terms(f: TruncatedSeries) -> list[tuple[tuple, mpq]]:
    """Terms in graded-lex order (by degree, then lexicographically largest first)."""
    return sorted(f.terms.items(), key=lambda kc: graded_lex_key(kc[0]))


def first_discrepancy(a: TruncatedSeries, b: TruncatedSeries):
    """First (exponent, a-coeff, b-coeff) where the term maps differ, else None.

    Both series are compared only up to their common order.
    """
    if a.prefix != b.prefix:
        return ("prefix", a.prefix, b.prefix)
    order = min(a.order, b.order)
    dual_order = None
    if a.dual:
        dual_order = min(a.dual[1], b.dual[1])
    at = a.truncate(order, dual_order)
    bt = b.truncate(order, dual_order)
    keys = sorted(set(at.terms) | set(bt.terms), key=graded_lex_key)
    for k in keys:
        ca, cb = at.coefficient(k), bt.coefficient(k)
        if ca != cb:
            return (k, ca, cb)
    return None


def sum_series(items: Iterable[TruncatedSeries], nvars: int, order: int, prefix=None, dual=None):
    """Sum of series, merging term maps in place."""
    out = TruncatedSeries.zero(nvars, order, prefix, dual)
    terms = out.terms
    for f in items:
        if f.prefix != out.prefix:
            raise ValueError("prefix mismatch in sum")
        for k, c in f.terms.items():
            if out._fits(k):
                terms[k] = terms.get(k, ZERO) + c
    out.terms = {k: c for k, c in terms.items() if c}
    return out


# -- expansion primitives -----------------------------------------------------


def geometric_expand(c, m, order: int, dual=None) -> TruncatedSeries:
    """``1/(1 - c z**m)`` as a series, for a monomial ``m`` of positive degree."""
    m = tuple(m)
    c = scalar(c)
    if sum(m) == 0:
        if c == 1:
            raise PoleError("1/(1 - z^0) has a pole at the expansion point")
        raise ValueError("monomial of degree 0 gives a scalar, not a series")
    out = TruncatedSeries.one(len(m), order, dual)
    terms = out.terms
    k, coeff = 1, c
    while coeff:
        e = tuple(k * x for x in m)
        if not out._fits(e):
            break
        terms[e] = coeff
        k += 1
        coeff *= c
    return out


def binomial_factor(c, m, order: int, dual=None) -> TruncatedSeries:
    """``1 - c z**m``."""
    m = tuple(m)
    out = TruncatedSeries.one(len(m), order, dual)
    if sum(m) == 0:
        return TruncatedSeries.constant(1 - scalar(c), len(m), order, dual)
    c = scalar(c)
    if c and out._fits(m):
        out.terms[m] = -c
    return out


def ratio_expand(a, b, m, order: int, dual=None) -> TruncatedSeries:
    """``(1 - a z**m)/(1 - b z**m)`` = 1 + (b - a) sum_{k>=1} b**(k-1) z**(km)."""
    m = tuple(m)
    a, b = scalar(a), scalar(b)
    out = TruncatedSeries.one(len(m), order, dual)
    if sum(m) == 0:
        if b == 1:
            raise PoleError("ratio with vanishing constant denominator")
        return TruncatedSeries.constant((1 - a) / (1 - b), len(m), order, dual)
    coeff = b - a
    k = 1
    while coeff:
        e = tuple(k * x for x in m)
        if not out._fits(e):
            break
        out.terms[e] = coeff
        coeff *= b
        k += 1
    return out


def poch_ratio_expand(a, b, q, m, order: int, dual=None) -> TruncatedSeries:
    """``(a z**m; q)_inf / (b z**m; q)_inf`` via the q-binomial theorem.

    The coefficient of ``z**(k m)`` is ``prod_{j<k} (b - a q**j)/(1 - q**(j+1))``.
    """
    m = tuple(m)
    if sum(m) == 0:
        raise ValueError("poch_ratio_expand needs a monomial of positive degree")
    a, b, q = scalar(a), scalar(b), scalar(q)
    out = TruncatedSeries.one(len(m), order, dual)
    coeff = ONE
    k = 0
    qk = ONE  # q**k
    while True:
        denom = 1 - qk * q
        if not denom:
            raise PoleError("q is a root of unity")
        coeff = coeff * (b - a * qk) / denom
        k += 1
        qk *= q
        if not coeff:
            break
        e = tuple(k * x for x in m)
        if not out._fits(e):
            break
        out.terms[e] = coeff
    return out


def qpoch_series(c, q, length: int, m, order: int, dual=None) -> TruncatedSeries:
    """Finite Pochhammer ``(c z**m; q)_length`` as a polynomial series."""
    out = TruncatedSeries.one(len(m), order, dual)
    c, q = scalar(c), scalar(q)
    for n in range(length):
        out = out * binomial_factor(c * q**n, m, order, dual)
    return out


def theta_ratio_expand(u, i: int, j: int, N: int, order: int, route: str = "product"):
    """``theta(u x_i/x_j; p) / theta(x_i/x_j; p)`` in the cyclic chart.

    Variables are ``z_k = x_{k+1}/x_k`` (k < N) and ``z_N = p x_1/x_N``, so
    ``p = z_1 ... z_N``.  Indices ``i, j`` are 1-based, distinct, in ``1..N``.
    For ``i < j`` the flip ``theta(u/w) / theta(1/w) = u theta(w/u) / theta(w)``
    brings the ratio to a positive monomial ``w = x_j/x_i``.

    ``route='product'`` multiplies the truncated product factors,
    ``route='triple'`` divides the two Jacobi triple-product sums.
    """
    if i == j or not (1 <= i <= N and 1 <= j <= N):
        raise ValueError("need distinct indices in 1..N")
    u = scalar(u)
    if not u:
        raise PoleError("theta ratio at u = 0")
    if i > j:
        c, pre, lo, hi = u, ONE, j, i
    else:
        c, pre, lo, hi = 1 / u, u, i, j
    w = chart_monomial(lo, hi, N)  # x_hi / x_lo
    pw = chart_monomial(hi, lo + N, N)  # p x_lo / x_hi
    if route == "product":
        body = _theta_product(c, w, pw, N, order)
    elif route == "triple":
        body = _theta_triple(c, w, pw, N, order) * _theta_triple(ONE, w, pw, N, order).inverse()
    else:
        raise ValueError(f"unknown route {route!r}")
    return body.scale(pre)


def _theta_product(c, w, pw, N, order):
    # theta(c w)/theta(w) = prod_n (1 - c w p^n)(1 - p^n pw / c) / ((1 - w p^n)(1 - p^n pw))
    p = (1,) * N
    out = TruncatedSeries.one(N, order)
    n = 0
    while True:
        a = tuple(x + n * y for x, y in zip(w, p))
        b = tuple(x + n * y for x, y in zip(pw, p))
        if sum(a) > order and sum(b) > order:
            break
        out = out * ratio_expand(c, 1, a, order) * ratio_expand(1 / c, 1, b, order)
        n += 1
    return out


def _theta_triple(c, w, pw, N, order):
    # sum_{n in Z} (-1)^n p^{n(n-1)/2} (c w)^n, written with positive monomials:
    # n >= 0: p^{n(n-1)/2} w^n ; n = -m < 0: p^{m(m-1)/2} pw^m.
    p = (1,) * N
    terms = {}
    for sign in (1, -1):
        n = 0 if sign == 1 else 1
        while True:
            tri = n * (n - 1) // 2
            base = w if sign == 1 else pw
            e = tuple(tri * a + n * b for a, b in zip(p, base))
            if sum(e) > order:
                break
            coeff = (-1) ** n * (c**n if sign == 1 else c ** (-n))
            terms[e] = terms.get(e, ZERO) + coeff
            n += 1
    return TruncatedSeries(N, order, terms)


def chart_monomial(i: int, k: int, N: int) -> tuple:
    """Exponent vector of ``x_k / x_i`` (``k >= i``, extended indices) in the cyclic chart.

    ``x_k/x_i = z_i z_{i+1} ... z_{k-1}`` with indices taken mod N, so that
    ``x_{i+N} = p x_i`` is automatic.
    """
    if k < i:
        raise ValueError("chart_monomial needs k >= i")
    e = [0] * N
    for m in range(i, k):
        e[(m - 1) % N] += 1
    return tuple(e)


def x_exponent(alpha: Sequence[int]) -> tuple:
    """x-exponent ``mu`` of the chart monomial ``z**alpha`` (p carries no x-weight)."""
    N = len(alpha)
    return tuple(alpha[(i - 1) % N] - alpha[i] for i in range(N))
