"""Partitions, multipartitions and the theta-matrix index sets.

All enumerations are graded by weight and lexicographic (largest first)
inside a grade, so every stream is deterministic.

A theta matrix is stored sparsely as ``{(i, k): value}`` with 1-based
``i < k``.  For the N-periodic matrices only rows ``1..N`` are stored;
``theta[i + N, k + N] == theta[i, k]`` is applied on lookup.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from itertools import product


class Partition(tuple):
    """Weakly decreasing tuple of positive ints; ``part(k)`` is 1-based and 0 past the end."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    def part(self, k: int) -> int:
        return self[k - 1] if 1 <= k <= len(self) else 0

    @property
    def weight(self) -> int:
        return sum(self)

    def __repr__(self):
        return f"Partition({tuple(self)})"


class MultiPartition(tuple):
    """N-tuple of partitions, read cyclically: ``component(i + N) == component(i)``."""

    def __new__(cls, components: Sequence[Sequence[int]]):
        return super().__new__(cls, tuple(Partition(c) for c in components))

    @property
    def N(self) -> int:
        return len(self)

    def component(self, i: int) -> Partition:
        return self[(i - 1) % len(self)]

    def part(self, i: int, k: int) -> int:
        """``lambda^{(i)}_k`` with cyclic ``i``."""
        return self[(i - 1) % len(self)].part(k)

    @property
    def weight(self) -> int:
        return sum(p.weight for p in self)

    def __repr__(self):
        return f"MultiPartition({[tuple(p) for p in self]})"


class ThetaMatrix:
    """Strictly upper triangular nonnegative integer matrix, finite (``periodic=False``)
    or N-periodic with band representatives in rows ``1..N``."""

    __slots__ = ("N", "_hash", "entries", "periodic")

    def __init__(self, N: int, entries: Mapping[tuple[int, int], int] | None = None, periodic=False):
        self.N = N
        self.periodic = periodic
        clean = {}
        for (i, k), v in (entries or {}).items():
            if v < 0:
                raise ValueError("negative theta entry")
            if not v:
                continue
            if k <= i:
                raise ValueError(f"entry ({i},{k}) is not strictly upper triangular")
            if periodic:
                shift = (i - 1) // N * N
                i, k = i - shift, k - shift
            elif not (1 <= i and k <= N):
                raise ValueError(f"entry ({i},{k}) outside the {N}x{N} block")
            clean[(i, k)] = clean.get((i, k), 0) + v if periodic else v
        self.entries = clean
        self._hash = None

    def __getitem__(self, ik) -> int:
        i, k = ik
        if k <= i:
            return 0
        if self.periodic:
            shift = (i - 1) // self.N * self.N
            i, k = i - shift, k - shift
        return self.entries.get((i, k), 0)

    @property
    def zdegree(self) -> int:
        return sum(v * (k - i) for (i, k), v in self.entries.items())

    def width(self) -> int:
        """Largest ``k - i`` among nonzero entries (0 for the zero matrix)."""
        return max((k - i for i, k in self.entries), default=0)

    def in_block(self) -> bool:
        return all(k <= self.N for _, k in self.entries)

    def as_finite(self) -> ThetaMatrix:
        if not self.in_block():
            raise ValueError("matrix has entries outside the N x N block")
        return ThetaMatrix(self.N, self.entries)

    def as_periodic(self) -> ThetaMatrix:
        return ThetaMatrix(self.N, self.entries, periodic=True)

    def _key(self):
        return (self.N, self.periodic, tuple(sorted(self.entries.items())))

    def __eq__(self, other):
        return isinstance(other, ThetaMatrix) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        kind = "periodic" if self.periodic else "finite"
        return f"ThetaMatrix(N={self.N}, {kind}, {dict(sorted(self.entries.items()))})"


# -- enumeration ---------------------------------------------------------------


def partitions_of(n: int, largest: int | None = None) -> Iterator[Partition]:
    """Partitions of ``n`` with parts at most ``largest``, lexicographically decreasing."""
    if largest is None:
        largest = n

    def rec(n, cap):
        if n == 0:
            yield ()
            return
        for first in range(min(n, cap), 0, -1):
            for rest in rec(n - first, first):
                yield (first,) + rest

    for parts in rec(n, largest):
        yield Partition(parts)


def enumerate_partitions(max_weight: int) -> Iterator[Partition]:
    for n in range(max_weight + 1):
        yield from partitions_of(n)


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``n`` into ``k`` parts, lexicographically decreasing."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def multipartitions_of(N: int, n: int) -> Iterator[MultiPartition]:
    for weights in compositions(n, N):
        for comps in product(*(list(partitions_of(w)) for w in weights)):
            yield MultiPartition(comps)


def enumerate_multipartitions(N: int, max_weight: int) -> Iterator[MultiPartition]:
    if N < 1:
        raise ValueError("N must be positive")
    for n in range(max_weight + 1):
        yield from multipartitions_of(N, n)


def _weighted_vectors(weights: Sequence[int], total: int) -> Iterator[tuple[int, ...]]:
    """Nonnegative vectors ``v`` with ``sum(v_j * weights[j]) == total``, lex decreasing."""
    if not weights:
        if total == 0:
            yield ()
        return
    w, rest = weights[0], weights[1:]
    for v in range(total // w, -1, -1):
        for tail in _weighted_vectors(rest, total - v * w):
            yield (v,) + tail


def _theta_positions(N: int, max_zdegree: int, periodic: bool) -> list[tuple[int, int]]:
    if periodic:
        return [(i, k) for i in range(1, N + 1) for k in range(i + 1, i + max_zdegree + 1)]
    return [(i, k) for i in range(1, N + 1) for k in range(i + 1, N + 1)]


def _enumerate(N, max_zdegree, periodic):
    if N < 1:
        raise ValueError("N must be positive")
    positions = _theta_positions(N, max_zdegree, periodic)
    weights = [k - i for i, k in positions]
    for d in range(max_zdegree + 1):
        for v in _weighted_vectors(weights, d):
            yield ThetaMatrix(N, {pos: x for pos, x in zip(positions, v) if x}, periodic)


def enumerate_theta(N: int, max_zdegree: int) -> Iterator[ThetaMatrix]:
    """Finite strictly upper triangular N x N matrices of z-degree at most ``max_zdegree``."""
    return _enumerate(N, max_zdegree, False)


def enumerate_periodic_theta(N: int, max_zdegree: int) -> Iterator[ThetaMatrix]:
    """N-periodic matrices of z-degree at most ``max_zdegree`` (band width = max_zdegree)."""
    return _enumerate(N, max_zdegree, True)


# -- the theta <-> multipartition bijection -------------------------------------


def theta_to_multipartition(theta: ThetaMatrix) -> MultiPartition:
    """``lambda^{(i)}_m = sum_{a >= i + m} theta_{i a}``."""
    N = theta.N
    comps = []
    for i in range(1, N + 1):
        row = {k: v for (a, k), v in theta.entries.items() if a == i}
        width = max((k - i for k in row), default=0)
        parts = [sum(v for k, v in row.items() if k >= i + m) for m in range(1, width + 1)]
        comps.append(parts)
    return MultiPartition(comps)


def multipartition_to_theta(lam: MultiPartition) -> ThetaMatrix:
    """``theta_{i k} = lambda^{(i)}_{k-i} - lambda^{(i)}_{k-i+1}``."""
    N = lam.N
    entries = {}
    for i in range(1, N + 1):
        comp = lam.component(i)
        for m in range(1, len(comp) + 1):
            v = comp.part(m) - comp.part(m + 1)
            if v:
                entries[(i, i + m)] = v
    return ThetaMatrix(N, entries, periodic=True)


def partition_counts(max_weight: int) -> list[int]:
    """Number of partitions of each weight, via the pentagonal-number recurrence."""
    p = [1] + [0] * max_weight
    for n in range(1, max_weight + 1):
        k, total = 1, 0
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p
