"""Canonical encodings and combinatorics of the point/monomial spaces.

Points of GF(q)^n and exponent vectors of reduced monomials (every
exponent <= q-1) share one integer encoding: little-endian base q,
index = sum coords[i] * q^i.  Monomial counts m_d(q, n) = #{exponent
vectors with sum <= d} are computed exactly by dynamic programming on
the coefficients of (1 + t + ... + t^(q-1))^n; Python integers make the
counts exact at any size, so there is no overflow regime.

The enumeration order of monomials is fixed once and used everywhere
downstream (spanning-row selection, coefficient vectors, file formats):
ascending total degree, and within a degree descending lexicographic on
the exponent tuple, so x1 sorts before x2.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DimensionMismatchError
from .field import Field


# -- point encoding ----------------------------------------------------------


def encode_point(coords: Sequence[int], q: int) -> int:
    """Little-endian base-q index of a coordinate vector."""
    index = 0
    for c in reversed(coords):
        index = index * q + c
    return index


def decode_point(index: int, q: int, n: int) -> tuple[int, ...]:
    """Inverse of encode_point; raises ValueError outside [0, q^n)."""
    if not 0 <= index < q**n:
        raise ValueError(f"point index {index} out of range for q={q}, n={n}")
    coords = []
    for _ in range(n):
        index, c = divmod(index, q)
        coords.append(c)
    return tuple(coords)


def add_points(a: Sequence[int], b: Sequence[int], field: Field) -> tuple[int, ...]:
    """Coordinatewise field addition."""
    if len(a) != len(b):
        raise DimensionMismatchError(f"point lengths differ: {len(a)} vs {len(b)}")
    table = field.add_table
    return tuple(int(table[x, y]) for x, y in zip(a, b))


# -- monomial counting -------------------------------------------------------


@dataclass(frozen=True)
class DegreeProfile:
    """Cumulative monomial counts: counts[d] = m_d(q, n) for d = 0..(q-1)n."""

    q: int
    n: int
    counts: tuple[int, ...]

    @property
    def max_degree(self) -> int:
        return (self.q - 1) * self.n


@functools.lru_cache(maxsize=None)
def degree_profile(q: int, n: int) -> DegreeProfile:
    """Exact m_d(q, n) for every d, via iterated window convolution.

    Convolving with (1, 1, ..., 1) of length q is a sliding-window sum,
    so each variable costs O((q-1)n) big-int additions.
    """
    if q < 2 or n < 0:
        raise ValueError(f"need q >= 2 and n >= 0, got q={q}, n={n}")
    hist = [1]  # coefficient list of the generating polynomial so far
    for _ in range(n):
        prefix = [0]
        for c in hist:
            prefix.append(prefix[-1] + c)
        top = len(hist) + q - 2
        new = []
        for j in range(top + 1):
            hi = min(j, len(hist) - 1)
            lo = max(0, j - q + 1)
            new.append(prefix[hi + 1] - prefix[lo])
        hist = new
    counts = []
    running = 0
    for c in hist:
        running += c
        counts.append(running)
    return DegreeProfile(q=q, n=n, counts=tuple(counts))


def count_monomials(q: int, n: int, d: int) -> int:
    """m_d(q, n): reduced monomials in n variables of total degree <= d."""
    profile = degree_profile(q, n)
    if not 0 <= d <= profile.max_degree:
        raise ValueError(f"degree {d} out of range [0, {profile.max_degree}]")
    return profile.counts[d]


def enumerate_monomials(q: int, n: int, d: int) -> Iterator[tuple[int, ...]]:
    """Exponent tuples with entries <= q-1 and sum <= d, in canonical order.

    Order: total degree ascending, then descending lex on the tuple.
    The sequence length equals count_monomials(q, n, d).
    """
    max_deg = (q - 1) * n
    if not 0 <= d <= max_deg:
        raise ValueError(f"degree {d} out of range [0, {max_deg}]")

    def gen(remaining_vars: int, budget: int) -> Iterator[tuple[int, ...]]:
        if remaining_vars == 0:
            if budget == 0:
                yield ()
            return
        low = max(0, budget - (q - 1) * (remaining_vars - 1))
        for e in range(min(q - 1, budget), low - 1, -1):
            for rest in gen(remaining_vars - 1, budget - e):
                yield (e,) + rest

    for degree in range(d + 1):
        yield from gen(n, degree)


def monomial_sort_key(exponents: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sort key reproducing the enumerate_monomials order."""
    return (sum(exponents), tuple(-e for e in exponents))


def min_degree_for_agreement(q: int, n: int, t: int) -> int:
    """Smallest d with q^n - m_d(q, n) <= t.

    Equals (q-1)n when t = 0 and is nonincreasing in t.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    profile = degree_profile(q, n)
    total = q**n
    for d, m in enumerate(profile.counts):
        if total - m <= t:
            return d
    raise AssertionError("unreachable: deficit at full degree is 0")


# -- entropy diagnostics -----------------------------------------------------


def binary_entropy(x: float) -> float:
    """H(x) = -x log2 x - (1-x) log2 (1-x), with H(0) = H(1) = 0."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def entropy_delta(q: int, eps: float) -> float:
    """Largest delta in (0, 1/2) with H(delta) * (q-1) <= eps * log2(q).

    Bisection on the monotone restriction of H to (0, 1/2).  The
    bisection runs to 1e-12 in delta so the returned value sits within
    1e-9 of the bound from below (the slope of H near any interior root
    is a small constant).  This is a diagnostic companion to the exact
    counting route; the main pipeline never uses it for degree choice.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    target = eps * math.log2(q) / (q - 1)
    if target >= 1.0:
        return 0.5
    lo, hi = 0.0, 0.5
    while hi - lo > 1e-12:
        mid = (lo + hi) / 2.0
        if binary_entropy(mid) <= target:
            lo = mid
        else:
            hi = mid
    return lo


def binary_embedding_holds(q: int, n: int, d: int) -> bool:
    """Check m_d(q, n) <= m_d(2, n(q-1)).

    Holds for every valid input (each degree-d monomial maps injectively
    to a multilinear one on n(q-1) variables); exposed as a regression
    guard on the counting DP.
    """
    return count_monomials(q, n, d) <= count_monomials(2, n * (q - 1), d)
