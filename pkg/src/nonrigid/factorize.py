"""Explicit low-rank factorization of translation matrices of a polynomial.

For P of degree at most d, the q^n x q^n matrix with entries P(x+y)
factors as a sum of at most 2 * m_{floor(d/2)}(q, n) products
g_i(x) * h_i(y): expand every monomial x^a of P via
(x+y)^a = sum over b <= a of binom(a, b) x^b y^(a-b); each expansion
term has degree at most floor(d/2) on at least one side, so route it to
the side where that holds and collect terms sharing the same low-degree
part.  Terms whose x-part is small always go to the x-side (even when
both sides are small) so the output is canonical: x-keyed pairs in
monomial order first, then y-keyed pairs.

Width of the result certifies the rank bound; materialize() turns the
pair list into an explicit N x R times R x N product for exact rank
checks downstream.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BudgetExceededError, DimensionMismatchError
from .field import Field
from .linalg import Matrix
from .poly import Polynomial, monomial, to_table
from .space import count_monomials, monomial_sort_key

MATERIALIZE_BUDGET = 1 << 26


@dataclass(frozen=True)
class RankFactorization:
    """Sum-of-products form: entry(x, y) = sum_i g_i(x) * h_i(y)."""

    field: Field
    n: int
    pairs: tuple[tuple[Polynomial, Polynomial], ...]

    @property
    def width(self) -> int:
        return len(self.pairs)


def low_degree_split(P: Polynomial, d: int) -> RankFactorization:
    """Factor the matrix (x, y) -> P(x+y) with width <= 2*m_{floor(d/2)}.

    Requires degree(P) <= d <= (q-1)n.  Binomial coefficients are tiny
    integers (exponents stay below q), reduced mod the characteristic
    and embedded through the prime subfield.
    """
    field, n = P.field, P.n
    q, p = field.q, field.p
    if d > (q - 1) * n:
        raise ValueError(f"d = {d} exceeds the maximum degree {(q - 1) * n}")
    if P.degree > d:
        raise ValueError(f"polynomial degree {P.degree} exceeds d = {d}")
    half = d // 2

    x_group: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    y_group: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    add = field.add_table
    mul = field.mul_table
    for a, coeff in P.terms.items():
        for b in itertools.product(*(range(ai + 1) for ai in a)):
            binom = 1
            for ai, bi in zip(a, b):
                binom *= math.comb(ai, bi)
            binom %= p
            if binom == 0:
                continue
            w = int(mul[coeff, binom])
            c = tuple(ai - bi for ai, bi in zip(a, b))
            if sum(b) <= half:
                bucket = x_group.setdefault(b, {})
                bucket[c] = int(add[bucket.get(c, 0), w])
            else:
                # sum(c) = deg(a) - sum(b) <= d - half - 1 <= half here
                bucket = y_group.setdefault(c, {})
                bucket[b] = int(add[bucket.get(b, 0), w])

    pairs: list[tuple[Polynomial, Polynomial]] = []
    for b in sorted(x_group, key=monomial_sort_key):
        h_poly = Polynomial(field, n, x_group[b])
        if h_poly.terms:
            pairs.append((monomial(field, n, b), h_poly))
    for c in sorted(y_group, key=monomial_sort_key):
        g_poly = Polynomial(field, n, y_group[c])
        if g_poly.terms:
            pairs.append((g_poly, monomial(field, n, c)))

    width_bound = 2 * count_monomials(q, n, half)
    if len(pairs) > width_bound:
        raise AssertionError(f"width {len(pairs)} exceeds bound {width_bound}")
    return RankFactorization(field=field, n=n, pairs=tuple(pairs))


def eval_factorization(F: RankFactorization, x: Sequence[int], y: Sequence[int]) -> int:
    """sum_i g_i(x) * h_i(y) at one point pair."""
    if len(x) != F.n or len(y) != F.n:
        raise DimensionMismatchError(f"points must have length {F.n}")
    f = F.field
    acc = 0
    for g, h in F.pairs:
        acc = f.add(acc, f.mul(g.eval(x), h.eval(y)))
    return acc


def materialize(F: RankFactorization, budget: int = MATERIALIZE_BUDGET) -> tuple[Matrix, Matrix]:
    """Explicit factors A (N x R) and B (R x N) with A[x, i] = g_i(x),
    B[i, y] = h_i(y); their product is the matrix of (x, y) -> P(x+y).
    """
    N = F.field.q**F.n
    R = F.width
    if N * max(R, 1) > budget:
        raise BudgetExceededError(f"materializing {N}x{R} factors exceeds budget {budget}")
    A = np.zeros((N, R), dtype=np.uint8)
    B = np.zeros((R, N), dtype=np.uint8)
    for i, (g, h) in enumerate(F.pairs):
        A[:, i] = to_table(g).values
        B[i, :] = to_table(h).values
    return Matrix(F.field, A), Matrix(F.field, B)
