"""Rank factorization of P(x+y) by low-degree-side grouping.

Hand-expanded factorizations are frozen for the smallest cases, the
binomial reduction is checked against repeated polynomial
multiplication, and factorizations are compared entry-wise with the
directly built matrix.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from nonrigid import (
    BudgetExceededError,
    DimensionMismatchError,
    Polynomial,
    build_matrix,
    low_degree_split,
    count_monomials,
    decode_point,
    enumerate_monomials,
    eval_factorization,
    make_field,
    materialize,
    matmul,
    monomial,
    random_values,
    to_table,
)


def random_poly(q, n, d, seed):
    field = make_field(q)
    monos = list(enumerate_monomials(q, n, d))
    coeffs = random_values(q, len(monos), seed)
    return Polynomial(field, n, {e: int(c) for e, c in zip(monos, coeffs) if c})


def test_single_variable_hand_factorization():
    # P = x0 over GF(2)^2 with d = 1: split x0 + y0 as 1*y0 + x0*1
    f = make_field(2)
    P = Polynomial(f, 2, {(1, 0): 1})
    F = low_degree_split(P, 1)
    assert F.width == 2
    (g0, h0), (g1, h1) = F.pairs
    assert g0.terms == {(0, 0): 1} and h0.terms == {(1, 0): 1}
    assert g1.terms == {(1, 0): 1} and h1.terms == {(0, 0): 1}


def test_product_term_hand_factorization():
    # P = x0*x1, d = 2: (x0+y0)(x1+y1) expands to four terms; the
    # all-x term routes to the y side since its x part has degree 2 > 1
    f = make_field(2)
    P = Polynomial(f, 2, {(1, 1): 1})
    F = low_degree_split(P, 2)
    assert F.width == 4
    keys = [(g.terms.copy(), h.terms.copy()) for g, h in F.pairs]
    assert keys == [
        ({(0, 0): 1}, {(1, 1): 1}),  # 1 * y0y1
        ({(1, 0): 1}, {(0, 1): 1}),  # x0 * y1
        ({(0, 1): 1}, {(1, 0): 1}),  # x1 * y0
        ({(1, 1): 1}, {(0, 0): 1}),  # x0x1 * 1
    ]


def test_zero_and_constant_polynomials():
    f = make_field(3)
    Z = Polynomial(f, 2, {})
    assert low_degree_split(Z, 2).width == 0
    C = Polynomial(f, 2, {(0, 0): 2})
    F = low_degree_split(C, 0)
    assert F.width == 1
    g, h = F.pairs[0]
    assert g.terms == {(0, 0): 1} and h.terms == {(0, 0): 2}


def test_binomial_reduction_matches_repeated_multiplication():
    # coefficients of (x+y)^a in GF(q)[x, y] via convolution vs comb mod p
    for q in (2, 3, 5, 7):
        p = make_field(q).p
        for a in range(q):
            coeffs = [1]
            for _ in range(a):
                nxt = [0] * (len(coeffs) + 1)
                for i, c in enumerate(coeffs):
                    nxt[i] = (nxt[i] + c) % p
                    nxt[i + 1] = (nxt[i + 1] + c) % p
                coeffs = nxt
            assert coeffs == [math.comb(a, b) % p for b in range(a + 1)]


@pytest.mark.parametrize("q,n", [(2, 4), (3, 3), (4, 2), (5, 2)])
def test_exactness_exhaustive(q, n):
    field = make_field(q)
    N = q**n
    for d in range(0, (q - 1) * n + 1):
        for trial in range(3):
            P = random_poly(q, n, d, 97 * d + trial)
            F = low_degree_split(P, d)
            assert F.width <= 2 * count_monomials(q, n, d // 2)
            A, B = materialize(F)
            assert matmul(A, B) == build_matrix(to_table(P), budget=N)
            # spot scalar evaluations through the pair list itself
            for xi, yi in [(0, 0), (1, N - 1), (N // 2, 3 % N)]:
                x, y = decode_point(xi, q, n), decode_point(yi, q, n)
                s = tuple(field.add(a, b) for a, b in zip(x, y))
                assert eval_factorization(F, x, y) == P.eval(s)


def test_width_reflects_cancellation():
    # over GF(2), (x+y)^2 = x^2 + y^2: the cross term vanishes, so the
    # factorization of x0^2... use GF(4) where squares stay reduced
    f = make_field(4)
    P = Polynomial(f, 1, {(2,): 1})
    F = low_degree_split(P, 2)
    # (x+y)^2 = x^2 + 2xy + y^2 and 2 = 0 in characteristic 2
    assert F.width == 2
    for x in range(4):
        for y in range(4):
            s = (f.add(x, y),)
            assert eval_factorization(F, (x,), (y,)) == P.eval(s)


def test_degree_validation():
    f = make_field(3)
    P = Polynomial(f, 2, {(2, 1): 1})
    with pytest.raises(ValueError):
        low_degree_split(P, 2)  # degree 3 > d
    with pytest.raises(ValueError):
        low_degree_split(P, 5)  # d beyond (q-1)n


def test_eval_factorization_shape_check():
    f = make_field(2)
    F = low_degree_split(Polynomial(f, 2, {(1, 0): 1}), 1)
    with pytest.raises(DimensionMismatchError):
        eval_factorization(F, (1,), (0, 1))


def test_materialize_budget():
    f = make_field(2)
    P = random_poly(2, 8, 4, 5)
    F = low_degree_split(P, 4)
    with pytest.raises(BudgetExceededError):
        materialize(F, budget=100)


def test_materialize_factor_shapes():
    P = random_poly(3, 2, 3, 8)
    F = low_degree_split(P, 3)
    A, B = materialize(F)
    assert A.shape == (9, F.width)
    assert B.shape == (F.width, 9)
    for i, (g, h) in enumerate(F.pairs):
        assert np.array_equal(A.data[:, i], to_table(g).values)
        assert np.array_equal(B.data[i, :], to_table(h).values)


def reference_pairs(P, d):
    """Independent reconstruction of the grouped expansion.

    Mirrors the documented construction from first principles: expand
    each term of P over all exponent splits, route splits with small x
    part to the x side (ties included), and emit x-keyed pairs before
    y-keyed pairs, each group in monomial order.
    """
    from nonrigid.space import monomial_sort_key

    field, n, half = P.field, P.n, d // 2
    xg: dict = {}
    yg: dict = {}
    for a, ca in P.terms.items():
        for b in itertools.product(*(range(ai + 1) for ai in a)):
            c = tuple(ai - bi for ai, bi in zip(a, b))
            binom = 1
            for ai, bi in zip(a, b):
                binom = binom * math.comb(ai, bi)
            w = field.mul(ca, binom % field.p)
            if w == 0:
                continue
            if sum(b) <= half:
                xg.setdefault(b, {})[c] = field.add(xg.get(b, {}).get(c, 0), w)
            else:
                yg.setdefault(c, {})[b] = field.add(yg.get(c, {}).get(b, 0), w)
    out = []
    for b in sorted(xg, key=monomial_sort_key):
        terms = {e: v for e, v in xg[b].items() if v}
        if terms:
            out.append(({b: 1}, terms))
    for c in sorted(yg, key=monomial_sort_key):
        terms = {e: v for e, v in yg[c].items() if v}
        if terms:
            out.append((terms, {c: 1}))
    return out


@pytest.mark.parametrize("q,n,d", [(2, 3, 2), (3, 3, 4), (4, 2, 3), (9, 1, 8)])
def test_pairs_match_reference_reconstruction(q, n, d):
    for trial in range(4):
        P = random_poly(q, n, d, 55 * trial + d)
        F = low_degree_split(P, d)
        got = [(dict(g.terms), dict(h.terms)) for g, h in F.pairs]
        assert got == reference_pairs(P, d)
