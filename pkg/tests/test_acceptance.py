"""Acceptance gate: one test per shipped guarantee, exact tolerances.

Run with ``pytest tests/test_acceptance.py -v`` for one pass/fail line
per criterion.  Each test prints its measured quantities (visible under
``-s`` or on failure), and every numeric check is exact integer
arithmetic unless a runtime or float tolerance is stated inline.
"""

from __future__ import annotations

import itertools
import time
from collections import Counter
from fractions import Fraction

import numpy as np

from nonrigid import (
    FunctionTable,
    Matrix,
    approximate,
    binary_embedding_holds,
    binary_entropy,
    brute_force_rigidity,
    build_matrix,
    build_witness,
    low_degree_split,
    count_monomials,
    entropy_delta,
    enumerate_monomials,
    eval_factorization,
    make_field,
    materialize,
    matmul,
    monomial,
    random_function,
    random_values,
    rank,
    solve,
    supported_orders,
    to_table,
    verify_axioms,
    verify_witness,
)
from nonrigid.poly import Polynomial
from nonrigid.space import add_points, decode_point


def test_criterion_1_end_to_end_witness_q2_n10():
    """q=2, n=10, eps=1/2: d=8, exact rank <= 772, bad <= 11, distance <= 32768, <= 60 s."""
    start = time.perf_counter()
    f = random_function(2, 10, 42)
    w = build_witness(f, Fraction(1, 2))
    report = verify_witness(f, w)
    elapsed = time.perf_counter() - start

    assert w.d == 8
    assert w.rank_bound == 772 == 2 * count_monomials(2, 10, 4)
    assert report.passed, report.failed_checks()
    assert report.exact_rank <= 772
    assert w.bad_count <= 11
    assert report.distance == w.distance == 1024 * w.bad_count
    assert w.distance <= 32768  # N^{1.5} for N = 1024
    assert elapsed <= 60.0
    print(
        f"criterion 1: d={w.d} exact_rank={report.exact_rank} bad={w.bad_count} "
        f"distance={w.distance} elapsed={elapsed:.2f}s"
    )


def test_criterion_2_end_to_end_witness_q3_n5():
    """q=3, n=5, eps=1/2: d=8, rank bound 192 < 243, bad <= 6, exact check, <= 10 s."""
    start = time.perf_counter()
    f = random_function(3, 5, 7)
    w = build_witness(f, Fraction(1, 2))
    report = verify_witness(f, w)
    elapsed = time.perf_counter() - start

    assert w.d == 8
    assert w.rank_bound == 192 == 2 * count_monomials(3, 5, 4)
    assert w.rank_bound < 243 == w.N
    assert w.bad_count <= 6
    assert report.passed, report.failed_checks()
    assert report.exact_rank <= 192
    assert elapsed <= 10.0
    print(
        f"criterion 2: d={w.d} exact_rank={report.exact_rank} bad={w.bad_count} "
        f"elapsed={elapsed:.2f}s"
    )


def test_criterion_3_factorization_exactness():
    """50 random polynomials per (q,n) in {(2,6),(3,4),(4,3)}, all valid d:
    the factorization reproduces P(x+y) on every (x,y) pair with width
    within bound.  All three shapes are checked exhaustively (stronger
    than sampling), plus one scalar-path spot check per (q,n,d)."""
    checked = 0
    for q, n in [(2, 6), (3, 4), (4, 3)]:
        field = make_field(q)
        N = q**n
        for d in range((q - 1) * n + 1):
            monos = list(enumerate_monomials(q, n, d))
            bound = 2 * count_monomials(q, n, d // 2)
            for trial in range(50):
                coeffs = random_values(q, len(monos), seed=(q * 1000 + n * 100 + d) * 64 + trial)
                P = Polynomial(field, n, {m: int(c) for m, c in zip(monos, coeffs) if c})
                F = low_degree_split(P, d)
                assert F.width <= bound, (q, n, d, trial, F.width, bound)
                A, B = materialize(F)
                exact = build_matrix(to_table(P))
                assert matmul(A, B) == exact, (q, n, d, trial)
                checked += 1
            # scalar route once per (q, n, d)
            xi, yi = (int(v) for v in random_values(N, 2, seed=q * 31 + n * 7 + d))
            x, y = decode_point(xi, q, n), decode_point(yi, q, n)
            assert eval_factorization(F, x, y) == P.eval(add_points(x, y, field))
    assert checked == 50 * (7 + 9 + 10)
    print(f"criterion 3: {checked} factorizations verified exhaustively, zero failures")


def test_criterion_4_approximation_bound():
    """200 random functions per (q,n) in {(2,8),(3,4),(5,2)}, all d:
    |bad| <= q^n - m_d, and the monomial evaluation matrix has rank
    exactly m_d."""
    fits = 0
    for q, n in [(2, 8), (3, 4), (5, 2)]:
        field = make_field(q)
        N = q**n
        funcs = [random_function(q, n, seed) for seed in range(200)]
        for d in range((q - 1) * n + 1):
            m_d = count_monomials(q, n, d)
            rows = np.stack(
                [to_table(monomial(field, n, e)).values for e in enumerate_monomials(q, n, d)]
            )
            assert rank(Matrix(field, rows)) == m_d, (q, n, d)
            deficit = N - m_d
            for f in funcs:
                P, bad = approximate(f, d)
                assert P.degree <= d
                assert len(bad) <= deficit, (q, n, d, len(bad), deficit)
                fits += 1
    assert fits == 200 * (9 + 9 + 9)
    print(f"criterion 4: {fits} approximations within the counting bound, zero failures")


def test_criterion_5_oracle_profiles_and_runtime():
    """Exact oracle: identity/all-ones profiles, monotonicity, rank lower
    bound; <= 30 s at the 2^16 scale and <= 600 s at 2^25."""
    f2 = make_field(2)

    start = time.perf_counter()
    prof4 = brute_force_rigidity(Matrix.identity(f2, 4))
    t16 = time.perf_counter() - start
    assert prof4.values == (4, 3, 2, 1, 0)
    assert t16 <= 30.0

    ones = brute_force_rigidity(Matrix(f2, np.ones((4, 4), dtype=np.uint8)))
    assert ones.values[0] == 16 and ones.values[1] == 0

    start = time.perf_counter()
    prof5 = brute_force_rigidity(Matrix.identity(f2, 5))
    t25 = time.perf_counter() - start
    assert prof5.values == (5, 4, 3, 2, 1, 0)
    assert t25 <= 600.0

    for prof, M_rank in [(prof4, 4), (ones, 1), (prof5, 5)]:
        assert prof.values[M_rank] == 0
        for r in range(1, len(prof.values)):
            assert prof.values[r] <= prof.values[r - 1]
        for r, v in enumerate(prof.values):
            assert v >= M_rank - r
    print(f"criterion 5: 2^16 scale {t16:.2f}s, 2^25 scale {t25:.2f}s")


def test_criterion_6_oracle_vs_witness_consistency():
    """All 16 functions at q=2, n=2: exact profile value at the realized
    rank never exceeds the witness distance."""
    f2 = make_field(2)
    for idx in range(16):
        values = np.array([(idx >> i) & 1 for i in range(4)], dtype=np.uint8)
        f = FunctionTable(f2, 2, values)
        w = build_witness(f, Fraction(1, 2))
        report = verify_witness(f, w)
        assert report.passed, (idx, report.failed_checks())
        A, B = materialize(low_degree_split(w.poly, w.d))
        realized = rank(matmul(A, B))
        profile = brute_force_rigidity(build_matrix(f))
        assert profile.values[realized] <= w.distance, (idx, realized)
    print("criterion 6: all 16 functions consistent, zero failures")


def test_criterion_7_counting_cross_checks():
    """count_monomials vs brute enumeration for every supported (q,n)
    with q^n <= 10^4; 50-triple embedding grid; entropy bound gap
    directed below 1e-9."""
    pairs = 0
    checks = 0
    for q in supported_orders():
        n = 1
        while q**n <= 10_000:
            by_degree = Counter(sum(e) for e in itertools.product(range(q), repeat=n))
            running = 0
            for d in range((q - 1) * n + 1):
                running += by_degree[d]
                assert count_monomials(q, n, d) == running, (q, n, d)
                checks += 1
            pairs += 1
            n += 1

    grid = [
        (q, n, d)
        for q in (2, 3, 4, 5, 7, 9, 16)
        for n in (1, 2, 3, 4)
        for d in (0, 1, n, (q - 1) * n // 2, (q - 1) * n)
    ]
    seen: list[tuple[int, int, int]] = []
    for triple in grid:
        if triple not in seen:
            seen.append(triple)
        if len(seen) == 50:
            break
    assert len(seen) == 50
    assert all(binary_embedding_holds(q, n, d) for q, n, d in seen)

    delta = entropy_delta(2, 0.5)
    gap = 0.5 - binary_entropy(delta)
    assert 0.0 <= gap < 1e-9
    print(
        f"criterion 7: {pairs} (q,n) pairs / {checks} counts cross-checked, "
        f"50 embedding triples hold, entropy gap {gap:.3e}"
    )


def test_criterion_8_field_and_linalg_properties():
    """Axiom audits, dual-path GF(2) rank equivalence, solve round trips."""
    audited = 0
    for q in [o for o in supported_orders() if o <= 32]:
        results = verify_axioms(make_field(q))
        assert all(results.values()), (q, results)
        audited += 1

    f2 = make_field(2)
    for seed in range(100):
        M = Matrix(f2, random_values(2, 64 * 64, 9000 + seed).reshape(64, 64))
        assert rank(M, method="packed") == rank(M, method="dense")

    solved = 0
    for q in (2, 3, 4, 5, 9, 16):
        field = make_field(q)
        size = 8
        for seed in itertools.count(7000 + q):
            A = Matrix(field, random_values(q, size * size, seed).reshape(size, size))
            if rank(A) == size:
                break
        for seed in range(3):
            x = random_values(q, size, 8000 + q * 10 + seed)
            b = matmul(A, Matrix(field, x.reshape(size, 1))).data[:, 0]
            assert np.array_equal(solve(A, b), x)
            solved += 1
    print(f"criterion 8: {audited} fields audited, 100 rank cross-checks, {solved} solves")
