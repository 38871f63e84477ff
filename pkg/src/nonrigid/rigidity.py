"""Non-rigidity witnesses for translation matrices, and an exact oracle.

Pipeline: a function f: F_q^n -> F_q induces the N x N matrix
M[x, y] = f(x+y) with N = q^n.  Given a rate eps, pick the agreement
threshold t = floor(q^(eps*n)), the least degree d whose monomial count
leaves a deficit of at most t, and fit P = approximate(f, d).  The
resulting witness certifies rank(P(x+y)) <= 2 * m_{floor(d/2)} while M
and P(x+y) differ in exactly bad_count entries per row.  verify_witness
re-derives every claim from scratch on materialized matrices.

The brute-force oracle computes the exact rigidity profile of a tiny
matrix: values[r] = minimum Hamming changes to reach rank <= r, found
by enumerating every candidate matrix over the field.  Two exhaustive
strategies share the enumeration order: a plain base-q counter with
incremental distance updates, and a blockwise vectorized scan that
ranks all candidates through a precomputed row-space transition table.
Both are exact; the vectorized path exists because the per-candidate
counter is too slow past about 2^16 candidates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .factorize import low_degree_split, materialize
from .errors import BudgetExceededError, MismatchedParametersError
from .field import Field, make_field
from .linalg import Matrix, matmul, rank
from .poly import FunctionTable, Polynomial, approximate, to_table
from .space import count_monomials, min_degree_for_agreement

MATRIX_BUDGET = 1 << 12
ORACLE_BUDGET = 1 << 26
_COUNTER_CUTOFF = 1 << 16
_SAMPLE_SEED = 0xA5EED
_MASK64 = (1 << 64) - 1


# ---------------------------------------------------------------------------
# seeded randomness (splitmix64)
# ---------------------------------------------------------------------------

def _splitmix64(seed: int) -> Iterator[int]:
    """Infinite stream of 64-bit values from the splitmix64 generator.

    Fixed constants, pure integer arithmetic: identical output on every
    platform for the same seed.
    """
    state = seed & _MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


def random_values(q: int, count: int, seed: int) -> np.ndarray:
    """`count` reproducible values in [0, q), reduced from 64-bit draws."""
    gen = _splitmix64(seed)
    return np.fromiter((next(gen) % q for _ in range(count)), dtype=np.uint8, count=count)


def random_function(q: int, n: int, seed: int) -> FunctionTable:
    """Reproducible pseudo-random table of a function F_q^n -> F_q."""
    field = make_field(q)
    return FunctionTable(field, n, random_values(q, q**n, seed))


# ---------------------------------------------------------------------------
# matrix construction
# ---------------------------------------------------------------------------

def _encoded_sums(field: Field, n: int, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Encoded index of x+y for broadcastable arrays of encoded points."""
    add = field.add_table
    out = np.zeros(np.broadcast(xs, ys).shape, dtype=np.int64)
    scale = 1
    for _ in range(n):
        out += add[(xs // scale) % field.q, (ys // scale) % field.q].astype(np.int64) * scale
        scale *= field.q
    return out


def build_matrix(f: FunctionTable, budget: int = MATRIX_BUDGET) -> Matrix:
    """The N x N matrix with entry f(x+y) at (encoded x, encoded y).

    Every row is the table permuted by a translation, so all rows share
    one multiset of values.
    """
    N = f.field.q**f.n
    if N > budget:
        raise BudgetExceededError(f"matrix side {N} exceeds budget {budget}")
    idx = np.arange(N, dtype=np.int64)
    data = np.empty((N, N), dtype=np.uint8)
    for lo in range(0, N, 256):
        hi = min(lo + 256, N)
        data[lo:hi] = f.values[_encoded_sums(f.field, f.n, idx[lo:hi, None], idx[None, :])]
    return Matrix(f.field, data)


# ---------------------------------------------------------------------------
# witness construction
# ---------------------------------------------------------------------------

def integer_root(x: int, k: int) -> int:
    """floor(x ** (1/k)) in exact integer arithmetic (Newton iteration)."""
    if k <= 0:
        raise ValueError("root order must be positive")
    if x < 0:
        raise ValueError("negative radicand")
    if k == 1 or x in (0, 1):
        return x
    r = 1 << -(-x.bit_length() // k)
    while True:
        nxt = ((k - 1) * r + x // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r**k > x:
        r -= 1
    return r


def agreement_threshold(q: int, n: int, eps: Fraction) -> int:
    """t = floor(q^(eps*n)) computed exactly via integer powers and roots."""
    eps = Fraction(eps)
    return integer_root(q ** (n * eps.numerator), eps.denominator)


@dataclass(frozen=True)
class Witness:
    """Certificate that M(x,y) = f(x+y) is Hamming-close to low rank.

    Stored: the rate eps, the chosen degree d, the fitted polynomial,
    and the exact disagreement count.  Everything else is derived.
    """

    eps: Fraction
    d: int
    poly: Polynomial
    bad_count: int

    def __post_init__(self) -> None:
        if self.poly.degree > self.d:
            raise ValueError(f"degree {self.poly.degree} exceeds d = {self.d}")

    @property
    def q(self) -> int:
        return self.poly.field.q

    @property
    def n(self) -> int:
        return self.poly.n

    @property
    def N(self) -> int:
        return self.q**self.n

    @property
    def rank_bound(self) -> int:
        return 2 * count_monomials(self.q, self.n, self.d // 2)

    @property
    def threshold(self) -> int:
        return agreement_threshold(self.q, self.n, self.eps)

    @property
    def distance(self) -> int:
        """Total changed entries: each bad point hits every row once."""
        return self.N * self.bad_count

    @property
    def distance_bound(self) -> int:
        """N * t, an integer lower-rounding of N^(1+eps)."""
        return self.N * self.threshold

    @property
    def achieved_eps_prime(self) -> float:
        """eps' with rank_bound = N^(1-eps'), as a ratio of logarithms."""
        return math.log(self.N / self.rank_bound) / math.log(self.N)

    @property
    def useful(self) -> bool:
        """True when the certified rank actually falls below full rank."""
        return self.rank_bound < self.N and self.bad_count <= self.threshold


def build_witness(f: FunctionTable, eps: Fraction) -> Witness:
    """Fit the least degree whose count deficit is within t = floor(q^(eps*n)).

    Always succeeds: d = (q-1)n gives deficit 0 in the worst case, and a
    rank_bound >= N is reported honestly (witness flagged not useful).
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie strictly between 0 and 1, got {eps}")
    q, n = f.field.q, f.n
    t = agreement_threshold(q, n, eps)
    d = min_degree_for_agreement(q, n, t)
    P, bad = approximate(f, d)
    return Witness(eps=eps, d=d, poly=P, bad_count=len(bad))


# ---------------------------------------------------------------------------
# witness verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    """Outcome of re-deriving every witness claim from materialized data."""

    exact_rank: int
    distance: int
    width: int
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> list[str]:
        out = [f"{name}: {'ok' if ok else 'FAIL'} ({detail})" for name, ok, detail in self.checks]
        out.append(f"overall: {'pass' if self.passed else 'fail'}")
        return out

    def failed_checks(self) -> list[str]:
        return [name for name, ok, _ in self.checks if not ok]


def verify_witness(
    f: FunctionTable,
    w: Witness,
    budget: int = MATRIX_BUDGET,
    samples: int = 10_000,
) -> VerificationReport:
    """Materialize both matrices and re-check the witness claims.

    Checks: (a) exact rank of the factorization product L is within
    rank_bound, (b) full entry comparison of M and L reproduces
    distance = N * bad_count, (c) every row disagrees in exactly
    bad_count places, (d) factorization width is within rank_bound,
    and a seeded sample of entries ties L back to P evaluated at x+y.
    """
    if f.field.q != w.q or f.n != w.n:
        raise MismatchedParametersError(
            f"table is over (q={f.field.q}, n={f.n}), witness over (q={w.q}, n={w.n})"
        )
    N = w.N
    if N > budget:
        raise BudgetExceededError(f"matrix side {N} exceeds budget {budget}")

    factorization = low_degree_split(w.poly, w.d)
    A, B = materialize(factorization)
    L = matmul(A, B)
    M = build_matrix(f, budget)
    exact_rank = rank(L)

    diff = M.data != L.data
    distance = int(diff.sum())
    row_counts = diff.sum(axis=1)

    gen = _splitmix64(_SAMPLE_SEED)
    xs = np.fromiter((next(gen) % N for _ in range(samples)), dtype=np.int64, count=samples)
    ys = np.fromiter((next(gen) % N for _ in range(samples)), dtype=np.int64, count=samples)
    table_P = to_table(w.poly)
    sums = _encoded_sums(f.field, f.n, xs, ys)
    samples_ok = bool(np.array_equal(L.data[xs, ys], table_P.values[sums]))

    checks = (
        (
            "rank_le_bound",
            exact_rank <= w.rank_bound,
            f"exact rank {exact_rank} vs bound {w.rank_bound}",
        ),
        (
            "distance_matches",
            distance == N * w.bad_count,
            f"recomputed {distance} vs declared {N} * {w.bad_count} = {N * w.bad_count}",
        ),
        (
            "rows_uniform",
            bool(np.all(row_counts == w.bad_count)),
            f"per-row disagreements range {int(row_counts.min())}..{int(row_counts.max())}",
        ),
        (
            "width_le_bound",
            factorization.width <= w.rank_bound,
            f"width {factorization.width} vs bound {w.rank_bound}",
        ),
        (
            "samples_match",
            samples_ok,
            f"{samples} seeded entries of L against P(x+y)",
        ),
    )
    return VerificationReport(
        exact_rank=exact_rank,
        distance=distance,
        width=factorization.width,
        checks=checks,
    )


# ---------------------------------------------------------------------------
# exact rigidity oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RigidityProfile:
    """values[r] = exact minimum Hamming changes to reach rank <= r."""

    N: int
    q: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.N + 1:
            raise ValueError("profile must list r = 0..N")


def brute_force_rigidity(
    M: Matrix,
    budget: int = ORACLE_BUDGET,
    method: str = "auto",
) -> RigidityProfile:
    """Exhaustive exact rigidity profile of a tiny matrix.

    Enumerates every rows x cols matrix over the field, tracking the
    minimum distance to M within each rank class.  method: "counter"
    (digit counter, incremental distance, per-candidate rank),
    "vector" (blockwise numpy scan of the same enumeration), or "auto"
    (counter up to 2^16 candidates, vector beyond).
    """
    q = M.field.q
    rows, cols = M.shape
    cells = rows * cols
    # Largest exponent e with q^e <= budget, found without ever forming
    # the (possibly astronomical) candidate count itself.
    max_cells, cap = 0, 1
    while cap * q <= budget:
        cap *= q
        max_cells += 1
    if cells > max_cells:
        raise BudgetExceededError(
            f"enumerating q^{cells} candidate matrices exceeds budget {budget}"
        )
    total = q**cells
    # Rank and Hamming distance are transpose-invariant, so normalize to
    # cols <= rows; candidate sets correspond entry-wise under transpose.
    if cols > rows:
        M = M.transpose()
        rows, cols = cols, rows
    if method == "auto":
        method = "counter" if total <= _COUNTER_CUTOFF else "vector"
    if method == "counter":
        mins = _scan_counter(M)
    elif method == "vector":
        mins = _scan_vectorized(M)
    else:
        raise ValueError(f"unknown method {method!r}")
    values = []
    best = max(mins)
    for r in range(cols + 1):
        best = min(best, mins[r])
        values.append(best)
    return RigidityProfile(N=cols, q=q, values=tuple(values))


def _scan_counter(M: Matrix) -> list[int]:
    """Base-q counter over all candidates; returns per-rank minimum distance.

    Distance to M is updated incrementally as digits roll; rank is
    recomputed per candidate (bitset elimination for q = 2, table
    elimination otherwise).
    """
    field = M.field
    q = field.q
    rows, cols = M.shape
    total = q ** (rows * cols)
    target = [int(M.data[j // cols, j % cols]) for j in range(rows * cols)]
    digits = [0] * (rows * cols)
    dist = sum(1 for v in target if v != 0)
    mins = [total * cols + 1] * (cols + 1)

    mul_t = field.mul_table
    inv_t = field.inv_table
    sub_t = field.sub_table

    if q == 2:
        grid: list[int] = [0] * rows

        def current_rank() -> int:
            work = [r for r in grid if r]
            rk = 0
            while work:
                pivot = min(work, key=lambda r: r & -r)
                work.remove(pivot)
                low = pivot & -pivot
                work = [r ^ pivot if r & low else r for r in work]
                work = [r for r in work if r]
                rk += 1
            return rk

    else:
        grid_rows: list[list[int]] = [[0] * cols for _ in range(rows)]

        def current_rank() -> int:
            work = [row[:] for row in grid_rows]
            rk = 0
            for c in range(cols):
                pivot = next((i for i in range(rk, rows) if work[i][c]), None)
                if pivot is None:
                    continue
                work[rk], work[pivot] = work[pivot], work[rk]
                scale = inv_t[work[rk][c]]
                prow = [mul_t[scale, v] for v in work[rk]]
                work[rk] = prow
                for i in range(rk + 1, rows):
                    lead = work[i][c]
                    if lead:
                        work[i] = [
                            sub_t[v, mul_t[lead, pv]] for v, pv in zip(work[i], prow)
                        ]
                rk += 1
            return rk

    for _ in range(total):
        rk = current_rank()
        if dist < mins[rk]:
            mins[rk] = dist
        j = 0
        while j < rows * cols and digits[j] == q - 1:
            digits[j] = 0
            dist += (target[j] != 0) - (target[j] != q - 1)
            if q == 2:
                grid[j // cols] ^= 1 << (j % cols)
            else:
                grid_rows[j // cols][j % cols] = 0
            j += 1
        if j < rows * cols:
            old = digits[j]
            digits[j] = old + 1
            dist += (target[j] != old + 1) - (target[j] != old)
            if q == 2:
                grid[j // cols] ^= 1 << (j % cols)
            else:
                grid_rows[j // cols][j % cols] = old + 1
    return mins


def _span_tables(field: Field, cols: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Row-space transition table over encoded vectors of F_q^cols.

    Subspaces are enumerated breadth-first from the zero space; the
    returned step[s, v] is the id of span(S union {v}) and dim[s] the
    dimension of subspace id s.
    """
    q = field.q
    Q = q**cols
    pts = np.arange(Q, dtype=np.int64)
    add_pts = _encoded_sums(field, cols, pts[:, None], pts[None, :])
    smul = np.zeros((q, Q), dtype=np.int64)
    scale = 1
    for _ in range(cols):
        digit = (pts // scale) % q
        smul += field.mul_table[np.arange(q)[:, None], digit[None, :]].astype(np.int64) * scale
        scale *= q

    zero_members = np.zeros(Q, dtype=bool)
    zero_members[0] = True
    ids: dict[bytes, int] = {zero_members.tobytes(): 0}
    member_sets = [zero_members]
    dims = [0]
    steps: list[list[int]] = []
    frontier = [0]
    while frontier:
        sid = frontier.pop()
        while len(steps) <= sid:
            steps.append([])
        members = member_sets[sid]
        idx = np.flatnonzero(members)
        row = [0] * Q
        for v in range(Q):
            if members[v]:
                row[v] = sid
                continue
            grown = members.copy()
            for lam in range(1, q):
                grown[add_pts[idx, smul[lam, v]]] = True
            key = grown.tobytes()
            if key not in ids:
                ids[key] = len(member_sets)
                member_sets.append(grown)
                dims.append(dims[sid] + 1)
                frontier.append(ids[key])
            row[v] = ids[key]
        steps[sid] = row
    step = np.array(steps, dtype=np.int32)
    dim = np.array(dims, dtype=np.int8)
    return step, dim, Q


def _scan_vectorized(M: Matrix, block: int = 1 << 21) -> list[int]:
    """Same exhaustive scan as the counter, processed in numpy blocks.

    Candidate index k encodes the matrix whose row i is the base-q^cols
    digit i of k; ranks come from the row-space transition table and
    distances from a pairwise row-distance table.
    """
    field = M.field
    q = field.q
    rows, cols = M.shape
    total = q ** (rows * cols)
    step, dim, Q = _span_tables(field, cols)

    pts = np.arange(Q, dtype=np.int64)
    row_dist = np.zeros((Q, Q), dtype=np.int8)
    scale = 1
    for _ in range(cols):
        digit = (pts // scale) % q
        row_dist += digit[:, None] != digit[None, :]
        scale *= q
    target_codes = [
        int(sum(int(M.data[i, c]) * q**c for c in range(cols))) for i in range(rows)
    ]

    mins = [total * cols + 1] * (cols + 1)
    for lo in range(0, total, block):
        codes = np.arange(lo, min(lo + block, total), dtype=np.int64)
        state = np.zeros(codes.shape, dtype=np.int32)
        dist = np.zeros(codes.shape, dtype=np.int32)
        for i in range(rows):
            row_code = (codes // Q**i) % Q
            state = step[state, row_code]
            dist += row_dist[row_code, target_codes[i]]
        ranks = dim[state]
        for r in range(cols + 1):
            sel = dist[ranks == r]
            if sel.size:
                mins[r] = min(mins[r], int(sel.min()))
    return mins


# ---------------------------------------------------------------------------
# degree sweep
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    """One degree's worth of witness quantities for a fixed function."""

    d: int
    m_d: int
    deficit: int
    half_d: int
    rank_bound: int
    bad_count: int
    distance: int
    exact_rank: int | None


def tradeoff_sweep(
    f: FunctionTable,
    d_list: Sequence[int],
    budget: int = MATRIX_BUDGET,
) -> list[SweepRow]:
    """For each degree, fit P and tabulate count, deficit, bounds, and
    (when the materialization budget allows) the exact rank of P(x+y)."""
    q, n = f.field.q, f.n
    N = q**n
    out = []
    for d in d_list:
        if not 0 <= d <= (q - 1) * n:
            raise ValueError(f"d = {d} out of range 0..{(q - 1) * n}")
        m_d = count_monomials(q, n, d)
        P, bad = approximate(f, d)
        exact_rank: int | None
        try:
            if N > budget:
                raise BudgetExceededError(f"matrix side {N} exceeds budget {budget}")
            A, B = materialize(low_degree_split(P, d))
            exact_rank = rank(matmul(A, B))
        except BudgetExceededError:
            exact_rank = None
        out.append(
            SweepRow(
                d=d,
                m_d=m_d,
                deficit=N - m_d,
                half_d=d // 2,
                rank_bound=2 * count_monomials(q, n, d // 2),
                bad_count=len(bad),
                distance=N * len(bad),
                exact_rank=exact_rank,
            )
        )
    return out
