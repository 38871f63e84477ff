"""The reduced polynomial space on GF(q)^n and its approximation operator.

A polynomial here always lives in the reduced space: every variable
appears with exponent at most q-1.  Those q^n monomials form a basis of
all functions GF(q)^n -> GF(q), so polynomials and value tables are two
coordinate systems for the same space.  Conversion both ways is done
per variable: evaluating along one axis is multiplication by the q x q
matrix V[v, e] = v^e, so a full table evaluation is n successive axis
transforms (and interpolation applies V^-1 instead).  A direct
q^n x q^n linear-solve interpolator is kept alongside as a cross-check
oracle at small sizes.

approximate() fits the best-effort degree-d polynomial through a
deterministic greedy spanning set of evaluation rows: scan points in
index order, keep each point whose monomial-value row grows the span,
then solve the square system through the kept points.  The result
agrees with the target everywhere except possibly the q^n - m_d(q, n)
points outside the spanning set, and the disagreement set is computed
exactly rather than bounded.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from .errors import BudgetExceededError, DimensionMismatchError
from .field import Field
from .linalg import EchelonBasis, Matrix, field_matmul_array, invert, solve
from .space import count_monomials, encode_point, enumerate_monomials, monomial_sort_key

INTERPOLATE_SOLVE_CAP = 256


class Polynomial:
    """Sparse polynomial: map from exponent tuple to nonzero coefficient."""

    __slots__ = ("field", "n", "terms")

    def __init__(self, field: Field, n: int, terms: Mapping[Sequence[int], int]) -> None:
        q = field.q
        clean: dict[tuple[int, ...], int] = {}
        for exps, coeff in terms.items():
            key = tuple(int(e) for e in exps)
            if len(key) != n:
                raise DimensionMismatchError(f"exponent tuple {key} is not length {n}")
            if any(e < 0 or e > q - 1 for e in key):
                raise ValueError(f"exponent tuple {key} leaves the reduced space for q={q}")
            c = int(coeff)
            if not 0 <= c < q:
                raise ValueError(f"coefficient {c} out of range for GF({q})")
            if c:
                clean[key] = c
        self.field = field
        self.n = n
        self.terms = clean

    @property
    def degree(self) -> int:
        """Largest total degree among terms; 0 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in the canonical monomial order."""
        return [(e, self.terms[e]) for e in sorted(self.terms, key=monomial_sort_key)]

    def eval(self, point: Sequence[int]) -> int:
        """Value at a point, with the 0^0 = 1 convention."""
        if len(point) != self.n:
            raise DimensionMismatchError(f"point length {len(point)} != {self.n}")
        f = self.field
        powt, mult = f.pow_table, f.mul_table
        acc = 0
        for exps, coeff in self.terms.items():
            val = coeff
            for x, e in zip(point, exps):
                if e:
                    val = mult[val, powt[x, e]]
            acc = f.add_table[acc, val]
        return int(acc)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polynomial)
            and other.field == self.field
            and other.n == self.n
            and other.terms == self.terms
        )

    def __repr__(self) -> str:
        return f"Polynomial(GF({self.field.q}), n={self.n}, {len(self.terms)} terms)"


def monomial(field: Field, n: int, exponents: Sequence[int], coeff: int = 1) -> Polynomial:
    """Single-term polynomial coeff * x^exponents."""
    return Polynomial(field, n, {tuple(exponents): coeff})


class FunctionTable:
    """Values of a function GF(q)^n -> GF(q), indexed by point index."""

    __slots__ = ("field", "n", "values")

    def __init__(self, field: Field, n: int, values) -> None:
        arr = np.ascontiguousarray(values, dtype=np.uint8)
        if arr.shape != (field.q**n,):
            raise DimensionMismatchError(
                f"table needs q^n = {field.q**n} values, got shape {arr.shape}"
            )
        if arr.size and arr.max() >= field.q:
            raise ValueError(f"table value {arr.max()} out of range for GF({field.q})")
        self.field = field
        self.n = n
        self.values = arr

    def value_at(self, point: Sequence[int]) -> int:
        return int(self.values[encode_point(point, self.field.q)])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FunctionTable)
            and other.field == self.field
            and other.n == self.n
            and bool(np.array_equal(other.values, self.values))
        )

    def __repr__(self) -> str:
        return f"FunctionTable(GF({self.field.q}), n={self.n})"


# -- basis transforms --------------------------------------------------------


def _apply_axiswise(field: Field, flat: np.ndarray, n: int, mat: np.ndarray) -> np.ndarray:
    """Apply a q x q field matrix along every axis of a (q,)*n tensor."""
    if n == 0:
        return flat.copy()
    q = field.q
    tensor = flat.reshape((q,) * n)
    for axis in range(n):
        moved = np.moveaxis(tensor, axis, 0)
        slab = np.ascontiguousarray(moved).reshape(q, -1)
        out = field_matmul_array(field, mat, slab)
        tensor = np.moveaxis(out.reshape(moved.shape), 0, axis)
    return np.ascontiguousarray(tensor).reshape(-1)


def _vandermonde_inverse(field: Field) -> np.ndarray:
    cached = getattr(field, "_vander_inv", None)
    if cached is None:
        cached = invert(Matrix(field, field.pow_table)).data
        field._vander_inv = cached
    return cached


def to_table(P: Polynomial) -> FunctionTable:
    """Evaluate at every point of GF(q)^n (tensorized, exact)."""
    q, n = P.field.q, P.n
    coeffs = np.zeros(q**n, dtype=np.uint8)
    for exps, c in P.terms.items():
        coeffs[encode_point(exps, q)] = c
    values = _apply_axiswise(P.field, coeffs, n, P.field.pow_table)
    return FunctionTable(P.field, n, values)


def interpolate_full(f: FunctionTable) -> Polynomial:
    """The unique reduced polynomial with the given value table.

    Inverse of to_table, computed as n rounds of univariate q-point
    interpolation (one inverse axis transform per variable).
    """
    q, n = f.field.q, f.n
    coeffs = _apply_axiswise(f.field, f.values, n, _vandermonde_inverse(f.field))
    terms = {}
    for idx in np.nonzero(coeffs)[0]:
        exps = []
        rem = int(idx)
        for _ in range(n):
            rem, e = divmod(rem, q)
            exps.append(e)
        terms[tuple(exps)] = int(coeffs[idx])
    return Polynomial(f.field, n, terms)


def interpolate_via_solve(f: FunctionTable) -> Polynomial:
    """Interpolation by one dense q^n x q^n solve; cross-check oracle only."""
    q, n = f.field.q, f.n
    N = q**n
    if N > INTERPOLATE_SOLVE_CAP:
        raise BudgetExceededError(f"dense interpolation capped at q^n <= {INTERPOLATE_SOLVE_CAP}")
    monos = list(enumerate_monomials(q, n, (q - 1) * n))
    E = _monomial_rows(f.field, n, monos, np.arange(N, dtype=np.int64))
    coeffs = solve(Matrix(f.field, E), f.values)
    return Polynomial(f.field, n, {monos[j]: int(c) for j, c in enumerate(coeffs) if c})


# -- degree-d approximation --------------------------------------------------


def _monomial_rows(
    field: Field, n: int, monos: list[tuple[int, ...]], point_indices: np.ndarray
) -> np.ndarray:
    """Evaluation rows: out[i, j] = monos[j] evaluated at point point_indices[i]."""
    q = field.q
    mult, powt = field.mul_table, field.pow_table
    digits = np.empty((len(point_indices), n), dtype=np.uint8)
    for i in range(n):
        digits[:, i] = (point_indices // q**i) % q
    out = np.empty((len(point_indices), len(monos)), dtype=np.uint8)
    for j, exps in enumerate(monos):
        col: np.ndarray | None = None
        for i, e in enumerate(exps):
            if e == 0:
                continue
            factor = powt[digits[:, i], e]
            col = factor if col is None else mult[col, factor]
        out[:, j] = 1 if col is None else col
    return out


def approximate(f: FunctionTable, d: int) -> tuple[Polynomial, tuple[int, ...]]:
    """Best-effort degree-d fit and its exact disagreement set.

    Returns (P, bad) with P in the degree-<=d reduced space and bad the
    ascending point indices where P differs from f.  Guarantee:
    len(bad) <= q^n - m_d(q, n).  Deterministic in (f, d).

    The evaluation matrix is streamed block by block, so memory stays
    O(m_d^2) even for large q^n; the greedy scan stops as soon as the
    span is full.
    """
    field, n = f.field, f.n
    q = field.q
    max_deg = (q - 1) * n
    if not 0 <= d <= max_deg:
        raise ValueError(f"degree {d} out of range [0, {max_deg}]")
    monos = list(enumerate_monomials(q, n, d))
    m = len(monos)
    N = q**n

    basis = EchelonBasis(field, m)
    kept_idx: list[int] = []
    kept_rows: list[np.ndarray] = []
    block = 1024
    for start in range(0, N, block):
        indices = np.arange(start, min(start + block, N), dtype=np.int64)
        rows = _monomial_rows(field, n, monos, indices)
        for i, idx in enumerate(indices):
            if basis.add(rows[i]):
                kept_idx.append(int(idx))
                kept_rows.append(rows[i].copy())
                if len(kept_idx) == m:
                    break
        if len(kept_idx) == m:
            break
    # Reduced monomials are linearly independent as functions, so the
    # evaluation matrix always has full column rank.
    if len(kept_idx) != m:
        raise AssertionError(f"monomial evaluation matrix rank {len(kept_idx)} < {m}")

    coeffs = solve(Matrix(field, np.stack(kept_rows)), f.values[np.array(kept_idx)])
    P = Polynomial(field, n, {monos[j]: int(c) for j, c in enumerate(coeffs) if c})

    table = to_table(P)
    bad = tuple(int(i) for i in np.nonzero(table.values != f.values)[0])
    if len(bad) > N - m:
        raise AssertionError(f"disagreement {len(bad)} exceeds bound {N - m}")
    return P, bad


def agreement_deficit_bound(q: int, n: int, d: int) -> int:
    """The guaranteed cap on disagreements: q^n - m_d(q, n)."""
    return q**n - count_monomials(q, n, d)
