"""Dense exact linear algebra over GF(q).

Two elimination kernels back every operation:

* a packed path for GF(2), rows as Python ints (bit j = column j) with
  XOR row updates, fast enough for 4096 x 4096 elimination;
* a generic table-driven path for any supported q, numpy uint8 rows
  with field ops done by fancy-indexing the precomputed tables.

Both paths use the same deterministic pivoting rule: columns scanned
left to right, pivot = first row with a nonzero entry in the current
column.  The two paths are cross-checked against each other in the test
suite.  Matrix products route through float64 BLAS where the field is a
prime field (the integer sums stay far below 2^53, so the result is
exact) and through a per-digit decomposition for extension fields.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError, SingularMatrixError
from .field import Field


class Matrix:
    """Immutable-by-convention dense matrix with uint8 entries in [0, q)."""

    __slots__ = ("field", "data")

    def __init__(self, field: Field, data) -> None:
        arr = np.ascontiguousarray(data, dtype=np.uint8)
        if arr.ndim != 2:
            raise DimensionMismatchError("matrix data must be 2-dimensional")
        if arr.size and arr.max() >= field.q:
            raise ValueError(f"entry {arr.max()} out of range for GF({field.q})")
        self.field = field
        self.data = arr

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.uint8))

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence[int]]) -> "Matrix":
        return cls(field, np.array(list(rows), dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.data.copy())

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.data.T.copy())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.data.shape == self.data.shape
            and bool(np.array_equal(other.data, self.data))
        )

    def __repr__(self) -> str:
        return f"Matrix(GF({self.field.q}), {self.rows}x{self.cols})"


# -- packed GF(2) helpers ----------------------------------------------------


def pack_rows(data: np.ndarray) -> list[int]:
    """Rows of a 0/1 array as ints, bit j = column j."""
    packed = np.packbits(data, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def unpack_row(value: int, ncols: int) -> np.ndarray:
    raw = np.frombuffer(value.to_bytes((ncols + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, count=ncols, bitorder="little")


def _rank_packed(rows: list[int], ncols: int) -> int:
    work = rows[:]
    rank = 0
    for col in range(ncols):
        mask = 1 << col
        pivot = None
        for r in range(rank, len(work)):
            if work[r] & mask:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        for r in range(rank + 1, len(work)):
            if work[r] & mask:
                work[r] ^= prow
        rank += 1
        if rank == len(work):
            break
    return rank


def _rank_dense(field: Field, data: np.ndarray) -> int:
    A = data.copy()
    nrows, ncols = A.shape
    mul_t, sub_t, inv_t = field.mul_table, field.sub_table, field.inv_table
    pr = 0
    for col in range(ncols):
        nz = np.nonzero(A[pr:, col])[0]
        if nz.size == 0:
            continue
        piv = pr + int(nz[0])
        if piv != pr:
            A[[pr, piv]] = A[[piv, pr]]
        pivinv = inv_t[A[pr, col]]
        below = A[pr + 1:]
        if below.size:
            factors = mul_t[pivinv, below[:, col]]
            hit = factors != 0
            if hit.any():
                prod = mul_t[factors[hit][:, None], A[pr][None, :]]
                below[hit] = sub_t[below[hit], prod]
        pr += 1
        if pr == nrows:
            break
    return pr


def rank(A: Matrix, method: str = "auto") -> int:
    """Rank over GF(q); the input matrix is not mutated.

    method: "auto" picks the packed kernel for GF(2) and the table
    kernel otherwise; "packed" / "dense" force a kernel ("packed" is
    GF(2) only).
    """
    if method == "auto":
        method = "packed" if A.field.q == 2 else "dense"
    if method == "packed":
        if A.field.q != 2:
            raise ValueError("packed kernel only applies to GF(2)")
        return _rank_packed(pack_rows(A.data), A.cols)
    if method == "dense":
        return _rank_dense(A.field, A.data)
    raise ValueError(f"unknown method {method!r}")


# -- incremental row basis ---------------------------------------------------


class EchelonBasis:
    """Online row basis: feed rows, learn which ones grow the span.

    Feeding the rows of a matrix in order and keeping exactly those for
    which add() returns True reproduces the greedy spanning-row scan:
    the kept index set is the lexicographically first subset whose rows
    span the row space.
    """

    def __init__(self, field: Field, ncols: int) -> None:
        self.field = field
        self.ncols = ncols
        self._packed = field.q == 2
        self._pivots: dict[int, object] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def add(self, row: np.ndarray) -> bool:
        """Reduce row against the basis; absorb and report True if novel."""
        if self._packed:
            packed = np.packbits(row, bitorder="little")
            return self.add_packed(int.from_bytes(packed.tobytes(), "little"))
        return self._add_dense(row)

    def add_packed(self, row: int) -> bool:
        pivots = self._pivots
        while row:
            col = (row & -row).bit_length() - 1
            basis_row = pivots.get(col)
            if basis_row is None:
                pivots[col] = row
                return True
            row ^= basis_row
        return False

    def _add_dense(self, row: np.ndarray) -> bool:
        f = self.field
        mul_t, sub_t, inv_t = f.mul_table, f.sub_table, f.inv_table
        r = np.array(row, dtype=np.uint8, copy=True)
        pivots = self._pivots
        while True:
            nz = np.nonzero(r)[0]
            if nz.size == 0:
                return False
            col = int(nz[0])
            basis_row = pivots.get(col)
            if basis_row is None:
                pivots[col] = mul_t[inv_t[r[col]]][r]
                return True
            r = sub_t[r, mul_t[r[col]][basis_row]]


def spanning_rows(A: Matrix) -> list[int]:
    """Greedy spanning subset of row indices, ascending.

    |S| = rank(A), the submatrix at S has full row rank, and S is the
    lexicographically first index set with that property.
    """
    basis = EchelonBasis(A.field, A.cols)
    kept = []
    if A.field.q == 2:
        for i, row in enumerate(pack_rows(A.data)):
            if basis.add_packed(row):
                kept.append(i)
    else:
        for i in range(A.rows):
            if basis._add_dense(A.data[i]):
                kept.append(i)
    return kept


# -- linear solve ------------------------------------------------------------


def _gauss_jordan_packed(data: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    n, m = data.shape[0], rhs.shape[1]
    work = pack_rows(np.concatenate([data, rhs], axis=1))
    for col in range(n):
        mask = 1 << col
        pivot = None
        for r in range(col, n):
            if work[r] & mask:
                pivot = r
                break
        if pivot is None:
            raise SingularMatrixError("matrix is singular over GF(2)")
        work[col], work[pivot] = work[pivot], work[col]
        prow = work[col]
        for r in range(n):
            if r != col and work[r] & mask:
                work[r] ^= prow
    out = np.empty((n, m), dtype=np.uint8)
    for i in range(n):
        out[i] = unpack_row(work[i] >> n, m)
    return out


def _gauss_jordan_dense(field: Field, data: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    n = data.shape[0]
    mul_t, sub_t, inv_t = field.mul_table, field.sub_table, field.inv_table
    aug = np.concatenate([data, rhs], axis=1).astype(np.uint8)
    for col in range(n):
        nz = np.nonzero(aug[col:, col])[0]
        if nz.size == 0:
            raise SingularMatrixError(f"matrix is singular over GF({field.q})")
        piv = col + int(nz[0])
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col] = mul_t[inv_t[aug[col, col]]][aug[col]]
        factors = aug[:, col].copy()
        factors[col] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            prod = mul_t[factors[hit][:, None], aug[col][None, :]]
            aug[hit] = sub_t[aug[hit], prod]
    return aug[:, n:].copy()


def _gauss_jordan(field: Field, data: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    if field.q == 2:
        return _gauss_jordan_packed(data, rhs)
    return _gauss_jordan_dense(field, data, rhs)


def solve(A: Matrix, b: Sequence[int]) -> np.ndarray:
    """The unique x with A x = b for square invertible A.

    Raises SingularMatrixError otherwise.
    """
    if A.rows != A.cols:
        raise DimensionMismatchError("solve requires a square matrix")
    bvec = np.asarray(b, dtype=np.uint8)
    if bvec.shape != (A.rows,):
        raise DimensionMismatchError(f"rhs length {bvec.shape} != {A.rows}")
    return _gauss_jordan(A.field, A.data, bvec.reshape(-1, 1))[:, 0]


def invert(A: Matrix) -> Matrix:
    """Inverse of a square invertible matrix, by Gauss-Jordan."""
    if A.rows != A.cols:
        raise DimensionMismatchError("invert requires a square matrix")
    eye = np.eye(A.rows, dtype=np.uint8)
    return Matrix(A.field, _gauss_jordan(A.field, A.data, eye))


# -- products ----------------------------------------------------------------


def field_matmul_array(field: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product of raw uint8 arrays over the field, exact.

    Prime fields go through float64 BLAS and reduce mod p (inner
    dimension times (p-1)^2 stays far below 2^53, so every intermediate
    sum is an exactly represented integer).  Extension fields split the
    accumulation into base-p digits, one BLAS product per (scalar value,
    digit) pair.
    """
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatchError(f"inner dimensions differ: {A.shape} x {B.shape}")
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.uint8)
    p, k = field.p, field.k
    if k == 1:
        prod = np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64)
        return (prod % p).astype(np.uint8)
    acc = np.zeros((k, A.shape[0], B.shape[1]), dtype=np.int64)
    for v in range(1, field.q):
        mask = A == v
        if not mask.any():
            continue
        maskf = mask.astype(np.float64)
        digits = field.digit_table[field.mul_table[v][B]]  # (K, cols, k)
        for d in range(k):
            acc[d] += np.rint(maskf @ digits[..., d].astype(np.float64)).astype(np.int64)
    acc %= p
    weights = p ** np.arange(k, dtype=np.int64)
    return (np.tensordot(weights, acc, axes=(0, 0))).astype(np.uint8)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    """Matrix product over the common field."""
    if A.field != B.field:
        raise DimensionMismatchError("matrices live over different fields")
    return Matrix(A.field, field_matmul_array(A.field, A.data, B.data))
