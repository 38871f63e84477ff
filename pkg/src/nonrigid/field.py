"""Exact arithmetic in GF(q) for prime powers q <= 256.

Elements are plain integers in [0, q).  For prime q the integer is the
residue itself.  For q = p^k with k > 1 the base-p digits of the integer
are the coefficients of a polynomial over GF(p), little-endian (the
constant term is the least significant digit), and arithmetic is done
modulo a fixed irreducible polynomial.  Hard-coding one polynomial per
(p, k) keeps element encodings reproducible across runs and platforms.

Irreducible polynomials used (verified irreducible over GF(p)):

    GF(4)   : x^2 + x + 1
    GF(8)   : x^3 + x + 1
    GF(16)  : x^4 + x + 1
    GF(32)  : x^5 + x^2 + 1
    GF(64)  : x^6 + x + 1
    GF(128) : x^7 + x + 1
    GF(256) : x^8 + x^4 + x^3 + x + 1
    GF(9)   : x^2 + 1
    GF(27)  : x^3 + 2x + 1
    GF(81)  : x^4 + 2x^3 + 2
    GF(243) : x^5 + 2x + 1
    GF(25)  : x^2 + 2
    GF(125) : x^3 + 3x + 2
    GF(49)  : x^2 + 1
    GF(121) : x^2 + 1
    GF(169) : x^2 + 2

All q x q operation tables are precomputed at construction, so every
operation is a table lookup and the tables double as an exhaustive
correctness audit (inverse-table construction fails loudly if the
modulus were reducible).  Fields are immutable after construction and
safe for unrestricted concurrent use.
"""

from __future__ import annotations

import functools

import numpy as np

from .errors import NotPrimePowerError, UnsupportedFieldError

MAX_Q = 256

# (p, k) -> coefficients of a monic irreducible polynomial of degree k
# over GF(p), little-endian, constant term first, leading 1 included.
_IRREDUCIBLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 1, 0, 1, 1, 0, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (5, 3): (2, 3, 0, 1),
    (7, 2): (1, 0, 1),
    (11, 2): (1, 0, 1),
    (13, 2): (2, 0, 1),
}


def _factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise NotPrimePowerError."""
    if q < 2:
        raise NotPrimePowerError(f"field order must be >= 2, got {q}")
    p = None
    for cand in range(2, q + 1):
        if q % cand == 0:
            p = cand
            break
    k = 0
    rest = q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise NotPrimePowerError(f"{q} is not a prime power")
    return p, k


class Field:
    """GF(q) with all arithmetic backed by precomputed tables.

    Attributes:
        q: field order.
        p: characteristic.
        k: extension degree (q = p^k).
        add_table, sub_table, mul_table: (q, q) uint8 numpy arrays.
        neg_table, inv_table: (q,) uint8 numpy arrays (inv_table[0] is
            unused and left at 0).
        pow_table: (q, q) uint8 array, pow_table[v, e] = v^e with 0^0 = 1.
        digit_table: (q, k) uint8 array of base-p digits per element.
    """

    def __init__(self, q: int):
        p, k = _factor_prime_power(q)
        if q > MAX_Q:
            raise UnsupportedFieldError(f"q = {q} exceeds the table cap {MAX_Q}")
        self.q = q
        self.p = p
        self.k = k
        self.modulus = _IRREDUCIBLE.get((p, k)) if k > 1 else None
        if k > 1 and self.modulus is None:
            raise UnsupportedFieldError(f"no irreducible polynomial on record for GF({q})")
        self._build_tables()

    def _build_tables(self) -> None:
        q, p, k = self.q, self.p, self.k
        # Base-p digit vectors of every element value, little-endian.
        vals = np.arange(q, dtype=np.int64)
        digits = np.empty((q, k), dtype=np.uint8)
        for i in range(k):
            digits[:, i] = (vals // p**i) % p
        self.digit_table = digits

        dsum = (digits[:, None, :].astype(np.int64) + digits[None, :, :]) % p
        self.add_table = self._encode_digits(dsum)
        self.neg_table = self._encode_digits((-digits.astype(np.int64)) % p)
        self.sub_table = self.add_table[:, self.neg_table]

        if k == 1:
            self.mul_table = ((vals[:, None] * vals[None, :]) % p).astype(np.uint8)
        else:
            self.mul_table = self._build_ext_mul_table()

        # inv_table doubles as a sanity check: every nonzero row of the
        # multiplication table must contain a 1 exactly once.
        where_one = self.mul_table[1:, :] == 1
        counts = where_one.sum(axis=1)
        if not np.all(counts == 1):
            raise AssertionError(f"GF({q}) modulus is not irreducible")
        inv = np.zeros(q, dtype=np.uint8)
        inv[1:] = np.argmax(where_one, axis=1).astype(np.uint8)
        self.inv_table = inv

        powt = np.empty((q, q), dtype=np.uint8)
        powt[:, 0] = 1  # 0^0 = 1 by convention
        for e in range(1, q):
            powt[:, e] = self.mul_table[powt[:, e - 1], vals]
        self.pow_table = powt

    def _encode_digits(self, digs: np.ndarray) -> np.ndarray:
        """Recombine base-p digit arrays (..., k) into element values."""
        weights = self.p ** np.arange(self.k, dtype=np.int64)
        return (digs.astype(np.int64) @ weights).astype(np.uint8)

    def _build_ext_mul_table(self) -> np.ndarray:
        q, p, k = self.q, self.p, self.k
        mod = self.modulus
        # x_images[j] = digit vector of (x^j reduced mod the modulus),
        # for j < 2k-1, so a full product of two degree-<k polynomials
        # can be reduced digit by digit.
        x_images = [[0] * k for _ in range(2 * k - 1)]
        cur = [0] * k
        cur[0] = 1
        for j in range(2 * k - 1):
            x_images[j] = cur[:]
            # multiply by x and reduce
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                for i in range(k):
                    cur[i] = (cur[i] - lead * mod[i]) % p
        reduce_mat = np.array(x_images, dtype=np.int64)  # (2k-1, k)

        digs = self.digit_table.astype(np.int64)  # (q, k)
        table = np.empty((q, q), dtype=np.uint8)
        for a in range(q):
            da = digs[a]
            # raw convolution coefficients of a*b for all b at once
            conv = np.zeros((q, 2 * k - 1), dtype=np.int64)
            for i in range(k):
                if da[i] == 0:
                    continue
                conv[:, i:i + k] += da[i] * digs
            reduced = (conv @ reduce_mat) % p
            table[a] = self._encode_digits(reduced)
        return table

    # -- scalar operations -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """a^e for any e >= 0 (0^0 = 1)."""
        if e < self.q:
            return int(self.pow_table[a, e])
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"Field(q={self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("Field", self.q))


@functools.lru_cache(maxsize=None)
def make_field(q: int) -> Field:
    """Return the GF(q) instance for a prime power q <= 256.

    Raises NotPrimePowerError if q has two distinct prime factors and
    UnsupportedFieldError above the table cap.  Instances are cached, so
    repeated calls share tables.
    """
    return Field(q)


def supported_orders() -> list[int]:
    """All q for which make_field succeeds, ascending."""
    out = []
    for q in range(2, MAX_Q + 1):
        try:
            p, k = _factor_prime_power(q)
        except NotPrimePowerError:
            continue
        if k == 1 or (p, k) in _IRREDUCIBLE:
            out.append(q)
    return out


def verify_axioms(field: Field) -> dict[str, bool]:
    """Exhaustively check the field axioms against the built tables.

    All q^3 triples are covered (vectorized, chunked over the first
    operand), so a passing result certifies the tables outright rather
    than sampling them.  Returns one boolean per axiom.
    """
    q = field.q
    add = field.add_table.astype(np.int16)
    mul = field.mul_table.astype(np.int16)
    elems = np.arange(q, dtype=np.int16)

    add_assoc = True
    mul_assoc = True
    distrib = True
    chunk = max(1, 4096 // q)
    for lo in range(0, q, chunk):
        a = elems[lo : lo + chunk, None, None]
        b = elems[None, :, None]
        c = elems[None, None, :]
        ab = add[a, b]
        bc = add[b, c]
        add_assoc = add_assoc and bool(np.array_equal(add[ab, c], add[a, bc]))
        mab = mul[a, b]
        mbc = mul[b, c]
        mul_assoc = mul_assoc and bool(np.array_equal(mul[mab, c], mul[a, mbc]))
        distrib = distrib and bool(
            np.array_equal(mul[a, bc], add[mul[a, b], mul[a, c]])
        )

    char_ok = True
    acc = 0
    for i in range(1, field.p + 1):
        acc = field.add(acc, 1)
        if (acc == 0) != (i == field.p):
            char_ok = False
    nonzero = elems[1:]
    return {
        "add_commutative": bool(np.array_equal(add, add.T)),
        "mul_commutative": bool(np.array_equal(mul, mul.T)),
        "add_associative": add_assoc,
        "mul_associative": mul_assoc,
        "distributive": distrib,
        "add_identity": bool(np.array_equal(add[0], elems)),
        "mul_identity": bool(np.array_equal(mul[1], elems)),
        "add_inverse": bool(np.all(add[elems, field.neg_table[elems]] == 0)),
        "mul_inverse": bool(np.all(mul[nonzero, field.inv_table[nonzero]] == 1)),
        "no_zero_divisors": bool(np.all(mul[1:, 1:] != 0)),
        "characteristic": char_ok,
    }
