"""Line-oriented text formats for witnesses, function tables, and sweeps.

Two file kinds, both headed by a version tag:

    rigidity-witness v1          fqn-table v1
    q <int>                      q <int>
    n <int>                      n <int>
    eps <num>/<den>              <q^n digits, whitespace-separated>
    d <int>
    terms <count>
    <e_1> ... <e_n> <coeff>      (one line per term, canonical order)
    bad_count <int>

Writers are canonical (terms sorted, single spaces, trailing newline),
so write-read-write round-trips are byte-identical.  Sweep results are
emitted as CSV with a fixed column set; an unavailable exact rank
becomes an empty cell.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import FormatError
from .field import make_field
from .poly import FunctionTable, Polynomial
from .rigidity import SweepRow, Witness

WITNESS_HEADER = "rigidity-witness v1"
TABLE_HEADER = "fqn-table v1"
SWEEP_COLUMNS = ("d", "m_d", "deficit", "half_d", "rank_bound", "bad_count", "distance", "exact_rank")


def witness_to_text(w: Witness) -> str:
    lines = [
        WITNESS_HEADER,
        f"q {w.q}",
        f"n {w.n}",
        f"eps {w.eps.numerator}/{w.eps.denominator}",
        f"d {w.d}",
        f"terms {len(w.poly.terms)}",
    ]
    for exps, coeff in w.poly.sorted_terms():
        lines.append(" ".join(str(e) for e in exps) + f" {coeff}")
    lines.append(f"bad_count {w.bad_count}")
    return "\n".join(lines) + "\n"


def table_to_text(f: FunctionTable) -> str:
    lines = [
        TABLE_HEADER,
        f"q {f.field.q}",
        f"n {f.n}",
        " ".join(str(int(v)) for v in f.values),
    ]
    return "\n".join(lines) + "\n"


class _LineReader:
    def __init__(self, text: str, kind: str) -> None:
        self.lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        self.pos = 0
        self.kind = kind

    def next_line(self) -> str:
        if self.pos >= len(self.lines):
            raise FormatError(f"truncated {self.kind} file")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def keyed_int(self, key: str) -> int:
        line = self.next_line()
        parts = line.split()
        if len(parts) != 2 or parts[0] != key:
            raise FormatError(f"expected `{key} <int>`, got {line!r}")
        try:
            return int(parts[1])
        except ValueError:
            raise FormatError(f"expected `{key} <int>`, got {line!r}") from None

    def keyed_fraction(self, key: str) -> Fraction:
        line = self.next_line()
        parts = line.split()
        if len(parts) != 2 or parts[0] != key:
            raise FormatError(f"expected `{key} <num>/<den>`, got {line!r}")
        try:
            return Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"expected `{key} <num>/<den>`, got {line!r}") from None


def witness_from_text(text: str) -> Witness:
    reader = _LineReader(text, "witness")
    if reader.next_line() != WITNESS_HEADER:
        raise FormatError(f"missing `{WITNESS_HEADER}` header")
    q = reader.keyed_int("q")
    n = reader.keyed_int("n")
    eps = reader.keyed_fraction("eps")
    d = reader.keyed_int("d")
    term_count = reader.keyed_int("terms")
    field = make_field(q)
    terms: dict[tuple[int, ...], int] = {}
    for _ in range(term_count):
        parts = reader.next_line().split()
        if len(parts) != n + 1:
            raise FormatError(f"term line needs {n} exponents and a coefficient")
        try:
            numbers = [int(p) for p in parts]
        except ValueError:
            raise FormatError(f"non-integer term line {parts!r}") from None
        exps, coeff = tuple(numbers[:-1]), numbers[-1]
        if not 1 <= coeff < q:
            raise FormatError(f"coefficient {coeff} out of range for GF({q})")
        if exps in terms:
            raise FormatError(f"duplicate term {exps}")
        terms[exps] = coeff
    bad_count = reader.keyed_int("bad_count")
    if reader.pos != len(reader.lines):
        raise FormatError("trailing content after bad_count")
    try:
        poly = Polynomial(field, n, terms)
        return Witness(eps=eps, d=d, poly=poly, bad_count=bad_count)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def table_from_text(text: str) -> FunctionTable:
    reader = _LineReader(text, "table")
    if reader.next_line() != TABLE_HEADER:
        raise FormatError(f"missing `{TABLE_HEADER}` header")
    q = reader.keyed_int("q")
    n = reader.keyed_int("n")
    field = make_field(q)
    flat = " ".join(reader.lines[reader.pos :]).split()
    if len(flat) != q**n:
        raise FormatError(f"expected {q**n} table values, got {len(flat)}")
    try:
        values = np.array([int(v) for v in flat], dtype=np.int64)
    except ValueError:
        raise FormatError("non-integer table value") from None
    if values.size and (values.min() < 0 or values.max() >= q):
        raise FormatError(f"table values must lie in [0, {q})")
    return FunctionTable(field, n, values.astype(np.uint8))


def sweep_to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for r in rows:
        writer.writerow(
            [
                r.d,
                r.m_d,
                r.deficit,
                r.half_d,
                r.rank_bound,
                r.bad_count,
                r.distance,
                "" if r.exact_rank is None else r.exact_rank,
            ]
        )
    return buf.getvalue()


def write_witness(path: str, w: Witness) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(witness_to_text(w))


def read_witness(path: str) -> Witness:
    with open(path, "r", encoding="ascii") as fh:
        return witness_from_text(fh.read())


def write_table(path: str, f: FunctionTable) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(table_to_text(f))


def read_table(path: str) -> FunctionTable:
    with open(path, "r", encoding="ascii") as fh:
        return table_from_text(fh.read())
