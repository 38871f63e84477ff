"""Serialization: golden texts, byte-identical round trips, rejection cases."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from nonrigid import (
    FormatError,
    FunctionTable,
    NotPrimePowerError,
    Polynomial,
    SweepRow,
    Witness,
    build_witness,
    make_field,
    random_function,
    read_table,
    read_witness,
    sweep_to_csv,
    table_from_text,
    table_to_text,
    tradeoff_sweep,
    witness_from_text,
    witness_to_text,
    write_table,
    write_witness,
)

GOLDEN_WITNESS = """\
rigidity-witness v1
q 2
n 2
eps 1/2
d 2
terms 2
0 0 1
1 1 1
bad_count 3
"""

GOLDEN_TABLE = """\
fqn-table v1
q 3
n 1
0 2 1
"""


def tiny_witness() -> Witness:
    f2 = make_field(2)
    poly = Polynomial(f2, 2, {(0, 0): 1, (1, 1): 1})
    return Witness(eps=Fraction(1, 2), d=2, poly=poly, bad_count=3)


def test_witness_golden_text():
    assert witness_to_text(tiny_witness()) == GOLDEN_WITNESS


def test_witness_golden_parse():
    w = witness_from_text(GOLDEN_WITNESS)
    assert w == tiny_witness()
    assert w.q == 2 and w.n == 2 and w.eps == Fraction(1, 2)
    assert w.poly.terms == {(0, 0): 1, (1, 1): 1}


def test_table_golden_both_ways():
    f = FunctionTable(make_field(3), 1, np.array([0, 2, 1], dtype=np.uint8))
    assert table_to_text(f) == GOLDEN_TABLE
    parsed = table_from_text(GOLDEN_TABLE)
    assert parsed.field.q == 3 and parsed.n == 1
    assert np.array_equal(parsed.values, f.values)


@pytest.mark.parametrize("q,n,seed", [(2, 6, 4), (3, 4, 5), (5, 2, 6)])
def test_witness_round_trip_is_byte_identical(q, n, seed):
    w = build_witness(random_function(q, n, seed), Fraction(1, 3))
    text = witness_to_text(w)
    again = witness_from_text(text)
    assert again == w
    assert witness_to_text(again) == text


@pytest.mark.parametrize("q,n,seed", [(2, 8, 1), (4, 3, 2), (9, 2, 3)])
def test_table_round_trip_is_byte_identical(q, n, seed):
    f = random_function(q, n, seed)
    text = table_to_text(f)
    again = table_from_text(text)
    assert np.array_equal(again.values, f.values)
    assert table_to_text(again) == text


def test_file_round_trips(tmp_path):
    w = tiny_witness()
    wp = tmp_path / "w.txt"
    write_witness(str(wp), w)
    assert wp.read_text() == GOLDEN_WITNESS
    assert read_witness(str(wp)) == w

    f = random_function(3, 3, 8)
    tp = tmp_path / "t.txt"
    write_table(str(tp), f)
    assert np.array_equal(read_table(str(tp)).values, f.values)


def test_parser_tolerates_blank_lines_and_padding():
    loose = GOLDEN_WITNESS.replace("q 2", "  q 2  ").replace("terms 2", "terms 2\n\n")
    assert witness_from_text(loose) == tiny_witness()


@pytest.mark.parametrize(
    "mutate",
    [
        lambda t: t.replace("rigidity-witness v1", "rigidity-witness v2"),
        lambda t: t.replace("rigidity-witness v1\n", ""),
        lambda t: t.replace("\nbad_count 3\n", "\n"),  # truncated
        lambda t: t.replace("0 0 1\n", ""),  # missing term line
        lambda t: t.replace("1 1 1", "1 1 0"),  # zero coefficient
        lambda t: t.replace("1 1 1", "1 1 2"),  # coefficient >= q
        lambda t: t.replace("1 1 1", "0 0 1"),  # duplicate term
        lambda t: t.replace("1 1 1", "1 1"),  # missing coefficient
        lambda t: t.replace("1 1 1", "1 x 1"),  # non-integer exponent
        lambda t: t.replace("eps 1/2", "eps half"),
        lambda t: t.replace("eps 1/2", "eps 1/0"),
        lambda t: t.replace("d 2", "degree 2"),
        lambda t: t + "extra trailing line\n",
        lambda t: t.replace("terms 2", "terms 3"),  # bad_count line eaten as term
        lambda t: t.replace("1 1 1", "3 1 1"),  # exponent above q-1 (poly rejects)
    ],
)
def test_witness_rejects_malformed(mutate):
    with pytest.raises(FormatError):
        witness_from_text(mutate(GOLDEN_WITNESS))


def test_witness_rejects_degree_above_d():
    bad = GOLDEN_WITNESS.replace("d 2", "d 1")
    with pytest.raises(FormatError):
        witness_from_text(bad)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda t: t.replace("fqn-table v1", "fqn-table v0"),
        lambda t: t.replace("0 2 1", "0 2"),  # too few values
        lambda t: t.replace("0 2 1", "0 2 1 0"),  # too many values
        lambda t: t.replace("0 2 1", "0 3 1"),  # value >= q
        lambda t: t.replace("0 2 1", "0 -1 1"),  # negative value
        lambda t: t.replace("0 2 1", "0 z 1"),  # non-integer
        lambda t: t.replace("q 3", "q 6"),  # not a prime power
        lambda t: "",
    ],
)
def test_table_rejects_malformed(mutate):
    # the `q 6` case raises NotPrimePowerError, the rest FormatError
    with pytest.raises((FormatError, NotPrimePowerError)):
        table_from_text(mutate(GOLDEN_TABLE))


def test_table_values_may_wrap_lines():
    text = "fqn-table v1\nq 2\nn 2\n1 0\n1 1\n"
    parsed = table_from_text(text)
    assert np.array_equal(parsed.values, [1, 0, 1, 1])


def test_sweep_csv_golden():
    rows = [
        SweepRow(d=0, m_d=1, deficit=63, half_d=0, rank_bound=2, bad_count=40, distance=2560, exact_rank=2),
        SweepRow(d=2, m_d=22, deficit=42, half_d=1, rank_bound=14, bad_count=30, distance=1920, exact_rank=None),
    ]
    assert sweep_to_csv(rows) == (
        "d,m_d,deficit,half_d,rank_bound,bad_count,distance,exact_rank\n"
        "0,1,63,0,2,40,2560,2\n"
        "2,22,42,1,14,30,1920,\n"
    )


def test_sweep_csv_from_real_sweep():
    rows = tradeoff_sweep(random_function(2, 4, 3), [0, 2, 4])
    text = sweep_to_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "d,m_d,deficit,half_d,rank_bound,bad_count,distance,exact_rank"
    assert len(lines) == 4
    for row, line in zip(rows, lines[1:]):
        assert line.split(",")[0] == str(row.d)
        assert line.split(",")[-1] == str(row.exact_rank)
