"""Command-line front-end: witness pipeline, oracle, and sweep tabulation.

Subcommands
-----------
count Q N D          print m_d(q,n) and the deficit q^n - m_d
witness [TABLE]      build a witness (from a table file or --random SEED)
verify TABLE WITNESS re-check a witness against its table
oracle TABLE         exact rigidity profile of the induced matrix
sweep TABLE          per-degree tabulation, CSV out, optional figures
decompose WITNESS    width statistics of the rank factorization
field-check          exhaustive field-axiom audit for one q

Exit codes: 0 success/verified, 1 verification failed, 2 usage or
parameter error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .factorize import low_degree_split
from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    FormatError,
    MismatchedParametersError,
    NotPrimePowerError,
    UnsupportedFieldError,
)
from .field import make_field, verify_axioms
from .formats import (
    read_table,
    read_witness,
    sweep_to_csv,
    write_witness,
)
from .rigidity import (
    MATRIX_BUDGET,
    ORACLE_BUDGET,
    brute_force_rigidity,
    build_matrix,
    build_witness,
    random_function,
    tradeoff_sweep,
    verify_witness,
)
from .space import count_monomials

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _parse_eps(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a fraction like 1/2, got {text!r}")


def _parse_d_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated degrees, got {text!r}")


def cmd_count(args: argparse.Namespace) -> int:
    make_field(args.q)
    m = count_monomials(args.q, args.n, args.d)
    print(f"{m} {args.q**args.n - m}")
    return EXIT_OK


def _load_function(args: argparse.Namespace):
    if args.random is not None:
        if args.table is not None:
            raise ValueError("give either a table file or --random, not both")
        if args.q is None or args.n is None:
            raise ValueError("--random needs --q and --n")
        return random_function(args.q, args.n, args.random)
    if args.table is None:
        raise ValueError("need a table file or --random SEED")
    return read_table(args.table)


def cmd_witness(args: argparse.Namespace) -> int:
    f = _load_function(args)
    w = build_witness(f, args.eps)
    if args.out:
        write_witness(args.out, w)
    print(
        f"d={w.d} rank_bound={w.rank_bound} distance={w.distance} "
        f"N^{{1+eps}}={w.distance_bound} pass={'true' if w.useful else 'false'}"
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    f = read_table(args.table)
    w = read_witness(args.witness)
    report = verify_witness(f, w, budget=args.budget)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_oracle(args: argparse.Namespace) -> int:
    f = read_table(args.table)
    M = build_matrix(f)
    profile = brute_force_rigidity(M, budget=args.budget)
    print(" ".join(f"{r}:{v}" for r, v in enumerate(profile.values)))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    f = read_table(args.table)
    rows = tradeoff_sweep(f, args.d, budget=args.budget)
    csv_text = sweep_to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    if args.figures:
        from .plots import render_sweep_figures

        for path in render_sweep_figures(rows, args.figures, N=f.field.q**f.n):
            print(path)
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    w = read_witness(args.witness)
    factorization = low_degree_split(w.poly, w.d)
    ok = factorization.width <= w.rank_bound
    print(
        f"width={factorization.width} bound={w.rank_bound} "
        f"terms={len(w.poly.terms)} pass={'true' if ok else 'false'}"
    )
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_field_check(args: argparse.Namespace) -> int:
    field = make_field(args.q)
    results = verify_axioms(field)
    for name, ok in results.items():
        print(f"{name}: {'ok' if ok else 'FAIL'}")
    passed = all(results.values())
    print(f"q={field.q} p={field.p} k={field.k} pass={'true' if passed else 'false'}")
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nonrigid",
        description="Construct and verify non-rigidity witnesses for f(x+y) matrices over GF(q)^n.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("count", help="monomial count m_d(q,n) and deficit")
    p.add_argument("q", type=int)
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("witness", help="build a non-rigidity witness")
    p.add_argument("table", nargs="?", help="function table file (fqn-table v1)")
    p.add_argument("--random", type=int, metavar="SEED", help="use a seeded random function")
    p.add_argument("--q", type=int, help="field order (with --random)")
    p.add_argument("--n", type=int, help="dimension (with --random)")
    p.add_argument("--eps", type=_parse_eps, required=True, metavar="P/Q")
    p.add_argument("--out", help="write the witness file here")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="re-check a witness against its table")
    p.add_argument("table")
    p.add_argument("witness")
    p.add_argument("--budget", type=int, default=MATRIX_BUDGET)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact rigidity profile by exhaustive search")
    p.add_argument("table")
    p.add_argument("--budget", type=int, default=ORACLE_BUDGET)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="per-degree witness tabulation (CSV)")
    p.add_argument("table")
    p.add_argument("--d", type=_parse_d_list, required=True, metavar="D1,D2,...")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.add_argument("--budget", type=int, default=MATRIX_BUDGET)
    p.add_argument("--figures", metavar="DIR", help="also render PNG summaries into DIR")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("decompose", help="factorization width statistics")
    p.add_argument("witness")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("field-check", help="exhaustive field-axiom audit")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_field_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (
        NotPrimePowerError,
        UnsupportedFieldError,
        MismatchedParametersError,
        DimensionMismatchError,
        FormatError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
