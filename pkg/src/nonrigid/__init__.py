"""Non-rigidity witnesses for matrices M(x, y) = f(x+y) over GF(q)^n.

The pipeline: fit a low-degree polynomial that agrees with f almost
everywhere (poly.approximate), factor the induced matrix through its
expansion into low-degree halves (factorize.low_degree_split), and
certify the resulting rank and Hamming-distance bounds exactly
(rigidity).  A brute-force oracle gives ground-truth rigidity profiles
at tiny sizes.
"""

from .factorize import RankFactorization, eval_factorization, low_degree_split, materialize
from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    FormatError,
    MismatchedParametersError,
    NotPrimePowerError,
    SingularMatrixError,
    UnsupportedFieldError,
)
from .field import Field, make_field, supported_orders, verify_axioms
from .formats import (
    read_table,
    read_witness,
    sweep_to_csv,
    table_from_text,
    table_to_text,
    witness_from_text,
    witness_to_text,
    write_table,
    write_witness,
)
from .linalg import EchelonBasis, Matrix, matmul, rank, solve, spanning_rows
from .poly import (
    FunctionTable,
    Polynomial,
    approximate,
    interpolate_full,
    interpolate_via_solve,
    monomial,
    to_table,
)
from .rigidity import (
    RigidityProfile,
    SweepRow,
    VerificationReport,
    Witness,
    agreement_threshold,
    brute_force_rigidity,
    build_matrix,
    build_witness,
    integer_root,
    random_function,
    random_values,
    tradeoff_sweep,
    verify_witness,
)
from .space import (
    DegreeProfile,
    binary_embedding_holds,
    binary_entropy,
    count_monomials,
    decode_point,
    degree_profile,
    encode_point,
    entropy_delta,
    enumerate_monomials,
    min_degree_for_agreement,
)

__version__ = "1.0.0"

__all__ = [
    "BudgetExceededError",
    "DegreeProfile",
    "DimensionMismatchError",
    "EchelonBasis",
    "Field",
    "FormatError",
    "FunctionTable",
    "Matrix",
    "MismatchedParametersError",
    "NotPrimePowerError",
    "Polynomial",
    "RankFactorization",
    "RigidityProfile",
    "SingularMatrixError",
    "SweepRow",
    "UnsupportedFieldError",
    "VerificationReport",
    "Witness",
    "agreement_threshold",
    "approximate",
    "binary_embedding_holds",
    "binary_entropy",
    "brute_force_rigidity",
    "build_matrix",
    "build_witness",
    "count_monomials",
    "decode_point",
    "degree_profile",
    "encode_point",
    "entropy_delta",
    "enumerate_monomials",
    "eval_factorization",
    "integer_root",
    "interpolate_full",
    "interpolate_via_solve",
    "low_degree_split",
    "make_field",
    "materialize",
    "matmul",
    "min_degree_for_agreement",
    "monomial",
    "random_function",
    "random_values",
    "rank",
    "read_table",
    "read_witness",
    "solve",
    "spanning_rows",
    "supported_orders",
    "sweep_to_csv",
    "table_from_text",
    "table_to_text",
    "to_table",
    "tradeoff_sweep",
    "verify_axioms",
    "verify_witness",
    "witness_from_text",
    "witness_to_text",
    "write_table",
    "write_witness",
]
