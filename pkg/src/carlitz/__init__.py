"""Carry-free composition calculus over F_q[T], power sums, and Newton polygons.

The package splits base-p numerals into carry-free parts subject to
divisibility constraints, finds maximal-weight splits both greedily and
exhaustively, evaluates Carlitz power sums over finite fields directly
and through the split combinatorics, and assembles Newton polygons of
the associated zeta polynomials for integer and digit-stream exponents.
"""

from .compositions import (
    Composition,
    ColumnMatrix,
    bruteforce_optimum,
    enumerate_splits,
    fold_matrix,
    greedy_relaxed_split,
    greedy_split,
    has_valid_relaxed_split,
    has_valid_split,
    is_class_monotonic,
    is_valid_split,
    realize_matrix,
    split_count,
    weight,
)
from .errors import (
    BudgetExceededError,
    CarlitzError,
    EmptySetError,
    InfeasibleMatrixError,
    MonotoneViolationError,
    StabilizationInconclusiveError,
)
from .lattice import (
    BasisMatrix,
    ScaledCoords,
    admits_split,
    descend,
    descent_chain,
    has_split_rank,
    has_split_rank_at,
    is_part_vector,
    scaled_inverse_coords,
    scaled_inverse_row,
    split_rank,
)
from .numerals import (
    FieldShape,
    Numeral,
    carry_free,
    class_powers,
    digit_sum,
    digits_of,
    exponent_multiset,
    fold_counts,
    fold_counts_int,
    power_multiset,
    value_of,
)
from .powersums import (
    FqField,
    FqPolynomial,
    monic_power_sum,
    monic_power_sum_combinatorial,
    multinomial_mod_p,
    power_sum_below,
    predicted_degree,
)
from .verify import (
    CellOutcome,
    VerificationReport,
    verify_power_sum_grid,
    verify_split_optimality,
)
from .zeta import (
    INFINITY,
    NewtonPolygon,
    PadicExponent,
    hull_check,
    polygon_for_integer,
    polygon_for_padic,
    slopes,
    stabilized_valuation,
    truncation,
    truncation_witness,
    valuation,
)

__version__ = "0.1.0"

__all__ = [
    "BasisMatrix",
    "BudgetExceededError",
    "CarlitzError",
    "CellOutcome",
    "ColumnMatrix",
    "Composition",
    "EmptySetError",
    "FieldShape",
    "FqField",
    "FqPolynomial",
    "INFINITY",
    "InfeasibleMatrixError",
    "MonotoneViolationError",
    "NewtonPolygon",
    "Numeral",
    "PadicExponent",
    "ScaledCoords",
    "StabilizationInconclusiveError",
    "VerificationReport",
    "admits_split",
    "bruteforce_optimum",
    "carry_free",
    "class_powers",
    "descend",
    "descent_chain",
    "digit_sum",
    "digits_of",
    "enumerate_splits",
    "exponent_multiset",
    "fold_counts",
    "fold_counts_int",
    "fold_matrix",
    "greedy_relaxed_split",
    "greedy_split",
    "has_split_rank",
    "has_split_rank_at",
    "has_valid_relaxed_split",
    "has_valid_split",
    "hull_check",
    "is_class_monotonic",
    "is_part_vector",
    "is_valid_split",
    "monic_power_sum",
    "monic_power_sum_combinatorial",
    "multinomial_mod_p",
    "polygon_for_integer",
    "polygon_for_padic",
    "power_multiset",
    "power_sum_below",
    "predicted_degree",
    "realize_matrix",
    "scaled_inverse_coords",
    "scaled_inverse_row",
    "slopes",
    "split_count",
    "split_rank",
    "stabilized_valuation",
    "truncation",
    "truncation_witness",
    "valuation",
    "value_of",
    "verify_power_sum_grid",
    "verify_split_optimality",
    "weight",
]
