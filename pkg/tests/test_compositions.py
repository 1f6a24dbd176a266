"""Tests for split enumeration, brute-force optima, and the greedy algorithm."""

import random

import pytest

from carlitz.compositions import (
    ColumnMatrix,
    Composition,
    bruteforce_cell,
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
from carlitz.errors import BudgetExceededError, EmptySetError, InfeasibleMatrixError
from carlitz.numerals import FieldShape, fold_counts_int

Q9 = FieldShape(3, 2)

# all two-part splits of 131 over q=9, weights ascending
SPLITS_131 = [
    ((128, 3), 134),
    ((120, 11), 142),
    ((112, 19), 150),
    ((104, 27), 158),
    ((48, 83), 214),
    ((40, 91), 222),
    ((32, 99), 230),
]


def test_composition_basics():
    c = Composition((32, 99))
    assert c.m == 2
    assert c.total() == 131
    assert c.weight == 32 + 2 * 99
    assert weight((32, 99)) == 230
    assert c.base_p(3) == ("1012_3", "10200_3")
    assert list(c) == [32, 99]
    with pytest.raises(ValueError):
        Composition(())
    with pytest.raises(ValueError):
        Composition((3, -1))


def test_is_valid_split_goldens():
    assert is_valid_split((32, 99), 131, Q9)
    assert not is_valid_split((33, 98), 131, Q9)    # base-3 carries
    assert not is_valid_split((99, 32), 131, Q9)    # 32 is not divisible by 8
    assert not is_valid_split((32, 98), 131, Q9)    # wrong total
    assert is_valid_split((131,), 131, Q9)          # single part is unconstrained
    # a zero tail forces every earlier part divisible, so 8 must divide the total
    assert not is_valid_split((32, 99, 0), 131, Q9, allow_zero_tail=True)
    assert not is_valid_split((131, 0), 131, Q9, allow_zero_tail=True)
    assert is_valid_split((16, 0), 16, Q9, allow_zero_tail=True)
    assert not is_valid_split((16, 0), 16, Q9)


def test_enumerate_two_part_splits_of_131():
    got = sorted(enumerate_splits(2, 131, Q9), key=lambda c: c.weight)
    assert [(c.parts, c.weight) for c in got] == SPLITS_131


def test_enumerate_empty_and_relaxed():
    assert list(enumerate_splits(3, 131, Q9)) == []
    # 131 is not a multiple of 8, so relaxed mode adds nothing
    relaxed = sorted(enumerate_splits(2, 131, Q9, allow_zero_tail=True),
                     key=lambda c: c.weight)
    assert [(c.parts, c.weight) for c in relaxed] == SPLITS_131
    # for a multiple of 8 the zero-tail extension appears
    strict = set(c.parts for c in enumerate_splits(2, 80, Q9))
    relaxed = set(c.parts for c in enumerate_splits(2, 80, Q9, allow_zero_tail=True))
    assert (8, 72) in strict and (16, 64) in strict
    assert relaxed == strict | {(80, 0)}
    # 8+8 carries in base 3, so 16 has no strict two-part split at all
    assert list(enumerate_splits(2, 16, Q9)) == []
    relaxed16 = [c.parts for c in enumerate_splits(2, 16, Q9, allow_zero_tail=True)]
    assert relaxed16 == [(16, 0)]


def test_split_count_matches_enumeration():
    rng = random.Random(3)
    shapes = [FieldShape(2, 1), FieldShape(3, 1), Q9, FieldShape(2, 2)]
    for _ in range(200):
        shape = rng.choice(shapes)
        m = rng.randrange(1, 4)
        n = rng.randrange(1, 400)
        raw = split_count(m, n, shape)
        listed = list(enumerate_splits(m, n, shape, budget=10**7))
        assert len(listed) <= raw
        assert len(set(c.parts for c in listed)) == len(listed)
        for c in listed:
            assert is_valid_split(c.parts, n, shape)


def test_enumeration_budget():
    with pytest.raises(BudgetExceededError) as err:
        list(enumerate_splits(4, 10**9, FieldShape(3, 1), budget=100))
    assert err.value.required > err.value.budget


def test_bruteforce_optimum_golden():
    comp, unique = bruteforce_optimum(2, 131, Q9)
    assert comp.parts == (32, 99)
    assert comp.weight == 230
    assert unique
    with pytest.raises(EmptySetError):
        bruteforce_optimum(3, 131, Q9)


def test_bruteforce_cell_details():
    out = bruteforce_cell(2, 131, Q9)
    assert out.exists
    assert out.candidates == split_count(2, 131, Q9)
    assert out.max_weight == 230
    assert out.optimum == (32, 99)
    assert out.n_optima == 1


def test_greedy_golden_q9():
    g = greedy_split(2, 131, Q9)
    assert g.parts == (32, 99)
    assert g.weight == 230


def test_greedy_golden_s1():
    shape = FieldShape(3, 1)
    g = greedy_split(3, 727, shape)
    assert g.total() == 727
    cols = fold_matrix(g, shape).columns
    assert cols[0] == (2,) and cols[1] == (2,)
    assert cols[2] == (fold_counts_int(727, shape)[0] - 4,)
    opt, unique = bruteforce_optimum(3, 727, shape)
    assert unique and opt.parts == g.parts


def test_greedy_empty():
    with pytest.raises(EmptySetError):
        greedy_split(3, 131, Q9)
    with pytest.raises(EmptySetError):
        greedy_split(2, 7, Q9)


def test_greedy_relaxed():
    # strict split exists: relaxed agrees with strict
    assert greedy_relaxed_split(2, 131, Q9).parts == (32, 99)
    # strict set empty but the total divides: the zero-tail element wins
    with pytest.raises(EmptySetError):
        greedy_split(2, 16, Q9)
    assert greedy_relaxed_split(2, 16, Q9).parts == (16, 0)
    assert greedy_relaxed_split(2, 8, Q9).parts == (8, 0)
    # when both kinds exist the strict optimum dominates the zero-tail ones
    strict = greedy_split(2, 80, Q9)
    assert greedy_relaxed_split(2, 80, Q9).parts == strict.parts
    with pytest.raises(EmptySetError):
        greedy_relaxed_split(2, 7, Q9)


def test_existence_helpers():
    assert has_valid_split(2, 131, Q9)
    assert not has_valid_split(3, 131, Q9)
    assert has_valid_relaxed_split(3, 131, Q9) is False
    assert has_valid_relaxed_split(2, 8, Q9)
    assert not has_valid_split(2, 8, Q9)
    assert has_valid_relaxed_split(1, 7, Q9)   # one part, no divisibility constraint


def test_realize_matrix_goldens():
    got = realize_matrix(ColumnMatrix(((2, 2), (3, 0))), 131, Q9)
    assert got.parts == (32, 99)
    got = realize_matrix(ColumnMatrix(((5, 1), (0, 1))), 131, Q9)
    assert got.parts == (104, 27)


def test_realize_matrix_errors():
    # column sums must match the fold counts of n: Gamma(131) = (5, 2)
    with pytest.raises(InfeasibleMatrixError):
        realize_matrix(ColumnMatrix(((2, 2), (2, 0))), 131, Q9)
    # leading columns must be part vectors ((1,1) has numerator 4, not 0 mod 8)
    with pytest.raises(InfeasibleMatrixError):
        realize_matrix(ColumnMatrix(((1, 1), (4, 1))), 131, Q9)
    # last column must be nonzero
    with pytest.raises(InfeasibleMatrixError):
        realize_matrix(ColumnMatrix(((5, 2), (0, 0))), 131, Q9)
    with pytest.raises(InfeasibleMatrixError):
        realize_matrix(ColumnMatrix(((2, 2, 0), (3, 0, 0))), 131, Q9)


def test_class_monotonic():
    assert is_class_monotonic(Composition((32, 99)), 131, Q9)
    assert is_class_monotonic(Composition((104, 27)), 131, Q9)
    # valid splits are class-monotonic by construction; a carried one is not
    assert not is_class_monotonic(Composition((131, 1)), 132, Q9)


def test_vectorized_scan_agrees_with_listing():
    rng = random.Random(29)
    shapes = [FieldShape(2, 1), FieldShape(3, 1), Q9, FieldShape(2, 3), FieldShape(5, 1)]
    for _ in range(300):
        shape = rng.choice(shapes)
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 1500)
        listed = list(enumerate_splits(m, n, shape, budget=10**7))
        out = bruteforce_cell(m, n, shape)
        assert out.exists == bool(listed)
        if listed:
            best = max(listed, key=lambda c: c.weight)
            ties = [c for c in listed if c.weight == best.weight]
            assert out.max_weight == best.weight
            assert out.n_optima == len(ties)
            assert out.optimum in {c.parts for c in ties}
