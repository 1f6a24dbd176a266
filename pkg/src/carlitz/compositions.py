"""Carry-free splits of a numeral and their extremal elements.

A valid m-part split of N is an ordered tuple (X_1, ..., X_m) of positive
integers that sum to N without base-p carries, with every part except the
last divisible by q - 1. The relaxed variant also admits a zero last part.
The weight of a split is X_1 + 2*X_2 + ... + m*X_m.

Two independent routes to the maximal-weight split live here. The brute
force route enumerates every split by distributing each base-p digit of N
among the parts (vectorized in blocks, guarded by a tuple budget). The
greedy route builds the last part directly: it scans candidate fold-count
vectors b <= fold_counts(N) whose remainder still splits into m - 1 part
vectors, realizes each candidate as the largest numeral taking the top
entries of every residue class, keeps the maximum, and recurses.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BudgetExceededError, EmptySetError, InfeasibleMatrixError
from .lattice import admits_split, is_part_vector, scaled_inverse_coords
from .numerals import FieldShape, Numeral, carry_free, class_powers, digits_of, fold_counts_int

DEFAULT_SPLIT_BUDGET = 10**7

# Rows per vectorized block; bounds peak memory at a few tens of MB.
_BLOCK_ROWS = 1 << 19

# Part values above this would not be safe in int64 blocks; fall back to
# plain integer enumeration (such cells are sparse, so the budget already
# keeps them small).
_INT64_SAFE = 1 << 60


@dataclass(frozen=True, slots=True)
class Composition:
    """An ordered split (X_1, ..., X_m); parts are plain integers."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("a composition needs at least one part")
        if any(x < 0 for x in self.parts):
            raise ValueError(f"parts must be nonnegative: {self.parts}")

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum((j + 1) * x for j, x in enumerate(self.parts))

    def total(self) -> int:
        return sum(self.parts)

    def base_p(self, p: int) -> tuple[str, ...]:
        return tuple(Numeral.from_int(x, p).base_p_str for x in self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.parts) + ")"


def weight(x: "Composition | Sequence[int]") -> int:
    """Index-weighted sum of the parts: X_1 + 2*X_2 + ... + m*X_m."""
    parts = x.parts if isinstance(x, Composition) else tuple(x)
    return sum((j + 1) * v for j, v in enumerate(parts))


@dataclass(frozen=True, slots=True)
class ColumnMatrix:
    """Fold-count columns of a split, one column per part."""

    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.columns:
            raise ValueError("a column matrix needs at least one column")
        s = len(self.columns[0])
        if any(len(c) != s for c in self.columns):
            raise ValueError("columns must share one length")
        if any(x < 0 for c in self.columns for x in c):
            raise ValueError("column entries must be nonnegative")

    @property
    def m(self) -> int:
        return len(self.columns)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.columns))

    def column_sum(self) -> tuple[int, ...]:
        return tuple(sum(col[h] for col in self.columns) for h in range(len(self.columns[0])))


def fold_matrix(comp: "Composition | Sequence[int]", shape: FieldShape) -> ColumnMatrix:
    """Column matrix whose j-th column is fold_counts of part j."""
    parts = comp.parts if isinstance(comp, Composition) else tuple(comp)
    return ColumnMatrix(tuple(fold_counts_int(x, shape) for x in parts))


def is_valid_split(
    parts: Sequence[int],
    n: int,
    shape: FieldShape,
    allow_zero_tail: bool = False,
) -> bool:
    """Check the defining conditions of a valid split of n."""
    parts = tuple(parts)
    if not parts:
        return False
    if sum(parts) != n:
        return False
    head, tail = parts[:-1], parts[-1]
    if any(x <= 0 for x in head):
        return False
    if tail < 0 or (tail == 0 and not allow_zero_tail):
        return False
    d = shape.q - 1
    if any(x % d for x in head):
        return False
    return carry_free(parts, shape.p)


@lru_cache(maxsize=None)
def _digit_splits(d: int, m: int) -> tuple[tuple[int, ...], ...]:
    """All ways to write digit d as an ordered sum of m nonnegative shares."""
    if m == 1:
        return ((d,),)
    out = []
    for first in range(d + 1):
        for rest in _digit_splits(d - first, m - 1):
            out.append((first,) + rest)
    return tuple(out)


def split_count(m: int, n: int, shape: FieldShape) -> int:
    """Number of candidate digit distributions examined by brute force."""
    if m < 1:
        raise ValueError(f"part count m must be at least 1, got {m}")
    count = 1
    for d in digits_of(n, shape.p):
        count *= math.comb(d + m - 1, m - 1)
    return count


def _iter_raw_splits(m: int, n: int, shape: FieldShape) -> Iterator[tuple[int, ...]]:
    """Every digit distribution of n into m parts, in a fixed order."""
    p = shape.p
    digits = digits_of(n, p)
    if not digits:
        yield (0,) * m
        return
    scaled = [
        [tuple(share * p**j for share in row) for row in _digit_splits(d, m)]
        for j, d in enumerate(digits)
    ]
    for choice in itertools.product(*scaled):
        yield tuple(sum(col) for col in zip(*choice))


def enumerate_splits(
    m: int,
    n: int,
    shape: FieldShape,
    allow_zero_tail: bool = False,
    budget: int = DEFAULT_SPLIT_BUDGET,
) -> Iterator[Composition]:
    """All valid m-part splits of n, duplicate free, in a fixed order.

    The candidate count is checked against the budget before any work, so
    the budget error is raised eagerly rather than mid-iteration.
    """
    if m < 1:
        raise ValueError(f"part count m must be at least 1, got {m}")
    if n < 1:
        raise ValueError(f"the split target must be positive, got {n}")
    needed = split_count(m, n, shape)
    relaxed_extra = (
        m >= 2 and allow_zero_tail and n % (shape.q - 1) == 0
    )
    if relaxed_extra:
        needed += split_count(m - 1, n, shape)
    if needed > budget:
        raise BudgetExceededError(needed, budget)

    def _generate() -> Iterator[Composition]:
        d = shape.q - 1
        for parts in _iter_raw_splits(m, n, shape):
            if any(x <= 0 for x in parts):
                continue
            if d > 1 and any(x % d for x in parts[:-1]):
                continue
            yield Composition(parts)
        if relaxed_extra:
            # A zero last part forces the first m - 1 parts to form a valid
            # (m-1)-part split on their own, and conversely.
            for comp in enumerate_splits(m - 1, n, shape, budget=budget):
                yield Composition(comp.parts + (0,))

    return _generate()


@dataclass(frozen=True, slots=True)
class BruteForceOutcome:
    """Everything the exhaustive scan of one cell (m, N) learned."""

    exists: bool
    candidates: int
    max_weight: int | None = None
    optimum: tuple[int, ...] | None = None
    n_optima: int = 0
    alternate: tuple[int, ...] | None = None


def _scan_blocks(
    m: int,
    n: int,
    shape: FieldShape,
    budget: int,
    existence_only: bool,
) -> BruteForceOutcome:
    """Vectorized exhaustive scan over all digit distributions of n."""
    p = shape.p
    d = shape.q - 1
    digits = digits_of(n, p)
    total = split_count(m, n, shape)
    if total > budget:
        raise BudgetExceededError(total, budget)
    if n >= _INT64_SAFE:
        return _scan_plain(m, n, shape, total, existence_only)

    per_position = [
        np.array(_digit_splits(dig, m), dtype=np.int64) * (p**j)
        for j, dig in enumerate(digits)
    ]

    # Low positions are materialized as one block; the remaining positions
    # contribute a small outer loop of offsets.
    base = np.zeros((1, m), dtype=np.int64)
    outer: list[np.ndarray] = []
    rows = 1
    for arr in per_position:
        if rows * arr.shape[0] <= _BLOCK_ROWS:
            base = (base[:, None, :] + arr[None, :, :]).reshape(-1, m)
            rows *= arr.shape[0]
        else:
            outer.append(arr)

    coeff = np.arange(1, m + 1, dtype=np.int64)
    best_weight = -1
    best_count = 0
    best_parts: tuple[int, ...] | None = None
    alt_parts: tuple[int, ...] | None = None

    offsets: Iterable[tuple[np.ndarray, ...]]
    if outer:
        offsets = itertools.product(*outer)
    else:
        offsets = [()]
    for combo in offsets:
        vals = base
        for row in combo:
            vals = vals + row
        mask = vals[:, m - 1] > 0
        for i in range(m - 1):
            col = vals[:, i]
            mask &= col > 0
            if d > 1:
                mask &= col % d == 0
        if not mask.any():
            continue
        if existence_only:
            idx = int(np.argmax(mask))
            return BruteForceOutcome(
                True, total, None, tuple(int(x) for x in vals[idx]), 0, None
            )
        weights = vals @ coeff
        weights = np.where(mask, weights, -1)
        mx = int(weights.max())
        if mx < best_weight:
            continue
        idx = np.nonzero(weights == mx)[0]
        if mx > best_weight:
            best_weight = mx
            best_count = int(idx.size)
            best_parts = tuple(int(x) for x in vals[idx[0]])
            alt_parts = (
                tuple(int(x) for x in vals[idx[1]]) if idx.size > 1 else None
            )
        else:
            best_count += int(idx.size)
            if alt_parts is None:
                alt_parts = tuple(int(x) for x in vals[idx[0]])
    if best_parts is None:
        return BruteForceOutcome(False, total)
    return BruteForceOutcome(
        True, total, best_weight, best_parts, best_count, alt_parts
    )


def _scan_plain(
    m: int, n: int, shape: FieldShape, total: int, existence_only: bool
) -> BruteForceOutcome:
    """Arbitrary-precision fallback scan for huge part values."""
    d = shape.q - 1
    best_weight = -1
    best_count = 0
    best_parts: tuple[int, ...] | None = None
    alt_parts: tuple[int, ...] | None = None
    for parts in _iter_raw_splits(m, n, shape):
        if any(x <= 0 for x in parts):
            continue
        if d > 1 and any(x % d for x in parts[:-1]):
            continue
        if existence_only:
            return BruteForceOutcome(True, total, None, parts, 0, None)
        w = sum((j + 1) * x for j, x in enumerate(parts))
        if w > best_weight:
            best_weight, best_count, best_parts = w, 1, parts
            alt_parts = None
        elif w == best_weight:
            best_count += 1
            if alt_parts is None:
                alt_parts = parts
    if best_parts is None:
        return BruteForceOutcome(False, total)
    return BruteForceOutcome(
        True, total, best_weight, best_parts, best_count, alt_parts
    )


def bruteforce_cell(
    m: int,
    n: int,
    shape: FieldShape,
    budget: int = DEFAULT_SPLIT_BUDGET,
) -> BruteForceOutcome:
    """Exhaustively scan all strict m-part splits of n."""
    if m < 1:
        raise ValueError(f"part count m must be at least 1, got {m}")
    if n < 1:
        raise ValueError(f"the split target must be positive, got {n}")
    return _scan_blocks(m, n, shape, budget, existence_only=False)


def bruteforce_optimum(
    m: int,
    n: int,
    shape: FieldShape,
    budget: int = DEFAULT_SPLIT_BUDGET,
) -> tuple[Composition, bool]:
    """Maximal-weight strict split by exhaustive search, with a uniqueness flag."""
    out = bruteforce_cell(m, n, shape, budget)
    if not out.exists:
        raise EmptySetError(f"no valid {m}-part split of {n} for {shape}")
    assert out.optimum is not None
    return Composition(out.optimum), out.n_optima == 1


def has_valid_split(
    m: int,
    n: int,
    shape: FieldShape,
    budget: int = DEFAULT_SPLIT_BUDGET,
) -> bool:
    """Existence of a strict split, decided by enumeration (short-circuit)."""
    if m < 1:
        raise ValueError(f"part count m must be at least 1, got {m}")
    if n < 1:
        return False
    return _scan_blocks(m, n, shape, budget, existence_only=True).exists


def has_valid_relaxed_split(
    m: int,
    n: int,
    shape: FieldShape,
    budget: int = DEFAULT_SPLIT_BUDGET,
) -> bool:
    """Existence of a relaxed split (zero last part admitted)."""
    if m < 1:
        raise ValueError(f"part count m must be at least 1, got {m}")
    if n < 1:
        return False
    if m == 1:
        return True
    if has_valid_split(m, n, shape, budget):
        return True
    return n % (shape.q - 1) == 0 and has_valid_split(m - 1, n, shape, budget)


def greedy_split(m: int, n: int, shape: FieldShape) -> Composition:
    """The reverse-lexicographically largest valid strict split of n.

    Never enumerates splits. Each stage maximizes the last part over
    feasible fold-count vectors: b is feasible when the leftover vector
    fold_counts(n) - b has integral basis coordinates with minimum at
    least m - 1, which is exactly when the leftover still splits into
    m - 1 part vectors. The candidate for b is realized as the largest
    numeral taking the top b_h entries of each residue class of n.
    """
    if m < 1:
        raise ValueError(f"part count m must be at least 1, got {m}")
    if n < 1:
        raise ValueError(f"the split target must be positive, got {n}")
    if not admits_split(fold_counts_int(n, shape), m, shape):
        raise EmptySetError(f"no valid {m}-part split of {n} for {shape}")

    p, s = shape.p, shape.s
    den = shape.q - 1
    tail: list[int] = []
    remaining = n
    for level in range(m, 1, -1):
        u = fold_counts_int(remaining, shape)
        # Largest value obtainable by taking c entries off the top of each
        # residue class, precomputed as suffix sums.
        tops: list[list[int]] = []
        for h in range(s):
            powers = class_powers(remaining, shape, h)
            acc = [0]
            for value in reversed(powers):
                acc.append(acc[-1] + value)
            tops.append(acc)
        need = (level - 2) * den
        best_value = -1
        for b in itertools.product(*(range(uh + 1) for uh in u)):
            if not any(b):
                continue
            leftover = tuple(uh - bh for uh, bh in zip(u, b))
            nums = scaled_inverse_coords(leftover, shape).numerators
            if nums[0] % den:
                continue
            if min(nums) <= need:
                # Not "> (level - 2) * den" means the leftover cannot absorb
                # level - 1 part vectors.
                continue
            value = sum(tops[h][b[h]] for h in range(s))
            if value > best_value:
                best_value = value
        assert best_value > 0
        tail.append(best_value)
        remaining -= best_value
    parts = [remaining] + tail[::-1]
    result = Composition(tuple(parts))
    assert is_valid_split(result.parts, n, shape)
    return result


def greedy_relaxed_split(m: int, n: int, shape: FieldShape) -> Composition:
    """Largest relaxed split of n: strict if possible, else zero last part."""
    if m < 1:
        raise ValueError(f"part count m must be at least 1, got {m}")
    if n < 1:
        raise ValueError(f"the split target must be positive, got {n}")
    u = fold_counts_int(n, shape)
    if admits_split(u, m, shape):
        return greedy_split(m, n, shape)
    if m >= 2 and n % (shape.q - 1) == 0 and admits_split(u, m - 1, shape):
        inner = greedy_split(m - 1, n, shape)
        return Composition(inner.parts + (0,))
    raise EmptySetError(f"no relaxed {m}-part split of {n} for {shape}")


def realize_matrix(matrix: ColumnMatrix, n: int, shape: FieldShape) -> Composition:
    """The unique class-monotonic split of n with the given fold columns.

    Part j takes the next unconsumed entries of every residue class of n,
    as many as column j prescribes in that class. Feasibility requires the
    columns to sum to fold_counts(n), every column but the last to be a
    part vector, and the last column to be nonzero.
    """
    s = shape.s
    cols = matrix.columns
    if len(cols[0]) != s:
        raise InfeasibleMatrixError(
            f"columns have length {len(cols[0])}, expected {s}"
        )
    target = fold_counts_int(n, shape)
    if matrix.column_sum() != target:
        raise InfeasibleMatrixError(
            f"columns sum to {matrix.column_sum()}, expected {target}"
        )
    for j, col in enumerate(cols[:-1]):
        if not is_part_vector(col, shape):
            raise InfeasibleMatrixError(
                f"column {j + 1} = {col} is not a part vector"
            )
    if not any(cols[-1]):
        raise InfeasibleMatrixError("the last column must be nonzero")

    streams = [list(class_powers(n, shape, h)) for h in range(s)]
    cursors = [0] * s
    parts = []
    for col in cols:
        value = 0
        for h in range(s):
            take = col[h]
            value += sum(streams[h][cursors[h] : cursors[h] + take])
            cursors[h] += take
        parts.append(value)
    result = Composition(tuple(parts))
    assert is_valid_split(result.parts, n, shape, allow_zero_tail=False)
    return result


def is_class_monotonic(
    comp: "Composition | Sequence[int]", n: int, shape: FieldShape
) -> bool:
    """Do the parts consume each residue class of n in order, left to right?

    Concatenating the class subsequences of the parts must reproduce the
    class subsequence of n exactly, for every residue class.
    """
    parts = comp.parts if isinstance(comp, Composition) else tuple(comp)
    for h in range(shape.s):
        joined: list[int] = []
        for x in parts:
            joined.extend(class_powers(x, shape, h))
        if tuple(joined) != class_powers(n, shape, h):
            return False
    return True
