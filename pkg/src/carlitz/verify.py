"""Grid verification sweeps pairing independent computation routes.

The split-optimality sweep checks, cell by cell over (m, N), that the
exhaustive maximal-weight split is unique and equals the greedy
construction, and that emptiness agrees with the lattice membership test.
The power-sum sweep checks the direct field sums against the combinatorial
rebuild, the vanishing criteria, and the predicted degree.

Cells are independent, so both sweeps can fan out over worker processes;
results are merged in grid order and do not depend on the job count.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from multiprocessing import get_context
from typing import Iterable

from .compositions import (
    DEFAULT_SPLIT_BUDGET,
    bruteforce_cell,
    greedy_split,
    has_valid_relaxed_split,
    has_valid_split,
    is_valid_split,
)
from .errors import BudgetExceededError, CarlitzError
from .lattice import admits_split
from .numerals import FieldShape, fold_counts_int
from .powersums import (
    DEFAULT_ELEMENT_BUDGET,
    FqField,
    monic_power_sum,
    monic_power_sum_combinatorial,
    power_sum_below,
    predicted_degree,
)

PASS = "pass"
EMPTY = "empty"
SKIPPED = "skipped"
FAIL = "fail"


@dataclass(frozen=True, slots=True)
class CellOutcome:
    """Result of one grid cell; ``cell`` is (m, N) or (k, N)."""

    cell: tuple[int, int]
    status: str
    detail: dict | None = None


@dataclass(slots=True)
class VerificationReport:
    kind: str
    shape: FieldShape
    params: dict
    outcomes: list[CellOutcome] = field(default_factory=list)
    elapsed: float = 0.0

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, EMPTY: 0, SKIPPED: 0, FAIL: 0}
        for oc in self.outcomes:
            out[oc.status] = out.get(oc.status, 0) + 1
        return out

    def failures(self) -> list[CellOutcome]:
        return [oc for oc in self.outcomes if oc.status == FAIL]

    def ok(self) -> bool:
        return not self.failures()

    def summary(self) -> str:
        counts = self.counts()
        body = ", ".join(f"{k}={v}" for k, v in counts.items() if v)
        return (
            f"{self.kind} sweep on {self.shape}: {len(self.outcomes)} cells"
            f" ({body}) in {self.elapsed:.1f}s"
        )


def _split_cell_outcome(
    m: int, n: int, shape: FieldShape, budget: int
) -> CellOutcome:
    try:
        scan = bruteforce_cell(m, n, shape, budget)
    except BudgetExceededError as err:
        return CellOutcome((m, n), SKIPPED, {"candidates": err.required})
    claims_nonempty = admits_split(fold_counts_int(n, shape), m, shape)
    if not scan.exists:
        if claims_nonempty:
            return CellOutcome(
                (m, n),
                FAIL,
                {"reason": "membership test claims splits exist, none found"},
            )
        return CellOutcome((m, n), EMPTY)
    if not claims_nonempty:
        return CellOutcome(
            (m, n),
            FAIL,
            {
                "reason": "membership test denies existing splits",
                "optimal": list(scan.optimum or ()),
            },
        )
    try:
        greedy = greedy_split(m, n, shape)
    except CarlitzError as err:
        return CellOutcome((m, n), FAIL, {"reason": f"greedy failed: {err}"})
    detail = {
        "optimal": list(scan.optimum or ()),
        "greedy": list(greedy.parts),
        "max_weight": scan.max_weight,
        "n_optima": scan.n_optima,
    }
    if scan.alternate is not None:
        detail["alternate"] = list(scan.alternate)
    problems = []
    if scan.n_optima != 1:
        problems.append(f"{scan.n_optima} optima share the maximal weight")
    if greedy.parts != scan.optimum:
        problems.append("greedy split differs from the exhaustive optimum")
    if greedy.weight != scan.max_weight:
        problems.append("greedy weight differs from the exhaustive maximum")
    if not is_valid_split(greedy.parts, n, shape):
        problems.append("greedy produced an invalid split")
    if problems:
        detail["reason"] = "; ".join(problems)
        return CellOutcome((m, n), FAIL, detail)
    return CellOutcome((m, n), PASS)


def _split_chunk(args) -> list[CellOutcome]:
    p, s, cells, budget = args
    shape = FieldShape(p, s)
    return [_split_cell_outcome(m, n, shape, budget) for m, n in cells]


def _power_sum_cell_outcome(
    k: int,
    n: int,
    shape: FieldShape,
    element_budget: int,
    split_budget: int,
) -> CellOutcome:
    field_ = FqField.for_shape(shape)
    try:
        direct = monic_power_sum(k, n, field_, element_budget)
        rebuilt = monic_power_sum_combinatorial(k, n, shape, split_budget)
        below = power_sum_below(k, n, field_, element_budget)
        relaxed_exists = has_valid_relaxed_split(k + 1, n, shape, split_budget)
        strict_exists = k >= 1 and has_valid_split(k, n, shape, split_budget)
        degree_read = predicted_degree(k, n, shape)
    except BudgetExceededError as err:
        return CellOutcome((k, n), SKIPPED, {"candidates": err.required})
    problems = []
    if direct != rebuilt:
        problems.append(
            f"direct sum {direct} differs from combinatorial rebuild {rebuilt}"
        )
    if (not direct.is_zero()) != relaxed_exists:
        problems.append(
            "vanishing disagrees with relaxed-split existence"
            f" (sum zero: {direct.is_zero()}, splits exist: {relaxed_exists})"
        )
    divisible = n % (shape.q - 1) == 0
    if (not below.is_zero()) != (strict_exists and divisible):
        problems.append(
            "below-degree vanishing disagrees with strict-split criterion"
            f" (sum zero: {below.is_zero()}, splits exist: {strict_exists},"
            f" divisible: {divisible})"
        )
    if direct.is_zero():
        if degree_read is not None:
            problems.append("degree predicted for a vanishing sum")
    elif direct.degree() != degree_read:
        problems.append(
            f"degree {direct.degree()} differs from prediction {degree_read}"
        )
    if problems:
        return CellOutcome((k, n), FAIL, {"reason": "; ".join(problems)})
    return CellOutcome((k, n), PASS)


def _power_sum_chunk(args) -> list[CellOutcome]:
    p, s, cells, element_budget, split_budget = args
    shape = FieldShape(p, s)
    return [
        _power_sum_cell_outcome(k, n, shape, element_budget, split_budget)
        for k, n in cells
    ]


def _chunks(cells: list[tuple[int, int]], n_chunks: int) -> Iterable[list[tuple[int, int]]]:
    size = max(1, (len(cells) + n_chunks - 1) // n_chunks)
    for i in range(0, len(cells), size):
        yield cells[i : i + size]


def verify_split_optimality(
    shape: FieldShape,
    max_m: int,
    max_n: int,
    budget: int = DEFAULT_SPLIT_BUDGET,
    jobs: int = 1,
) -> VerificationReport:
    """Exhaustive-vs-greedy sweep over every cell m <= max_m, N <= max_n."""
    if max_m < 1 or max_n < 1:
        raise ValueError("sweep bounds must be positive")
    start = time.perf_counter()
    cells = [(m, n) for m in range(1, max_m + 1) for n in range(1, max_n + 1)]
    report = VerificationReport(
        kind="split-optimality",
        shape=shape,
        params={"max_m": max_m, "max_n": max_n, "budget": budget},
    )
    if jobs <= 1:
        for m, n in cells:
            report.outcomes.append(_split_cell_outcome(m, n, shape, budget))
    else:
        payloads = [
            (shape.p, shape.s, chunk, budget) for chunk in _chunks(cells, jobs * 4)
        ]
        with get_context("fork").Pool(jobs) as pool:
            for part in pool.map(_split_chunk, payloads):
                report.outcomes.extend(part)
    report.elapsed = time.perf_counter() - start
    return report


def verify_power_sum_grid(
    shape: FieldShape,
    max_k: int,
    max_n: int,
    element_budget: int = DEFAULT_ELEMENT_BUDGET,
    split_budget: int = DEFAULT_SPLIT_BUDGET,
    jobs: int = 1,
) -> VerificationReport:
    """Direct-vs-combinatorial power sum sweep over k <= max_k, N <= max_n."""
    if max_k < 0 or max_n < 1:
        raise ValueError("sweep bounds must cover at least one cell")
    start = time.perf_counter()
    cells = [(k, n) for k in range(0, max_k + 1) for n in range(1, max_n + 1)]
    report = VerificationReport(
        kind="power-sum-grid",
        shape=shape,
        params={
            "max_k": max_k,
            "max_n": max_n,
            "element_budget": element_budget,
            "split_budget": split_budget,
        },
    )
    if jobs <= 1:
        for k, n in cells:
            report.outcomes.append(
                _power_sum_cell_outcome(k, n, shape, element_budget, split_budget)
            )
    else:
        payloads = [
            (shape.p, shape.s, chunk, element_budget, split_budget)
            for chunk in _chunks(cells, jobs * 4)
        ]
        with get_context("fork").Pool(jobs) as pool:
            for part in pool.map(_power_sum_chunk, payloads):
                report.outcomes.extend(part)
    report.elapsed = time.perf_counter() - start
    return report
