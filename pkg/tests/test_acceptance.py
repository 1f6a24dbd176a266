"""Acceptance gate: the seven headline checks, at exact equality.

Each test prints one PASS line with its runtime; run with ``pytest -v``
to get a pass/fail line per criterion.
"""

import time

from carlitz.compositions import (
    ColumnMatrix,
    enumerate_splits,
    realize_matrix,
)
from carlitz.numerals import (
    FieldShape,
    class_powers,
    deg_p,
    fold_counts,
    power_multiset,
)
from carlitz.verify import verify_power_sum_grid, verify_split_optimality
from carlitz.zeta import (
    PadicExponent,
    hull_check,
    polygon_for_integer,
    polygon_for_padic,
    valuation,
)

SWEEP_SHAPES = [
    FieldShape(2, 1),
    FieldShape(3, 1),
    FieldShape(2, 2),
    FieldShape(5, 1),
    FieldShape(2, 3),
    FieldShape(3, 2),
]


def _report(name, elapsed, detail=""):
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {name}: PASS in {elapsed:.2f}s{suffix}")


def test_criterion_1_golden_examples():
    start = time.time()
    shape = FieldShape(3, 2)
    assert power_multiset(131, 3) == (1, 1, 3, 9, 9, 27, 81)
    assert deg_p(131, 3) == 4
    assert fold_counts(131, shape) == (5, 2)
    assert class_powers(131, shape, 0) == (1, 1, 9, 9, 81)
    assert class_powers(131, shape, 1) == (3, 27)
    got = sorted(enumerate_splits(2, 131, shape), key=lambda c: c.weight)
    assert [(c.parts, c.weight) for c in got] == [
        ((128, 3), 134),
        ((120, 11), 142),
        ((112, 19), 150),
        ((104, 27), 158),
        ((48, 83), 214),
        ((40, 91), 222),
        ((32, 99), 230),
    ]
    elapsed = time.time() - start
    assert elapsed < 1.0
    _report("criterion 1 (golden digit calculus)", elapsed)


def test_criterion_2_matrix_reconstruction():
    start = time.time()
    got = realize_matrix(ColumnMatrix(((2, 2), (3, 0))), 131, FieldShape(3, 2))
    assert got.parts == (32, 99)
    elapsed = time.time() - start
    assert elapsed < 1.0
    _report("criterion 2 (fold matrix reconstruction)", elapsed)


def test_criterion_3_greedy_equals_unique_optimum_sweep():
    start = time.time()
    total = {"pass": 0, "empty": 0, "skipped": 0, "fail": 0}
    for shape in SWEEP_SHAPES:
        report = verify_split_optimality(shape, 4, 2000, budget=10**7)
        counts = report.counts()
        for key in total:
            total[key] += counts.get(key, 0)
        assert report.ok(), (shape, report.failures()[:3])
    assert total["fail"] == 0
    assert total["pass"] > 0
    elapsed = time.time() - start
    assert elapsed < 300.0
    _report(
        "criterion 3 (greedy vs brute-force sweep)",
        elapsed,
        f"{sum(total.values())} cells: {total}",
    )


def test_criterion_4_power_sum_grid():
    start = time.time()
    cells = 0
    for shape in (FieldShape(2, 1), FieldShape(3, 1), FieldShape(2, 2)):
        report = verify_power_sum_grid(shape, 2, 300)
        assert report.ok(), (shape, report.failures()[:3])
        counts = report.counts()
        assert counts.get("fail", 0) == 0 and counts.get("skipped", 0) == 0
        cells += len(report.outcomes)
    elapsed = time.time() - start
    assert elapsed < 120.0
    _report("criterion 4 (power sum identities)", elapsed, f"{cells} cells")


def test_criterion_5_integer_polygons():
    start = time.time()
    shapes = [FieldShape(2, 1), FieldShape(3, 1), FieldShape(2, 2),
              FieldShape(5, 1), FieldShape(3, 2)]
    checked = 0
    for shape in shapes:
        for y in range(1, 201):
            poly = polygon_for_integer(y, shape)
            sl = poly.slopes
            assert len(poly.points) == poly.degree + 1
            assert all(a < b for a, b in zip(sl, sl[1:])), (shape, y, sl)
            assert hull_check(poly.points), (shape, y)
            checked += 1
    elapsed = time.time() - start
    assert elapsed < 120.0
    _report("criterion 5 (integer polygon hulls)", elapsed, f"{checked} polygons")


def test_criterion_6_digit_stream_polygons():
    start = time.time()
    for shape in (FieldShape(2, 1), FieldShape(3, 1)):
        # the all-(p-1) stream, i.e. the p-adic expansion of -1
        y = PadicExponent(shape.p, (), (shape.p - 1,))
        poly = polygon_for_padic(y, shape, 3)
        assert len(poly.points) == 4
        sl = poly.slopes
        assert all(a < b for a, b in zip(sl, sl[1:])), (shape, sl)
        assert hull_check(poly.points)
        # stabilized values really are the valuations of deep truncations
        deep = y.truncation(max(poly.thresholds) + 6)
        for m, v in poly.points[1:]:
            assert valuation(m, deep, shape) == v
    elapsed = time.time() - start
    assert elapsed < 60.0
    _report("criterion 6 (digit stream stabilization)", elapsed)


def test_criterion_7_property_suites():
    import test_properties

    start = time.time()
    suites = [
        getattr(test_properties, name)
        for name in sorted(dir(test_properties))
        if name.startswith("test_")
    ]
    assert len(suites) >= 15
    for suite in suites:
        suite()
    elapsed = time.time() - start
    _report(
        "criterion 7 (randomized property suites)",
        elapsed,
        f"{len(suites)} suites, >= 1000 cases each",
    )
