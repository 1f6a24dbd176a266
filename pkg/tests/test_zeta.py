"""Tests for p-adic exponents, valuations, and Newton polygons."""

import math

import pytest

from carlitz.errors import StabilizationInconclusiveError
from carlitz.numerals import FieldShape
from carlitz.zeta import (
    INFINITY,
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

Q2 = FieldShape(2, 1)
Q3 = FieldShape(3, 1)


def test_padic_from_int_and_parse():
    y = PadicExponent.from_int(11, 2)
    assert y.is_integer
    assert y.value() == 11
    assert y.digit(0) == 1 and y.digit(1) == 1 and y.digit(2) == 0 and y.digit(3) == 1
    assert y.digit(10) == 0
    assert PadicExponent.parse("11", 2).value() == 11
    z = PadicExponent.parse("1:1", 2)
    assert not z.is_integer
    assert z.preperiod == (1,) and z.period == (1,)
    w = PadicExponent.parse(":12", 3)
    assert w.preperiod == () and w.period == (1, 2)
    assert PadicExponent.parse("21:", 3).value() == 2 + 1 * 3


def test_padic_parse_errors():
    with pytest.raises(ValueError):
        PadicExponent.parse("1:3", 3)   # digit out of range
    with pytest.raises(ValueError):
        PadicExponent.parse("-4", 2)


def test_padic_all_zero_period_normalizes():
    y = PadicExponent(2, (1, 0, 1), (0,))
    assert y.is_integer
    assert y.value() == 5
    assert str(PadicExponent.parse("1:1", 2)) == "1:1"


def test_truncation():
    # all-twos stream over p=3: 2 + 2*3 + 2*9 = 26
    y = PadicExponent.parse(":2", 3)
    assert y.truncation(2) == 26
    assert y.truncation(0) == 2
    assert truncation(y, 1, 3) == 8
    z = PadicExponent.parse("1:01", 2)
    assert z.truncation(3) == 1 + 4   # digits 1,0,1,0
    assert truncation(26, 1, 3) == 8  # plain integers truncate too


def test_nonzero_classes():
    y = PadicExponent.parse("1:01", 2)   # nonzero digits at even indices
    assert y.nonzero_classes(FieldShape(2, 2)) == (0,)
    z = PadicExponent.parse(":1", 2)
    assert z.nonzero_classes(FieldShape(2, 2)) == (0, 1)


def test_valuation_goldens_q3():
    assert valuation(0, 2, Q3) == 0
    assert valuation(1, 2, Q3) == 2
    assert valuation(2, 2, Q3) == INFINITY
    assert valuation(1, 0, Q3) == INFINITY
    # greedy of U_2(8) is (2, 6); only the coefficient on the first part survives
    assert valuation(1, 8, Q3) == 2
    # greedy of U_3(8) is (2, 6, 0): v_2 = 2*2 + 1*6
    assert valuation(2, 8, Q3) == 10


def test_valuation_matches_relaxed_greedy_weight():
    from carlitz.compositions import greedy_relaxed_split

    for y in range(1, 80):
        for m in range(1, 4):
            v = valuation(m, y, Q3)
            if v is INFINITY or v == INFINITY:
                continue
            g = greedy_relaxed_split(m + 1, y, Q3)
            assert v == sum((m + 1 - j) * x for j, x in enumerate(g.parts, start=1))


def test_integer_polygon():
    poly = polygon_for_integer(2, Q3)
    assert poly.points == ((0, 0), (1, 2))
    assert poly.slopes == (2,)
    assert poly.degree == 1
    assert poly.is_own_lower_hull()
    poly = polygon_for_integer(26, Q3)
    assert poly.points[0] == (0, 0)
    assert all(a < b for a, b in zip(poly.slopes, poly.slopes[1:]))


def test_integer_polygon_max_m_cutoff():
    full = polygon_for_integer(26, Q3)
    cut = polygon_for_integer(26, Q3, max_m=1)
    assert cut.points == full.points[:2]


def test_slopes_dispatch():
    assert slopes(2, Q3) == (2,)
    y = PadicExponent.parse("1:1", 2)
    got = slopes(y, Q2, max_m=3)
    assert got == (1, 3, 7)
    with pytest.raises(ValueError):
        slopes(y, Q2)   # digit streams need an explicit cap


def test_truncation_witness_all_ones():
    y = PadicExponent.parse(":1", 2)
    t_prime, comp = truncation_witness(2, y, Q2)
    assert t_prime == 1
    assert comp.parts == (1, 2)
    assert comp.total() == y.truncation(t_prime)


def test_truncation_witness_single_part():
    y = PadicExponent.parse("01:0001", 2)
    t_prime, comp = truncation_witness(1, y, Q2)
    assert comp.parts == (y.truncation(t_prime),)
    assert comp.parts[0] > 0


def test_truncation_witness_skips_finite_class():
    # class 0 has only finitely many nonzero digits; class 1 repeats forever
    y = PadicExponent.parse("1:01", 2)
    shape = FieldShape(2, 2)
    t_prime, comp = truncation_witness(2, y, shape)
    assert comp.total() == y.truncation(t_prime)
    # the peeled part comes from the infinite class: 2^1 * (2^2)^i terms
    assert comp.parts[0] % 3 == 0


def test_stabilized_valuation_all_ones_q2():
    y = PadicExponent.parse(":1", 2)
    t1, v1 = stabilized_valuation(1, y, Q2)
    t2, v2 = stabilized_valuation(2, y, Q2)
    t3, v3 = stabilized_valuation(3, y, Q2)
    assert (v1, v2, v3) == (1, 4, 11)
    assert t1 <= t2 <= t3


def test_stabilized_valuation_inconclusive():
    y = PadicExponent.parse(":1", 2)
    with pytest.raises(StabilizationInconclusiveError):
        stabilized_valuation(2, y, Q2, t_cap=2)


def test_padic_polygon_all_ones_q3():
    y = PadicExponent.parse(":2", 3)   # the all-(p-1)s stream over p=3
    poly = polygon_for_padic(y, Q3, 3)
    assert poly.points[0] == (0, 0)
    assert len(poly.points) == 4
    assert all(a < b for a, b in zip(poly.slopes, poly.slopes[1:]))
    assert poly.is_own_lower_hull()
    assert poly.thresholds[0] == 0
    assert all(t >= 0 for t in poly.thresholds)


def test_equivalent_streams_same_polygon():
    # ":10" and "1:01" denote the same digit stream
    a = PadicExponent.parse(":10", 2)
    b = PadicExponent.parse("1:01", 2)
    assert [a.digit(i) for i in range(10)] == [b.digit(i) for i in range(10)]
    pa = polygon_for_padic(a, Q2, 3)
    pb = polygon_for_padic(b, Q2, 3)
    assert pa.points == pb.points


def test_hull_check():
    assert hull_check(((0, 0), (1, 2)))
    assert hull_check(((0, 0), (1, 1), (2, 3)))
    assert hull_check(((0, 0),))
    assert not hull_check(((0, 0), (1, 2), (2, 3)))   # slopes decrease
    assert not hull_check(((0, 0), (2, 1)))           # skips x = 1
    assert not hull_check(((0, 0), (1, 1), (2, 2)))   # equal slopes
    with pytest.raises(ValueError):
        hull_check(((1, 0), (2, 1)))                  # must start at the origin


def test_polygon_infinity_marker():
    assert valuation(2, 2, Q3) is INFINITY
    assert math.isinf(INFINITY)


def test_valuation_against_power_sum_degree():
    # v_m equals m*y minus the degree of the direct monic power sum
    from carlitz.powersums import FqField, monic_power_sum

    for shape in (Q2, Q3):
        field = FqField.for_shape(shape)
        for y in range(1, 41):
            for m in range(1, 4):
                deg = monic_power_sum(m, y, field).degree()
                v = valuation(m, y, shape)
                if deg is None:
                    assert v == INFINITY, (shape.p, m, y)
                else:
                    assert v == m * y - deg, (shape.p, m, y)
