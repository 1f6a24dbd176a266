"""Newton polygons of the zeta polynomials z(x, n) in characteristic p.

For a positive integer exponent n the polygon point at index m is the
valuation v_m = (m+1-1)*G_1 + (m+1-2)*G_2 + ... + 1*G_m, read off the
greedy relaxed split G of n into m + 1 parts; v_0 = 0, and indices past
the polynomial degree get an infinity marker (math.inf) and never enter
slope arithmetic.

Exponents in Z_p that are not nonnegative integers are handled through
eventually periodic digit streams. Valuations of the truncations ỹ(t)
stabilize in t; ``stabilized_valuation`` tracks the proven non-increasing
remainder ỹ(t) - G_(m+1) and accepts once it is constant over a window,
reporting the truncation threshold alongside the value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .compositions import Composition, greedy_relaxed_split, is_valid_split
from .errors import EmptySetError, MonotoneViolationError, StabilizationInconclusiveError
from .numerals import FieldShape, digits_of

DEFAULT_TRUNCATION_CAP = 128

INFINITY = math.inf


@dataclass(frozen=True, slots=True)
class PadicExponent:
    """An exponent in Z_p as an eventually periodic base-p digit stream.

    Digits are little endian: ``preperiod`` lists digits 0, 1, ... and
    ``period`` repeats forever after. An all-zero period is normalized
    away, so ``period`` is nonempty exactly when the exponent is not a
    nonnegative integer.
    """

    p: int
    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.p < 2:
            raise ValueError(f"digit base must be at least 2, got {self.p}")
        for d in self.preperiod + self.period:
            if not (0 <= d < self.p):
                raise ValueError(f"digit {d} out of range for base {self.p}")
        if self.period and not any(self.period):
            object.__setattr__(self, "period", ())

    @classmethod
    def from_int(cls, value: int, p: int) -> "PadicExponent":
        return cls(p, digits_of(value, p))

    @classmethod
    def parse(cls, text: str, p: int) -> "PadicExponent":
        """Parse ``PRE:PERIOD`` digit strings (little endian), or a decimal.

        ``1:1`` over p = 2 is the all-ones stream (the 2-adic expansion of
        -1); ``1:01`` has digits 1, 0, 1, 0, 1, ...
        """
        text = text.strip()
        if ":" in text:
            pre_text, _, per_text = text.partition(":")
            if not all(ch.isdigit() for ch in pre_text + per_text):
                raise ValueError(f"malformed digit stream: {text!r}")
            pre = tuple(int(ch) for ch in pre_text)
            per = tuple(int(ch) for ch in per_text)
            return cls(p, pre, per)
        value = int(text)
        if value < 0:
            raise ValueError("negative exponents need an explicit digit stream")
        return cls.from_int(value, p)

    @property
    def is_integer(self) -> bool:
        return not self.period

    def value(self) -> int:
        if not self.is_integer:
            raise ValueError("digit stream does not terminate")
        total = 0
        for d in reversed(self.preperiod):
            total = total * self.p + d
        return total

    def digit(self, i: int) -> int:
        if i < 0:
            raise ValueError("digit indices are nonnegative")
        if i < len(self.preperiod):
            return self.preperiod[i]
        if self.period:
            return self.period[(i - len(self.preperiod)) % len(self.period)]
        return 0

    def truncation(self, t: int) -> int:
        """The integer formed by digits 0 through t inclusive."""
        total = 0
        for i in range(t, -1, -1):
            total = total * self.p + self.digit(i)
        return total

    def nonzero_classes(self, shape: FieldShape) -> tuple[int, ...]:
        """Residue classes mod s holding infinitely many nonzero digits."""
        if shape.p != self.p:
            raise ValueError(f"stream base {self.p} does not match p={shape.p}")
        if self.is_integer:
            return ()
        start = len(self.preperiod)
        span = len(self.period) * shape.s
        classes = set()
        for i in range(start, start + span):
            if self.digit(i):
                classes.add(i % shape.s)
        return tuple(sorted(classes))

    def __str__(self) -> str:
        pre = "".join(str(d) for d in self.preperiod)
        if self.is_integer:
            return str(self.value())
        return f"{pre}:{''.join(str(d) for d in self.period)}"


def truncation(y: "PadicExponent | int", t: int, p: int | None = None) -> int:
    """Sum of y's digits 0..t times their powers; needs p for plain ints."""
    if isinstance(y, PadicExponent):
        return y.truncation(t)
    if p is None:
        raise ValueError("plain integer exponents need p")
    return PadicExponent.from_int(y, p).truncation(t)


def truncation_witness(
    m: int, y: PadicExponent, shape: FieldShape
) -> tuple[int, Composition]:
    """A threshold t' with a relaxed m-part split of every truncation past it.

    For m >= 2, peel blocks of q - 1 entries from a residue class of the
    stream that never runs dry; each block is one constrained part, and the
    untouched remainder of ỹ(t') is the relaxed tail. The returned split
    witnesses that relaxed splits of ỹ(t) exist for every t >= t'.
    """
    if m < 1:
        raise ValueError(f"part count m must be at least 1, got {m}")
    if y.is_integer:
        raise ValueError("witness thresholds are for genuinely p-adic exponents")
    if shape.p != y.p:
        raise ValueError(f"stream base {y.p} does not match p={shape.p}")
    if m == 1:
        t_first = 0
        while y.digit(t_first) == 0:
            t_first += 1
        return t_first, Composition((y.truncation(t_first),))

    classes = y.nonzero_classes(shape)
    assert classes
    h = classes[0]
    p = shape.p
    needed = (m - 1) * (shape.q - 1)

    def class_terms():
        i = h
        while True:
            for _ in range(y.digit(i)):
                yield i
            i += shape.s

    terms = class_terms()
    exponents = [next(terms) for _ in range(needed)]
    t_prime = next(terms)

    block = shape.q - 1
    parts = []
    for j in range(m - 1):
        chunk = exponents[j * block : (j + 1) * block]
        parts.append(sum(p**e for e in chunk))
    assigned = sum(parts)
    tail = y.truncation(t_prime) - assigned
    witness = Composition(tuple(parts) + (tail,))
    assert is_valid_split(
        witness.parts, y.truncation(t_prime), shape, allow_zero_tail=True
    )
    return t_prime, witness


def valuation(m: int, y: int, shape: FieldShape) -> "int | float":
    """Polygon valuation v_m for a nonnegative integer exponent.

    v_0 = 0 always; past the polynomial degree the marker INFINITY is
    returned (the coefficient there is zero).
    """
    if m < 0:
        raise ValueError(f"index m must be nonnegative, got {m}")
    if y < 0:
        raise ValueError("integer exponents are nonnegative here")
    if m == 0:
        return 0
    if y == 0:
        return INFINITY
    try:
        g = greedy_relaxed_split(m + 1, y, shape)
    except EmptySetError:
        return INFINITY
    return sum((m + 1 - j) * g.parts[j - 1] for j in range(1, m + 1))


@dataclass(frozen=True, slots=True)
class StabilizedValuation:
    """A valuation accepted at truncation threshold t_m."""

    m: int
    t_m: int
    value: int


def stabilized_valuation(
    m: int,
    y: PadicExponent,
    shape: FieldShape,
    window: int | None = None,
    t_cap: int = DEFAULT_TRUNCATION_CAP,
) -> tuple[int, int]:
    """Valuation v_m for a p-adic exponent, with its truncation threshold.

    Tracks ỹ(t) minus the relaxed tail of the greedy split into m + 1
    parts. That remainder is non-increasing in t (violations raise, they
    would disprove the underlying monotonicity) and is accepted once
    constant over ``window`` consecutive truncations (default: s plus the
    period length). Returns (t_m, v_m); raises
    StabilizationInconclusiveError when the cap is hit first.
    """
    if m < 0:
        raise ValueError(f"index m must be nonnegative, got {m}")
    if y.is_integer:
        raise ValueError("use valuation() for integer exponents")
    if m == 0:
        return 0, 0
    if window is None:
        window = shape.s + max(1, len(y.period))
    if window < 1:
        raise ValueError(f"window must be positive, got {window}")

    t_start, _ = truncation_witness(m + 1, y, shape)
    previous_remainder: int | None = None
    run_start = t_start
    run_length = 0
    run_remainder: int | None = None
    run_prefix: tuple[int, ...] | None = None
    for t in range(t_start, t_cap + 1):
        g = greedy_relaxed_split(m + 1, y.truncation(t), shape)
        remainder = y.truncation(t) - g.parts[m]
        if previous_remainder is not None and remainder > previous_remainder:
            raise MonotoneViolationError(
                f"tracked remainder grew from {previous_remainder} to "
                f"{remainder} at t={t} (m={m}, y={y})"
            )
        previous_remainder = remainder
        prefix = g.parts[:m]
        if remainder == run_remainder:
            assert prefix == run_prefix
            run_length += 1
        else:
            run_start, run_length = t, 1
            run_remainder, run_prefix = remainder, prefix
        if run_length >= window:
            assert run_prefix is not None
            v = sum((m + 1 - j) * run_prefix[j - 1] for j in range(1, m + 1))
            return run_start, v
    raise StabilizationInconclusiveError(m, t_cap)


@dataclass(frozen=True, slots=True)
class NewtonPolygon:
    """Finite polygon points (m, v_m) with their slope sequence."""

    points: tuple[tuple[int, int], ...]
    thresholds: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("a polygon needs at least the origin point")
        if self.points[0] != (0, 0):
            raise ValueError("polygons start at (0, 0)")

    @property
    def degree(self) -> int:
        return self.points[-1][0]

    @property
    def slopes(self) -> tuple[int, ...]:
        return tuple(
            self.points[i][1] - self.points[i - 1][1]
            for i in range(1, len(self.points))
        )

    def is_own_lower_hull(self) -> bool:
        return hull_check(self.points)


def hull_check(points) -> bool:
    """Are the points their own lower convex hull, one unit step per side?

    Requires the list to start at (0, 0). True when the m coordinates step
    by exactly 1 and the slopes strictly increase, which is exactly the
    simple-zero picture for the polygon.
    """
    pts = list(points)
    if not pts or tuple(pts[0]) != (0, 0):
        raise ValueError("hull check needs points starting at (0, 0)")
    for i in range(1, len(pts)):
        if pts[i][0] - pts[i - 1][0] != 1:
            return False
    slopes = [pts[i][1] - pts[i - 1][1] for i in range(1, len(pts))]
    return all(b > a for a, b in zip(slopes, slopes[1:]))


def polygon_for_integer(
    y: int, shape: FieldShape, max_m: int | None = None
) -> NewtonPolygon:
    """Finite Newton polygon of an integer exponent.

    Walks m upward until the valuation turns infinite (or max_m caps the
    walk); the last finite index is the polynomial degree.
    """
    if y < 0:
        raise ValueError("integer exponents are nonnegative here")
    points = [(0, 0)]
    m = 1
    while max_m is None or m <= max_m:
        v = valuation(m, y, shape)
        if v is INFINITY:
            break
        points.append((m, int(v)))
        m += 1
    return NewtonPolygon(tuple(points))


def polygon_for_padic(
    y: PadicExponent,
    shape: FieldShape,
    max_m: int,
    window: int | None = None,
    t_cap: int = DEFAULT_TRUNCATION_CAP,
) -> NewtonPolygon:
    """Newton polygon of a p-adic exponent up to index max_m.

    The polygon is infinite, so ``max_m`` is required; the thresholds
    tuple records the truncation index at which each valuation was
    accepted (0 for the origin).
    """
    if max_m < 0:
        raise ValueError(f"max_m must be nonnegative, got {max_m}")
    points = [(0, 0)]
    thresholds = [0]
    for m in range(1, max_m + 1):
        t_m, v = stabilized_valuation(m, y, shape, window=window, t_cap=t_cap)
        points.append((m, v))
        thresholds.append(t_m)
    return NewtonPolygon(tuple(points), tuple(thresholds))


def slopes(
    y: "int | PadicExponent",
    shape: FieldShape,
    max_m: int | None = None,
    window: int | None = None,
    t_cap: int = DEFAULT_TRUNCATION_CAP,
) -> tuple[int, ...]:
    """Slope sequence of the Newton polygon of y.

    Integer exponents get their full finite slope list (optionally capped);
    p-adic exponents need max_m.
    """
    if isinstance(y, PadicExponent) and not y.is_integer:
        if max_m is None:
            raise ValueError("p-adic exponents need max_m")
        return polygon_for_padic(y, shape, max_m, window, t_cap).slopes
    value = y.value() if isinstance(y, PadicExponent) else y
    return polygon_for_integer(value, shape, max_m).slopes
