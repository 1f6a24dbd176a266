"""Base-p digit calculus for nonnegative integers.

Everything downstream (split enumeration, the fold-count lattice, power
sums) is phrased in terms of base-p digits rather than integer arithmetic:
the multiset of prime powers making up a numeral, the digit sum, carry-free
families, and the fold-count vector that collapses digit positions by their
residue class mod s.

A ``Numeral`` stores the little-endian digit sequence as the primary
representation; the integer value is derived on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (desk scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, slots=True)
class FieldShape:
    """A prime p and extension degree s, fixing the field size q = p**s."""

    p: int
    s: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not isinstance(self.s, int):
            raise TypeError("p and s must be integers")
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.s < 1:
            raise ValueError(f"s must be at least 1, got {self.s}")

    @property
    def q(self) -> int:
        return self.p**self.s

    def __str__(self) -> str:
        return f"q={self.q} (p={self.p}, s={self.s})"


def digits_of(value: int, p: int) -> tuple[int, ...]:
    """Little-endian base-p digits of a nonnegative integer.

    The zero numeral has the empty digit tuple.
    """
    if value < 0:
        raise ValueError("numerals are nonnegative")
    out = []
    while value:
        value, d = divmod(value, p)
        out.append(d)
    return tuple(out)


def value_of(digits: Sequence[int], p: int) -> int:
    total = 0
    for d in reversed(digits):
        total = total * p + d
    return total


@dataclass(frozen=True, slots=True)
class Numeral:
    """A nonnegative integer held as its little-endian base-p digits."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.base):
            raise ValueError(f"base must be prime, got {self.base}")
        if any(not (0 <= d < self.base) for d in self.digits):
            raise ValueError(f"digits out of range for base {self.base}: {self.digits}")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("digit sequence must not have trailing zeros")

    @classmethod
    def from_int(cls, value: int, p: int) -> "Numeral":
        return cls(p, digits_of(value, p))

    @classmethod
    def from_digits(cls, digits: Iterable[int], p: int) -> "Numeral":
        ds = list(digits)
        while ds and ds[-1] == 0:
            ds.pop()
        return cls(p, tuple(ds))

    @classmethod
    def parse(cls, text: str, p: int | None = None) -> "Numeral":
        """Parse a decimal string, or an explicit digit string like ``11212_3``.

        The underscore form lists digits most significant first, matching how
        base-p numerals are usually written out.
        """
        text = text.strip()
        if "_" in text:
            body, _, base_text = text.rpartition("_")
            base = int(base_text)
            if p is not None and base != p:
                raise ValueError(f"explicit base {base} does not match p={p}")
            if not body or not body.isdigit():
                raise ValueError(f"malformed base-p numeral: {text!r}")
            digits = tuple(int(ch) for ch in reversed(body))
            return cls.from_digits(digits, base)
        if p is None:
            raise ValueError("decimal numerals need p to fix the digit base")
        return cls.from_int(int(text), p)

    @property
    def value(self) -> int:
        return value_of(self.digits, self.base)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return self.base_p_str

    @property
    def base_p_str(self) -> str:
        """Render as ``11212_3`` (most significant digit first)."""
        if not self.digits:
            return f"0_{self.base}"
        body = "".join(str(d) for d in reversed(self.digits))
        return f"{body}_{self.base}"

    def digit(self, i: int) -> int:
        return self.digits[i] if 0 <= i < len(self.digits) else 0

    def is_zero(self) -> bool:
        return not self.digits


def _require_numeral(n: "Numeral | int", p: int | None) -> Numeral:
    if isinstance(n, Numeral):
        if p is not None and n.base != p:
            raise ValueError(f"numeral has base {n.base}, expected {p}")
        return n
    if p is None:
        raise ValueError("plain integers need p to fix the digit base")
    return Numeral.from_int(n, p)


def exponent_multiset(n: "Numeral | int", p: int | None = None) -> tuple[int, ...]:
    """Digit positions of n with multiplicity, nondecreasing.

    Position k is repeated digit-many times: 131 = 11212_3 gives
    (0, 0, 1, 2, 2, 3, 4).
    """
    num = _require_numeral(n, p)
    out: list[int] = []
    for k, d in enumerate(num.digits):
        out.extend([k] * d)
    return tuple(out)


def power_multiset(n: "Numeral | int", p: int | None = None) -> tuple[int, ...]:
    """The multiset of prime powers adding up to n, smallest first.

    Each power p**k occurs with multiplicity equal to the k-th digit, so no
    power appears more than p - 1 times and the entries sum back to n.
    """
    num = _require_numeral(n, p)
    base = num.base
    return tuple(base**k for k in exponent_multiset(num))


def deg_p(n: "Numeral | int", p: int | None = None) -> int:
    """Index of the most significant nonzero digit."""
    num = _require_numeral(n, p)
    if num.is_zero():
        raise ValueError("deg_p is undefined for zero")
    return len(num.digits) - 1


def digit_sum(n: "Numeral | int", p: int | None = None) -> int:
    """Sum of the base-p digits (the size of the power multiset)."""
    num = _require_numeral(n, p)
    return sum(num.digits)


def carry_free(parts: Sequence["Numeral | int"], p: int | None = None) -> bool:
    """True when adding the parts produces no base-p carries.

    Position by position, the digits of the parts must sum to at most
    p - 1. Equivalently, the power multisets of the parts partition the
    power multiset of the sum (so the digit sum is additive).
    """
    nums = [_require_numeral(x, p) for x in parts]
    if not nums:
        return True
    base = nums[0].base
    if any(x.base != base for x in nums):
        raise ValueError("parts must share one base")
    width = max((len(x.digits) for x in nums), default=0)
    for j in range(width):
        if sum(x.digit(j) for x in nums) >= base:
            return False
    return True


def fold_counts(n: "Numeral | int", shape: FieldShape) -> tuple[int, ...]:
    """Fold digit sums by position residue mod s.

    Coordinate h collects the digits at positions congruent to h mod s:
    fold_counts(11212_3) = (5, 2) for s = 2. Additive on carry-free
    families of numerals.
    """
    num = _require_numeral(n, shape.p)
    out = [0] * shape.s
    for i, d in enumerate(num.digits):
        out[i % shape.s] += d
    return tuple(out)


def fold_counts_int(value: int, shape: FieldShape) -> tuple[int, ...]:
    """Fast-path fold_counts for plain integers (no Numeral construction)."""
    if value < 0:
        raise ValueError("numerals are nonnegative")
    p, s = shape.p, shape.s
    out = [0] * s
    i = 0
    while value:
        value, d = divmod(value, p)
        out[i] += d
        i += 1
        if i == s:
            i = 0
    return tuple(out)


def class_powers(n: "Numeral | int", shape: FieldShape, h: int) -> tuple[int, ...]:
    """Entries of the power multiset whose exponents are h mod s, ascending.

    The fold-count coordinate h is exactly the length of this sequence.
    """
    if not (0 <= h < shape.s):
        raise ValueError(f"class index h must lie in [0, {shape.s})")
    num = _require_numeral(n, shape.p)
    p, s = shape.p, shape.s
    out: list[int] = []
    for k, d in enumerate(num.digits):
        if k % s == h:
            out.extend([p**k] * d)
    return tuple(out)
