"""Integer lattice of fold-count vectors.

Fold-count vectors of positive multiples of q - 1 form the intersection of
an integer lattice with the nonnegative orthant. The lattice is spanned by
the columns of a fixed s x s basis matrix, and membership questions (is u
such an image, does it dominate a sum of m - 1 such images, what is the
largest number of images it splits into) all reduce to divisibility and
size tests on s integer numerators. No rational or floating arithmetic is
used anywhere; the common denominator q - 1 is carried symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import EmptySetError
from .numerals import FieldShape

Vector = tuple[int, ...]


def rotate_right(u: Sequence[int], k: int) -> Vector:
    """Rotate coordinates right by k places: result[i] = u[(i - k) mod s]."""
    s = len(u)
    k %= s
    if k == 0:
        return tuple(u)
    return tuple(u[(i - k) % s] for i in range(s))


def scaled_inverse_row(shape: FieldShape, i: int = 0) -> Vector:
    """Row i of (q - 1) times the inverse basis matrix.

    Row 0 is (1, p, ..., p**(s-1)); row i is its right rotation by i, so
    entry j equals p**((j - i) mod s).
    """
    p, s = shape.p, shape.s
    return tuple(p ** ((j - i) % s) for j in range(s))


@dataclass(frozen=True, slots=True)
class BasisMatrix:
    """Basis of the fold-count lattice; column i is p*e_(i-1) - e_i (mod s)."""

    shape: FieldShape
    rows: tuple[Vector, ...]

    @classmethod
    def build(cls, shape: FieldShape) -> "BasisMatrix":
        p, s = shape.p, shape.s
        rows = []
        for r in range(s):
            row = []
            for c in range(s):
                entry = 0
                if r == (c - 1) % s:
                    entry += p
                if r == c:
                    entry -= 1
                row.append(entry)
            rows.append(tuple(row))
        return cls(shape, tuple(rows))

    def apply(self, coords: Sequence[int]) -> Vector:
        """Image of a coordinate vector: entry j is p*a[(j+1) mod s] - a[j]."""
        p, s = self.shape.p, self.shape.s
        if len(coords) != s:
            raise ValueError(f"expected {s} coordinates, got {len(coords)}")
        return tuple(p * coords[(j + 1) % s] - coords[j] for j in range(s))


@dataclass(frozen=True, slots=True)
class ScaledCoords:
    """Coordinates of a vector in the lattice basis, scaled by q - 1.

    The true coordinates are numerators[i] / denominator; keeping the
    numerators exact avoids rationals while preserving every comparison.
    """

    numerators: Vector
    denominator: int

    @property
    def min_numerator(self) -> int:
        return min(self.numerators)

    @property
    def argmin(self) -> int:
        m = self.min_numerator
        return self.numerators.index(m)

    def is_integral(self) -> bool:
        return all(n % self.denominator == 0 for n in self.numerators)

    def integral_coords(self) -> Vector:
        if not self.is_integral():
            raise ValueError("coordinates are not integral")
        return tuple(n // self.denominator for n in self.numerators)

    def ceil(self, i: int) -> int:
        """Smallest integer at least numerators[i] / denominator."""
        n, d = self.numerators[i], self.denominator
        return -((-n) // d)


def scaled_inverse_coords(u: Sequence[int], shape: FieldShape) -> ScaledCoords:
    """Exact basis coordinates of u, scaled by the denominator q - 1.

    numerators[i] = sum_j u[(i + j) mod s] * p**j, valid for any integer
    vector (negative entries included).
    """
    p, s = shape.p, shape.s
    if len(u) != s:
        raise ValueError(f"expected a length-{s} vector, got {len(u)}")
    nums = []
    for i in range(s):
        total = 0
        for j in range(s):
            total += u[(i + j) % s] * p**j
        nums.append(total)
    return ScaledCoords(tuple(nums), shape.q - 1)


def _check_nonnegative(u: Sequence[int], shape: FieldShape) -> None:
    if len(u) != shape.s:
        raise ValueError(f"expected a length-{shape.s} vector, got {len(u)}")
    if any(x < 0 for x in u):
        raise ValueError(f"fold-count vectors are nonnegative, got {tuple(u)}")


def is_part_vector(u: Sequence[int], shape: FieldShape) -> bool:
    """True when u is the fold-count vector of a positive multiple of q - 1.

    Equivalently: u is nonzero and its basis coordinates are integers. One
    numerator decides; divisibility of the others follows because p is
    invertible mod q - 1.
    """
    _check_nonnegative(u, shape)
    if not any(u):
        return False
    return scaled_inverse_coords(u, shape).numerators[0] % (shape.q - 1) == 0


def admits_split(u: Sequence[int], m: int, shape: FieldShape) -> bool:
    """True when u strictly dominates a sum of m - 1 part vectors.

    Any numeral whose fold-count vector is u then has a valid split into m
    constrained parts, and conversely. The test is m - 1 < min coordinate,
    performed on integer numerators: min_i num_i > (m - 1) * (q - 1).
    """
    if m < 1:
        raise ValueError(f"part count m must be at least 1, got {m}")
    _check_nonnegative(u, shape)
    coords = scaled_inverse_coords(u, shape)
    return coords.min_numerator > (m - 1) * (shape.q - 1)


def split_rank(u: Sequence[int], shape: FieldShape) -> int:
    """Largest m such that u is a sum of m part vectors (0 if none).

    For a part vector the rank equals the minimal basis coordinate, which
    is a positive integer.
    """
    if not is_part_vector(u, shape):
        return 0
    coords = scaled_inverse_coords(u, shape)
    return coords.min_numerator // (shape.q - 1)


def has_split_rank(u: Sequence[int], m: int, shape: FieldShape) -> bool:
    """True when u splits into exactly m part vectors and no more."""
    if m < 1:
        raise ValueError(f"rank m must be at least 1, got {m}")
    return split_rank(u, shape) == m


def has_split_rank_at(u: Sequence[int], m: int, i: int, shape: FieldShape) -> bool:
    """Rank test refined by where the minimal coordinate is attained."""
    if not (0 <= i < shape.s):
        raise ValueError(f"coordinate index {i} out of range for s={shape.s}")
    if not has_split_rank(u, m, shape):
        return False
    coords = scaled_inverse_coords(u, shape)
    return coords.numerators[i] == coords.min_numerator


def descend(v: Sequence[int], shape: FieldShape) -> Vector:
    """One descent step inside the part-vector cone.

    Given v whose scaled coordinates have their minimum c_0 > 1 at index 0,
    build integer coordinates d by d_0 = ceil(c_0) - 1 and, walking i from
    s - 1 down to 1, d_i = min(ceil(c_i) - 1, p * d_(i+1 mod s)). The image
    w of d is a part vector strictly dominated by v whose minimal
    coordinate is d_0 with c_0 - 1 <= d_0 < c_0.

    The caller must pre-rotate so the minimum sits at index 0.
    """
    p, s = shape.p, shape.s
    den = shape.q - 1
    coords = scaled_inverse_coords(v, shape)
    nums = coords.numerators
    if nums[0] != coords.min_numerator:
        raise ValueError(
            "minimal scaled coordinate must sit at index 0; rotate first"
        )
    if nums[0] <= den:
        raise ValueError("descent needs the minimal coordinate to exceed 1")

    d = [0] * s
    d[0] = coords.ceil(0) - 1
    for i in range(s - 1, 0, -1):
        d[i] = min(coords.ceil(i) - 1, p * d[(i + 1) % s])
    w = tuple(p * d[(j + 1) % s] - d[j] for j in range(s))

    # The construction guarantees these; they are cheap enough to keep on.
    assert all(x >= 0 for x in w) and any(w)
    assert all(wi <= vi for wi, vi in zip(w, v)) and tuple(v) != w
    assert d[0] == min(d)
    assert nums[0] - den <= d[0] * den < nums[0]
    assert is_part_vector(w, shape)
    return w


def descent_chain(u: Sequence[int], m: int, shape: FieldShape) -> list[Vector]:
    """A strictly increasing chain of m - 1 part vectors dominated by u.

    Witnesses that u admits an m-part split: each step rotates the current
    vector so its minimal scaled coordinate sits at index 0, descends, and
    rotates back (rotation permutes the part-vector cone, so membership is
    preserved). Returned smallest first.
    """
    _check_nonnegative(u, shape)
    if not admits_split(u, m, shape):
        raise EmptySetError(
            f"{tuple(u)} does not admit a split into {m} parts"
        )
    s = shape.s
    chain: list[Vector] = []
    current = tuple(u)
    for _ in range(m - 1):
        coords = scaled_inverse_coords(current, shape)
        k = coords.argmin
        rotated = rotate_right(current, (s - k) % s)
        w = rotate_right(descend(rotated, shape), k)
        assert is_part_vector(w, shape)
        assert all(a <= b for a, b in zip(w, current)) and w != current
        chain.append(w)
        current = w
    chain.reverse()
    return chain
