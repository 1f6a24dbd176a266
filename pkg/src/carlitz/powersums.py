"""Power sums of polynomials over a finite field F_q.

Two independent computations of the same object live here. The direct
route sums n**N over all monic polynomials n of a fixed degree (or over
all polynomials below a degree), using schoolbook field arithmetic and
binary powering. The combinatorial route rebuilds the monic sum from
relaxed digit splits of N: each split contributes its multinomial
coefficient mod p (nonzero exactly because the split is carry-free) on
the monomial T**(weight - N), with sign (-1)**k.

F_q is realized as F_p[x] modulo the least monic irreducible of degree s,
ordering candidate moduli by coefficients with the constant term most
significant. Elements are coefficient tuples of length s.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator, Sequence

import numpy as np

from .compositions import DEFAULT_SPLIT_BUDGET, enumerate_splits, greedy_relaxed_split
from .errors import BudgetExceededError, EmptySetError
from .numerals import FieldShape

DEFAULT_ELEMENT_BUDGET = 10**5

Element = tuple[int, ...]


def _poly_trim(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_mod(num: Sequence[int], den: Sequence[int], p: int) -> tuple[int, ...]:
    """Remainder of num modulo den, coefficients in F_p, den monic."""
    rem = list(num)
    dd = len(den) - 1
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i] % p
        if c:
            for j in range(dd + 1):
                rem[i - dd + j] = (rem[i - dd + j] - c * den[j]) % p
    return _poly_trim([c % p for c in rem[:dd]])


def _prime_poly_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial-division irreducibility over F_p (desk scale degrees)."""
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _poly_mod(coeffs, divisor, p):
                return False
    return True


def find_modulus(shape: FieldShape) -> tuple[int, ...]:
    """Least monic irreducible of degree s over F_p.

    Candidates x**s + c_(s-1) x**(s-1) + ... + c_0 are ordered by
    (c_0, c_1, ..., c_(s-1)), constant term most significant. For s = 1
    this picks x itself.
    """
    p, s = shape.p, shape.s
    for tail in itertools.product(range(p), repeat=s):
        coeffs = tuple(tail) + (1,)
        if _prime_poly_irreducible(coeffs, p):
            return coeffs
    raise RuntimeError(f"no irreducible of degree {s} over F_{p}")  # unreachable


class FqField:
    """Arithmetic in F_q = F_p[x] / (modulus), elements as length-s tuples."""

    _cache: dict[tuple[int, int], "FqField"] = {}

    def __init__(self, shape: FieldShape):
        self.shape = shape
        self.p = shape.p
        self.s = shape.s
        self.q = shape.q
        self.modulus = find_modulus(shape)
        self.zero: Element = (0,) * self.s
        self.one: Element = (1,) + (0,) * (self.s - 1)
        # x**k mod modulus for k up to 2s - 2, as length-s rows; products of
        # two elements never need more.
        self.reduction = self._reduction_rows()

    @classmethod
    def for_shape(cls, shape: FieldShape) -> "FqField":
        key = (shape.p, shape.s)
        field = cls._cache.get(key)
        if field is None:
            field = cls(shape)
            cls._cache[key] = field
        return field

    def _reduction_rows(self) -> tuple[tuple[int, ...], ...]:
        p, s = self.p, self.s
        rows: list[tuple[int, ...]] = []
        current = [0] * s  # coefficients of x**k reduced, starting at k = 0
        current[0] = 1
        for k in range(2 * s - 1):
            rows.append(tuple(current))
            # multiply by x and reduce
            carry = current[s - 1]
            nxt = [0] + current[: s - 1]
            if carry:
                for j in range(s):
                    nxt[j] = (nxt[j] - carry * self.modulus[j]) % p
            current = [c % p for c in nxt]
        return tuple(rows)

    def element(self, coeffs: Sequence[int]) -> Element:
        if len(coeffs) > self.s:
            raise ValueError(f"element needs at most {self.s} coefficients")
        padded = list(coeffs) + [0] * (self.s - len(coeffs))
        return tuple(c % self.p for c in padded)

    def embed_scalar(self, c: int) -> Element:
        return (c % self.p,) + (0,) * (self.s - 1)

    def elements(self) -> Iterator[Element]:
        """All q elements, ordered lexicographically by coefficients."""
        for coeffs in itertools.product(range(self.p), repeat=self.s):
            yield coeffs

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % self.p for x in a)

    def mul(self, a: Element, b: Element) -> Element:
        p, s = self.p, self.s
        if s == 1:
            return ((a[0] * b[0]) % p,)
        conv = [0] * (2 * s - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        out = [0] * s
        for k, c in enumerate(conv):
            if c:
                row = self.reduction[k]
                for j in range(s):
                    out[j] += c * row[j]
        return tuple(v % p for v in out)

    def pow(self, a: Element, e: int) -> Element:
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def __repr__(self) -> str:
        return f"FqField({self.shape})"


class FqPolynomial:
    """Polynomial in T over F_q, coefficients ascending, zero trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FqField, coeffs: Sequence[Element]):
        self.field = field
        cs = list(coeffs)
        while cs and cs[-1] == field.zero:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field: FqField) -> "FqPolynomial":
        return cls(field, ())

    @classmethod
    def one(cls, field: FqField) -> "FqPolynomial":
        return cls(field, (field.one,))

    @classmethod
    def from_scalars(cls, field: FqField, scalars: Sequence[int]) -> "FqPolynomial":
        return cls(field, [field.embed_scalar(c) for c in scalars])

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int | None:
        """Degree as an integer, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FqPolynomial):
            return NotImplemented
        return self.field.shape == other.field.shape and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field.shape, self.coeffs))

    def __add__(self, other: "FqPolynomial") -> "FqPolynomial":
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return FqPolynomial(f, out)

    def __neg__(self) -> "FqPolynomial":
        f = self.field
        return FqPolynomial(f, [f.neg(c) for c in self.coeffs])

    def __sub__(self, other: "FqPolynomial") -> "FqPolynomial":
        return self + (-other)

    def __mul__(self, other: "FqPolynomial") -> "FqPolynomial":
        f = self.field
        if self.is_zero() or other.is_zero():
            return FqPolynomial.zero(f)
        p, s = f.p, f.s
        n_out = len(self.coeffs) + len(other.coeffs) - 1
        # Split into component polynomials over F_p (one per power of x),
        # convolve exactly over the integers, then fold the x powers back
        # down with the reduction rows and reduce mod p once.
        a_comp = [
            np.array([c[i] for c in self.coeffs], dtype=np.int64) for i in range(s)
        ]
        b_comp = [
            np.array([c[i] for c in other.coeffs], dtype=np.int64) for i in range(s)
        ]
        acc = [np.zeros(n_out, dtype=np.int64) for _ in range(2 * s - 1)]
        for i in range(s):
            if not a_comp[i].any():
                continue
            for j in range(s):
                if not b_comp[j].any():
                    continue
                acc[i + j] += np.convolve(a_comp[i], b_comp[j])
        out = [np.zeros(n_out, dtype=np.int64) for _ in range(s)]
        for k in range(2 * s - 1):
            if not acc[k].any():
                continue
            row = f.reduction[k]
            for j in range(s):
                if row[j]:
                    out[j] += row[j] * acc[k]
        cols = [col % p for col in out]
        coeffs = [tuple(int(cols[j][t]) for j in range(s)) for t in range(n_out)]
        return FqPolynomial(f, coeffs)

    def __pow__(self, e: int) -> "FqPolynomial":
        if e < 0:
            raise ValueError("negative powers are not defined here")
        result = FqPolynomial.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if c == self.field.zero:
                continue
            body = "(" + ",".join(str(x) for x in c) + ")"
            if d == 0:
                terms.append(body)
            elif d == 1:
                terms.append(f"{body}*T")
            else:
                terms.append(f"{body}*T^{d}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"FqPolynomial({self.field.shape}, {self!s})"


def _monic_iter(field: FqField, k: int) -> Iterator[FqPolynomial]:
    """All monic polynomials of degree exactly k, in a fixed order."""
    if k == 0:
        yield FqPolynomial.one(field)
        return
    for lower in itertools.product(field.elements(), repeat=k):
        yield FqPolynomial(field, list(lower) + [field.one])


def monic_power_sum(
    k: int,
    n: int,
    field: FqField,
    budget: int = DEFAULT_ELEMENT_BUDGET,
) -> FqPolynomial:
    """Sum of m**n over the q**k monic polynomials m of degree exactly k."""
    if k < 0:
        raise ValueError(f"degree k must be nonnegative, got {k}")
    if n < 1:
        raise ValueError(f"exponent must be positive, got {n}")
    count = field.q**k
    if count > budget:
        raise BudgetExceededError(count, budget)
    total = FqPolynomial.zero(field)
    for poly in _monic_iter(field, k):
        total = total + poly**n
    return total


def power_sum_below(
    k: int,
    n: int,
    field: FqField,
    budget: int = DEFAULT_ELEMENT_BUDGET,
) -> FqPolynomial:
    """Sum of m**n over all q**k polynomials m of degree below k."""
    if k < 0:
        raise ValueError(f"degree k must be nonnegative, got {k}")
    if n < 1:
        raise ValueError(f"exponent must be positive, got {n}")
    count = field.q**k
    if count > budget:
        raise BudgetExceededError(count, budget)
    total = FqPolynomial.zero(field)
    if k == 0:
        return total
    for coeffs in itertools.product(field.elements(), repeat=k):
        poly = FqPolynomial(field, list(coeffs))
        if poly.is_zero():
            continue
        total = total + poly**n
    return total


def multinomial_mod_p(n: int, parts: Sequence[int], p: int) -> int:
    """Multinomial coefficient (n; parts) modulo p, digit by digit.

    Zero exactly when adding the parts carries in base p; otherwise the
    product over digit positions of the small multinomials of the digits.
    """
    if sum(parts) != n:
        raise ValueError("parts must sum to n")
    rest = list(parts)
    result = 1
    while n:
        n, digit = divmod(n, p)
        total = 0
        for i, r in enumerate(rest):
            rest[i], share = divmod(r, p)
            if share:
                total += share
                result = result * math.comb(total, share) % p
        if total != digit:
            return 0
        if result == 0:
            return 0
    if any(rest):
        return 0
    return result


def monic_power_sum_combinatorial(
    k: int,
    n: int,
    shape: FieldShape,
    budget: int = DEFAULT_SPLIT_BUDGET,
) -> FqPolynomial:
    """Monic power sum of degree k rebuilt from relaxed splits of n.

    Every relaxed (k+1)-part split r of n contributes
    (-1)**k * multinomial(n; r) * T**(weight(r) - n), and the multinomial
    is automatically nonzero mod p because the split is carry-free. The
    result has coefficients in the prime field.
    """
    if k < 0:
        raise ValueError(f"degree k must be nonnegative, got {k}")
    if n < 1:
        raise ValueError(f"exponent must be positive, got {n}")
    field = FqField.for_shape(shape)
    p = shape.p
    sign = (-1) ** k % p
    by_degree: dict[int, int] = {}
    for comp in enumerate_splits(k + 1, n, shape, allow_zero_tail=True, budget=budget):
        coef = multinomial_mod_p(n, comp.parts, p)
        assert coef != 0
        t_degree = comp.weight - n
        by_degree[t_degree] = (by_degree.get(t_degree, 0) + sign * coef) % p
    if not by_degree:
        return FqPolynomial.zero(field)
    top = max(by_degree)
    scalars = [by_degree.get(d, 0) for d in range(top + 1)]
    return FqPolynomial.from_scalars(field, scalars)


def predicted_degree(k: int, n: int, shape: FieldShape) -> int | None:
    """Degree of the monic power sum read off the largest relaxed split.

    weight(greedy relaxed split of n into k + 1 parts) - n, or None when no
    relaxed split exists (the sum is then zero and has no degree).
    """
    if k < 0:
        raise ValueError(f"degree k must be nonnegative, got {k}")
    if n < 1:
        raise ValueError(f"exponent must be positive, got {n}")
    try:
        top = greedy_relaxed_split(k + 1, n, shape)
    except EmptySetError:
        return None
    return top.weight - n
