"""Exact rational linear algebra.

Gram matrices here are small (at most a few hundred rows) with integer
entries, and their inverses are the whole point: Weingarten values are read
off them, so everything stays in exact arithmetic.  Inversion clears
denominators row by row and then runs fraction-free (Bareiss) Gaussian
elimination over the integers, with partial pivoting by absolute value of the
integer entry, followed by back substitution over Fraction.  Deterministic
and safe with arbitrarily large intermediate values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

FracMatrix = list[list[Fraction]]


class SingularMatrixError(ValueError):
    pass


def identity_fraction(m: int) -> FracMatrix:
    return [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]


def mat_mul_fraction(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> FracMatrix:
    m, inner, cols = len(a), len(b), len(b[0])
    assert all(len(row) == inner for row in a)
    return [
        [sum((a[i][t] * b[t][j] for t in range(inner)), Fraction(0)) for j in range(cols)]
        for i in range(m)
    ]


def invert_rational_matrix(rows: Sequence[Sequence[Fraction | int]]) -> FracMatrix:
    """Exact inverse of a square matrix with rational entries.

    Raises SingularMatrixError when the matrix is singular.
    """
    m = len(rows)
    if any(len(r) != m for r in rows):
        raise ValueError("matrix must be square")

    # Row-scale to integers: A = D^{-1} B with D = diag(scale), so
    # A^{-1} = B^{-1} D, i.e. column j of B^{-1} gets multiplied by scale[j].
    scale = []
    work: list[list[int]] = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        d = lcm(*(x.denominator for x in fr)) if m else 1
        scale.append(d)
        work.append([int(x * d) for x in fr] + [0] * m)
    for i in range(m):
        work[i][m + i] = 1

    # Fraction-free forward elimination.  After step k every entry is a
    # (k+2)-minor of the row-permuted augmented matrix, so the division by
    # the previous pivot is exact.
    prev = 1
    for k in range(m):
        piv = max(range(k, m), key=lambda i: abs(work[i][k]))
        if work[piv][k] == 0:
            raise SingularMatrixError(f"singular at elimination step {k}")
        if piv != k:
            work[k], work[piv] = work[piv], work[k]
        pivot = work[k][k]
        for i in range(k + 1, m):
            fi = work[i][k]
            row_i, row_k = work[i], work[k]
            for j in range(k, 2 * m):
                row_i[j] = (pivot * row_i[j] - fi * row_k[j]) // prev
        prev = pivot

    # Back substitution, one augmented column at a time.
    inv: FracMatrix = [[Fraction(0)] * m for _ in range(m)]
    for c in range(m):
        col = [Fraction(0)] * m
        for i in range(m - 1, -1, -1):
            acc = Fraction(work[i][m + c])
            for j in range(i + 1, m):
                acc -= work[i][j] * col[j]
            col[i] = acc / work[i][i]
        for i in range(m):
            inv[i][c] = col[i] * scale[c]
    return inv


# ---------------------------------------------------------------------------
# complex rationals

@dataclass(frozen=True)
class CRat:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other: "CRat | Fraction | int") -> "CRat":
        o = as_crat(other)
        return CRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: "CRat | Fraction | int") -> "CRat":
        o = as_crat(other)
        return CRat(self.re - o.re, self.im - o.im)

    def __neg__(self) -> "CRat":
        return CRat(-self.re, -self.im)

    def __mul__(self, other: "CRat | Fraction | int") -> "CRat":
        o = as_crat(other)
        return CRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "CRat":
        return CRat(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re} {sign} {abs(self.im)}i"


def as_crat(x) -> CRat:
    """Promote to CRat.  Floats convert exactly (binary value), strings parse
    as rationals ("3/4"), complex numbers convert both parts exactly."""
    if isinstance(x, CRat):
        return x
    if isinstance(x, (int, Fraction, str)):
        return CRat(Fraction(x))
    if isinstance(x, float):
        return CRat(Fraction(x))
    if isinstance(x, complex):
        return CRat(Fraction(x.real), Fraction(x.imag))
    raise TypeError(f"cannot promote {type(x).__name__} to CRat")


# ---------------------------------------------------------------------------
# CRat matrices as nested lists

CMatrix = list  # list[list[CRat]]


def crat_matrix(rows) -> CMatrix:
    return [[as_crat(x) for x in row] for row in rows]


def crat_matmul(a: CMatrix, b: CMatrix) -> CMatrix:
    if len(b) != len(a[0]):
        raise ValueError("inner dimensions do not match")
    cols = len(b[0])
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), CRat()) for j in range(cols)]
        for i in range(len(a))
    ]


def crat_add(a: CMatrix, b: CMatrix) -> CMatrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def crat_scale(c, a: CMatrix) -> CMatrix:
    c = as_crat(c)
    return [[c * x for x in row] for row in a]


def crat_transpose(a: CMatrix) -> CMatrix:
    return [list(col) for col in zip(*a)]


def crat_conj(a: CMatrix) -> CMatrix:
    return [[x.conj() for x in row] for row in a]


def crat_dagger(a: CMatrix) -> CMatrix:
    return crat_conj(crat_transpose(a))


def crat_real(a: CMatrix) -> CMatrix:
    return [[CRat(x.re) for x in row] for row in a]


def crat_trace(a: CMatrix) -> CRat:
    return sum((a[i][i] for i in range(len(a))), CRat())


def crat_to_complex(a: CMatrix) -> "object":
    import numpy as np

    return np.array([[complex(x) for x in row] for row in a])
