import random
from fractions import Fraction

import numpy as np
import pytest

from haarsym.exactalg import (
    CRat,
    SingularMatrixError,
    as_crat,
    crat_add,
    crat_conj,
    crat_dagger,
    crat_matmul,
    crat_matrix,
    crat_scale,
    crat_to_complex,
    crat_trace,
    crat_transpose,
    identity_fraction,
    invert_rational_matrix,
    mat_mul_fraction,
)


def _random_fraction_matrix(rng: random.Random, m: int):
    return [[Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(m)]
            for _ in range(m)]


def test_invert_rational_roundtrip():
    rng = random.Random(11)
    for m in (1, 2, 3, 5):
        a = _random_fraction_matrix(rng, m)
        # shift the diagonal to keep the draw comfortably nonsingular
        for i in range(m):
            a[i][i] += 10
        inv = invert_rational_matrix(a)
        assert mat_mul_fraction(a, inv) == identity_fraction(m)
        assert mat_mul_fraction(inv, a) == identity_fraction(m)


def test_invert_hilbert_matrix_is_integral():
    # the inverse of the Hilbert matrix has integer entries
    m = 5
    h = [[Fraction(1, i + j + 1) for j in range(m)] for i in range(m)]
    inv = invert_rational_matrix(h)
    assert all(x.denominator == 1 for row in inv for x in row)
    assert mat_mul_fraction(h, inv) == identity_fraction(m)


def test_invert_singular_raises():
    a = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    with pytest.raises(SingularMatrixError):
        invert_rational_matrix(a)


def test_crat_arithmetic():
    z = CRat(Fraction(3, 4), Fraction(-2, 5))
    w = z * z.conj()
    assert w == CRat(Fraction(3, 4) ** 2 + Fraction(2, 5) ** 2)
    assert as_crat("3/7") == CRat(Fraction(3, 7))
    assert as_crat(0.25) == CRat(Fraction(1, 4))
    assert as_crat(1 + 2j) == CRat(Fraction(1), Fraction(2))
    with pytest.raises(TypeError):
        as_crat(object())


def test_crat_matrix_identities():
    rng = random.Random(5)

    def rand_cmat(m):
        return crat_matrix([[CRat(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                                  Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
                             for _ in range(m)] for _ in range(m)])

    a, b = rand_cmat(3), rand_cmat(3)
    assert crat_trace(crat_matmul(a, b)) == crat_trace(crat_matmul(b, a))
    assert crat_dagger(crat_matmul(a, b)) == crat_matmul(crat_dagger(b), crat_dagger(a))
    assert crat_transpose(crat_transpose(a)) == a
    assert crat_conj(crat_conj(a)) == a
    two_a = crat_add(a, a)
    assert crat_scale(Fraction(2), a) == two_a

    na, nb = crat_to_complex(a), crat_to_complex(b)
    prod = crat_to_complex(crat_matmul(a, b))
    assert np.allclose(np.asarray(na) @ np.asarray(nb), np.asarray(prod))
