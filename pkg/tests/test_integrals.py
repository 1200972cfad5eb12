import json
from fractions import Fraction

import pytest

from haarsym.errors import RegimeError
from haarsym.integrals import (
    Monomial,
    check_trace_formula,
    integrate_orthogonal,
    integrate_symplectic,
    integrate_unitary,
    power_sum_integral_orthogonal,
)


def test_unitary_row_orthonormality():
    # sum_j E|u_1j|^2 = 1 and sum_j E u_1j conj(u_2j) = 0
    for n in (2, 3, 5):
        total = sum(integrate_unitary((0,), (j,), (0,), (j,), n) for j in range(n))
        assert total == 1
        cross = sum(integrate_unitary((0,), (j,), (1,), (j,), n) for j in range(n))
        assert cross == 0


def test_unitary_degree_mismatch_vanishes():
    assert integrate_unitary((0, 1), (0, 1), (0,), (0,), 4) == 0
    assert integrate_unitary((), (), (0,), (0,), 4) == 0


def test_unitary_relabeling_invariance():
    # permuting row and column labels leaves the integral unchanged
    n = 4
    base = integrate_unitary((0, 1), (0, 1), (0, 1), (1, 0), n)
    moved = integrate_unitary((2, 3), (2, 0), (2, 3), (0, 2), n)
    assert base == moved


def test_orthogonal_row_normalization():
    for n in (2, 4):
        assert sum(integrate_orthogonal((0, 0), (j, j), n) for j in range(n)) == 1


def test_orthogonal_odd_degree_vanishes():
    assert integrate_orthogonal((0,), (0,), 3) == 0
    assert integrate_orthogonal((0, 0, 1), (0, 0, 1), 4) == 0


def test_orthogonal_known_quartics():
    for n in (2, 3, 5):
        assert integrate_orthogonal((0,) * 4, (0,) * 4, n) == Fraction(3, n * (n + 2))
        # E o11^2 o12^2
        val = integrate_orthogonal((0, 0, 0, 0), (0, 0, 1, 1), n)
        assert val == Fraction(1, n * (n + 2))


def test_symplectic_entry_variances():
    # every entry has E|g_ij|^2 = 1/(2n)
    for n in (1, 2, 3):
        for i, j in ((0, 0), (0, n), (n, 0), (n, n)):
            got = integrate_symplectic(((i, j, False), (i, j, True)), n)
            assert got == Fraction(1, 2 * n)


def test_symplectic_conjugate_rewrite_consistency():
    # conj(g_11) equals g_{n+1,n+1}, so both routes must integrate alike
    for n in (2, 3):
        plain = integrate_symplectic(((0, 0, False), (n, n, False)), n)
        conj = integrate_symplectic(((0, 0, False), (0, 0, True)), n)
        assert plain == conj == Fraction(1, 2 * n)
        skew = integrate_symplectic(((0, n, False), (n, 0, False)), n)
        assert skew == Fraction(-1, 2 * n)


def test_symplectic_odd_degree_vanishes():
    assert integrate_symplectic(((0, 0, False),), 2) == 0


def test_trace_formula_grid():
    for ctype, n in (((1, 1), 4), ((2,), 4), ((2, 1), 6), ((3,), 6), ((2, 2), 8)):
        rep = check_trace_formula(ctype, n)
        assert rep.matched, (ctype, n, rep.integral, rep.fixed_matchings)


def test_power_sum_values():
    # arguments are exponents: (2,) is (Tr g)^2, (0, 1) is Tr(g^2)
    assert power_sum_integral_orthogonal((2,), 5) == 1
    assert power_sum_integral_orthogonal((0, 1), 5) == 1
    assert power_sum_integral_orthogonal((1,), 5) == 0
    grouped = power_sum_integral_orthogonal((2, 1), 4)
    direct = power_sum_integral_orthogonal((2, 1), 4, method="direct")
    assert grouped == direct


def test_regime_errors():
    with pytest.raises(RegimeError):
        integrate_orthogonal((0,) * 4, (0,) * 4, 1)
    with pytest.raises(RegimeError):
        integrate_unitary((0, 0), (0, 0), (0, 0), (0, 0), 1)


def test_index_range_errors():
    with pytest.raises(ValueError):
        integrate_orthogonal((0, 3), (0, 0), 3)
    with pytest.raises(ValueError):
        integrate_symplectic(((0, 4, False),), 2)


def test_monomial_json_roundtrip():
    # JSON form indexes entries from 1
    doc = {
        "group": "unitary",
        "n": 3,
        "factors": [{"row": 1, "col": 1}, {"row": 1, "col": 1, "conj": True}],
    }
    mono = Monomial.from_json(doc)
    assert mono.integrate() == Fraction(1, 3)
    back = mono.to_json()
    assert back["factors"][0] == {"row": 1, "col": 1, "conj": False}
    assert Monomial.from_json(back) == mono


def test_monomial_rejects_bad_input():
    with pytest.raises(ValueError):
        Monomial.from_json({"group": "orthogonal", "n": 3,
                            "factors": [{"row": 1, "col": 1, "conj": True}]})
    zero_based = Monomial.from_json({"group": "orthogonal", "n": 3,
                                     "factors": [{"row": 0, "col": 1},
                                                 {"row": 0, "col": 1}]})
    with pytest.raises(ValueError):
        zero_based.integrate()


def test_monomial_rejects_malformed_json():
    with pytest.raises(ValueError, match="malformed"):
        Monomial.from_json({"group": "unitary", "n": 3,
                            "factors": [[1, 1, False]]})
    with pytest.raises(ValueError, match="malformed"):
        Monomial.from_json({"group": "unitary", "n": 3,
                            "factors": [{"col": 1}]})
    with pytest.raises(ValueError, match="malformed"):
        Monomial.from_json({"group": "unitary", "factors": []})
