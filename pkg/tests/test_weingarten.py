from fractions import Fraction

import pytest

from haarsym import weingarten as wg
from haarsym.errors import RegimeError, SizeCapError


# closed forms for low degree, from inverting the small Gram matrices by hand

def test_unitary_degree2_values():
    for n in (2, 4, 7):
        t = wg.wg_unitary(2, n)
        assert t.value((0, 1)) == Fraction(1, n * n - 1)
        assert t.value((1, 0)) == Fraction(-1, n * (n * n - 1))


def test_unitary_degree3_values():
    for n in (3, 5, 8):
        t = wg.wg_unitary(3, n)
        d = n * (n * n - 1) * (n * n - 4)
        assert t.value((0, 1, 2)) == Fraction(n * n - 2, d)
        assert t.value((1, 0, 2)) == Fraction(-1, (n * n - 1) * (n * n - 4))
        assert t.value((1, 2, 0)) == Fraction(2, d)


def test_unitary_class_function():
    # Weingarten weight depends only on the cycle type
    t = wg.wg_unitary(3, 6)
    assert t.value((0, 2, 1)) == t.value((1, 0, 2)) == t.value((2, 1, 0))


def test_orthogonal_degree2_values():
    for n in (3, 4, 6):
        t = wg.wg_orthogonal(2, n)
        d = n * (n - 1) * (n + 2)
        for a in t.partitions:
            for b in t.partitions:
                want = Fraction(n + 1, d) if a == b else Fraction(-1, d)
                assert t.value(a, b) == want


def test_symplectic_low_degree_values():
    for n in (2, 3):
        t1 = wg.wg_symplectic(1, n)
        m = t1.partitions[0]
        assert t1.value(m, m) == Fraction(1, 2 * n)

        t2 = wg.wg_symplectic(2, n)
        d = 4 * n * (2 * n + 1) * (n - 1)
        for a in t2.partitions:
            for b in t2.partitions:
                got = t2.value(a, b)
                if a == b:
                    assert got == Fraction(2 * n - 1, d)
                else:
                    assert abs(got) == Fraction(1, d)


def test_self_checks():
    assert wg.wg_unitary(4, 5).self_check()
    assert wg.wg_orthogonal(3, 4).self_check()
    assert wg.wg_symplectic(3, 3).self_check()


def test_regime_and_cap_errors():
    with pytest.raises(RegimeError):
        wg.wg_unitary(3, 2)
    with pytest.raises(RegimeError):
        wg.wg_orthogonal(3, 2)
    with pytest.raises(RegimeError):
        wg.wg_symplectic(2, 1)
    with pytest.raises(SizeCapError):
        wg.wg_unitary(9, 20)
    with pytest.raises(SizeCapError):
        wg.wg_orthogonal(6, 20)


def test_asymptotics_reports():
    for series, order in (("unitary", 2), ("orthogonal", 2), ("symplectic", 2)):
        rep = wg.check_asymptotics(series, order, (8, 16, 32))
        assert rep.ok, rep.summary()
        assert series in rep.summary()


def test_table_json_roundtrip():
    for table in (wg.wg_unitary(2, 5), wg.wg_orthogonal(2, 4), wg.wg_symplectic(2, 3)):
        data = wg.table_to_json(table)
        back = wg.table_from_json(data)
        assert type(back) is type(table)
        assert wg.table_to_json(back) == data


def test_table_file_roundtrip(tmp_path):
    table = wg.wg_orthogonal(3, 5)
    path = tmp_path / "table.json"
    wg.dump_table(table, str(path))
    back = wg.load_table(str(path))
    assert wg.table_to_json(back) == wg.table_to_json(table)
