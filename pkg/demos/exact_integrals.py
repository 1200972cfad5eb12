"""Tour of the exact side of the library: Weingarten tables, entry-monomial
integrals over the three compact groups, and the orthogonal trace formula.

Everything printed here is computed in exact rational arithmetic; floats
appear only when we format them for reading.
"""

from fractions import Fraction

from haarsym.integrals import (
    Monomial,
    check_trace_formula,
    integrate_orthogonal,
    integrate_symplectic,
    integrate_unitary,
)
from haarsym.weingarten import wg_orthogonal, wg_symplectic, wg_unitary


def main() -> None:
    print("=== Weingarten tables ===")
    table = wg_unitary(2, 5)
    print("unitary, degree 2, size 5:")
    for perm in table.perms:
        print(f"  weight of {perm}: {table.value(perm)}")
    print(f"  inverse-of-Gram self check: {table.self_check()}")

    orth = wg_orthogonal(2, 5)
    a, b = orth.partitions[0], orth.partitions[1]
    print(f"orthogonal, degree 4, size 5: diagonal {orth.value(a, a)}, "
          f"off-diagonal {orth.value(a, b)}")

    sp = wg_symplectic(2, 3)
    pa, pb = sp.partitions[0], sp.partitions[1]
    print(f"symplectic, degree 4, half-size 3: diagonal {sp.value(pa, pa)}, "
          f"off-diagonal {sp.value(pa, pb)}")

    print()
    print("=== entry moments ===")
    n = 4
    print(f"U({n}):  E|u11|^2        = {integrate_unitary((0,), (0,), (0,), (0,), n)}")
    print(f"U({n}):  E|u11|^4        = {integrate_unitary((0, 0), (0, 0), (0, 0), (0, 0), n)}")
    print(f"U({n}):  E|u11 u22|^2    = {integrate_unitary((0, 1), (0, 1), (0, 1), (0, 1), n)}")
    print(f"O({n}):  E o11^2         = {integrate_orthogonal((0, 0), (0, 0), n)}")
    print(f"O({n}):  E o11^4         = {integrate_orthogonal((0,) * 4, (0,) * 4, n)}")
    print(f"O({n}):  E o11^2 o12^2   = {integrate_orthogonal((0, 0, 0, 0), (0, 0, 1, 1), n)}")
    half = 2
    print(f"Sp({half}): E g11 g33      = {integrate_symplectic(((0, 0, False), (half, half, False)), half)}")
    print(f"Sp({half}): E g13 g31      = {integrate_symplectic(((0, half, False), (half, 0, False)), half)}")
    print(f"Sp({half}): E|g11|^2       = {integrate_symplectic(((0, 0, False), (0, 0, True)), half)}")

    print()
    print("=== unitarity, seen through moments ===")
    n = 3
    row_norm = sum(integrate_unitary((0,), (j,), (0,), (j,), n) for j in range(n))
    row_cross = sum(integrate_unitary((0,), (j,), (1,), (j,), n) for j in range(n))
    print(f"sum_j E|u1j|^2 = {row_norm} (rows are unit vectors)")
    print(f"sum_j E u1j conj(u2j) = {row_cross} (rows are orthogonal)")

    print()
    print("=== the orthogonal trace formula ===")
    print("E prod_j Tr(g^c_j) over O(n) counts the pairings fixed by a")
    print("permutation with cycle lengths c_j, once n is large enough:")
    for ctype, n in (((2,), 4), ((2, 1), 6), ((2, 2), 8), ((4,), 8)):
        rep = check_trace_formula(ctype, n)
        print(f"  cycles {ctype} at n={n}: integral {rep.integral}, "
              f"fixed pairings {rep.fixed_matchings}, matched={rep.matched}")

    print()
    print("=== monomials as JSON (1-based indices) ===")
    mono = Monomial.from_json({
        "group": "unitary", "n": 3,
        "factors": [{"row": 1, "col": 1},
                    {"row": 1, "col": 1, "conj": True}],
    })
    print(f"E|u11|^2 at n=3 from a JSON document: {mono.integrate()}")
    assert mono.integrate() == Fraction(1, 3)


if __name__ == "__main__":
    main()
