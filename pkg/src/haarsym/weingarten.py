"""Exact Weingarten tables for the unitary, orthogonal and symplectic groups.

Each table is the inverse of an explicit integer Gram matrix:

* unitary: the convolution operator M[s, t] = n^(number of cycles of s t^-1)
  on S_k, inverted exactly; the Weingarten function is the identity row and
  is constant on cycle types (asserted, not assumed).

* orthogonal: the Gram matrix of the partition vectors, entry
  n^loops(m, m') over pair partitions of {0..2l-1}.

* symplectic: the Gram matrix of the signed invariant tensors under the
  standard symplectic form on C^(2n), computed by explicit contraction of
  their basis expansions.

All tables require n >= k (resp. n >= l); below that the Gram matrices can be
singular and a RegimeError is raised.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import caps
from .combinatorics import (
    PairPartition,
    Permutation,
    compose,
    cycle_count,
    cycle_type,
    enumerate_pair_partitions,
    enumerate_permutations,
    inverse,
    loops,
)
from .errors import RegimeError
from .exactalg import FracMatrix, invert_rational_matrix


# ---------------------------------------------------------------------------
# unitary


@dataclass
class UnitaryWeingarten:
    k: int
    n: int
    perms: tuple[Permutation, ...]
    by_type: dict[tuple[int, ...], Fraction]

    def value(self, p: Permutation) -> Fraction:
        return self.by_type[cycle_type(p)]

    def self_check(self) -> bool:
        """sum_t Wg(t) n^cycles(t s^-1) == [s is the identity], exactly."""
        for s in self.perms:
            sinv = inverse(s)
            total = sum(self.value(t) * self.n ** cycle_count(compose(t, sinv))
                        for t in self.perms)
            if total != (1 if s == self.perms[0] else 0):
                return False
        return True


def unitary_gram(k: int, n: int, cap: int | None = None) -> tuple[tuple[Permutation, ...], list[list[int]]]:
    """The k! x k! matrix M[s, t] = n^cycles(s t^-1) over S_k in
    lexicographic order."""
    perms = tuple(enumerate_permutations(k, cap))
    inverses = [inverse(t) for t in perms]
    gram = [[n ** cycle_count(compose(s, tinv)) for tinv in inverses] for s in perms]
    return perms, gram


def wg_unitary(k: int, n: int, cap: int | None = None) -> UnitaryWeingarten:
    """Exact unitary Weingarten table for S_k at dimension n >= k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n < k:
        raise RegimeError(f"unitary Weingarten needs n >= k, got n={n}, k={k}")
    perms, gram = unitary_gram(k, n, cap)
    inv = invert_rational_matrix(gram)
    identity_row = inv[0]  # lexicographic order starts at the identity
    by_type: dict[tuple[int, ...], Fraction] = {}
    for p, val in zip(perms, identity_row):
        t = cycle_type(p)
        if t in by_type:
            # The Weingarten function must be a class function; anything else
            # means the inversion or the Gram construction is wrong.
            assert by_type[t] == val, f"non-class value at {p}: {val} != {by_type[t]}"
        else:
            by_type[t] = val
    return UnitaryWeingarten(k=k, n=n, perms=perms, by_type=by_type)


# ---------------------------------------------------------------------------
# orthogonal


@dataclass
class OrthogonalWeingarten:
    l: int
    n: int
    partitions: tuple[PairPartition, ...]
    gram: list[list[int]]
    matrix: FracMatrix

    def value(self, m: PairPartition, m2: PairPartition) -> Fraction:
        i = self.partitions.index(m)
        j = self.partitions.index(m2)
        return self.matrix[i][j]

    def self_check(self) -> bool:
        return _exact_inverse_pair(self.matrix, self.gram)


def _exact_inverse_pair(matrix: FracMatrix, gram: list[list[int]]) -> bool:
    size = len(gram)
    for i in range(size):
        for j in range(size):
            total = sum(matrix[i][k] * gram[k][j] for k in range(size))
            if total != (1 if i == j else 0):
                return False
    return True


def gram_orthogonal(l: int, n: int, cap: int | None = None) -> tuple[tuple[PairPartition, ...], list[list[int]]]:
    parts = tuple(enumerate_pair_partitions(l, cap))
    gram = [[n ** loops(m, m2) for m2 in parts] for m in parts]
    return parts, gram


def wg_orthogonal(l: int, n: int, cap: int | None = None) -> OrthogonalWeingarten:
    """Exact orthogonal Weingarten table over pair partitions of {0..2l-1},
    n >= l."""
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    if n < l:
        raise RegimeError(f"orthogonal Weingarten needs n >= l, got n={n}, l={l}")
    parts, gram = gram_orthogonal(l, n, cap)
    return OrthogonalWeingarten(l=l, n=n, partitions=parts, gram=gram,
                                matrix=invert_rational_matrix(gram))


# ---------------------------------------------------------------------------
# symplectic

# The symplectic form on C^(2n), 0-based: a(e_i, e_{n+i}) = 1,
# a(e_{n+i}, e_i) = -1 for 0 <= i < n, zero on all other pairs.  The pairing
# of e_x against anything is supported on the single partner index
# flip(x) = x +- n.


def _form_sign(x: int, n: int) -> int:
    """a(e_x, e_flip(x)): +1 in the first half, -1 in the second."""
    return 1 if x < n else -1


def expand_symplectic_invariant(m: PairPartition, n: int) -> dict[tuple[int, ...], int]:
    """Basis expansion of the invariant tensor attached to an (ordered) pair
    partition: a map from index words w in {0..2n-1}^(2l) to coefficients +-1.

    Block nu = (a, b) with a < b contributes, for each eta < n and
    eps in {0, 1}:  w[a] = eta + n*eps,  w[b] = eta + n*(1 - eps),  and a
    factor (-1)^eps.
    """
    l = len(m)
    out: dict[tuple[int, ...], int] = {}
    word = [0] * (2 * l)

    def rec(nu: int, sign: int) -> None:
        if nu == l:
            out[tuple(word)] = sign
            return
        a, b = m[nu]
        for eta in range(n):
            word[a], word[b] = eta, eta + n
            rec(nu + 1, sign)
            word[a], word[b] = eta + n, eta
            rec(nu + 1, -sign)

    rec(0, 1)
    return out


def symplectic_pairing(theta_m: dict[tuple[int, ...], int],
                       theta_m2: dict[tuple[int, ...], int], n: int) -> int:
    """a(theta_m, theta_m2): pair every word of the first expansion against
    its unique partner word (indices flipped across n) in the second."""
    total = 0
    for w, c in theta_m.items():
        partner = tuple(x - n if x >= n else x + n for x in w)
        c2 = theta_m2.get(partner)
        if c2 is None:
            continue
        sign = 1
        for x in w:
            sign *= _form_sign(x, n)
        total += c * c2 * sign
    return total


def gram_symplectic(l: int, n: int, cap: int | None = None) -> tuple[tuple[PairPartition, ...], list[list[int]]]:
    """Gram matrix of the invariant tensors; cost (2n)^l per invariant."""
    parts = tuple(enumerate_pair_partitions(l, cap))
    expansions = [expand_symplectic_invariant(m, n) for m in parts]
    size = len(parts)
    gram = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            gram[i][j] = gram[j][i] = symplectic_pairing(expansions[i], expansions[j], n)
    return parts, gram


@dataclass
class SymplecticWeingarten:
    l: int
    n: int  # the group is Sp_{2n}
    partitions: tuple[PairPartition, ...]
    gram: list[list[int]]
    matrix: FracMatrix

    def value(self, m: PairPartition, m2: PairPartition) -> Fraction:
        i = self.partitions.index(m)
        j = self.partitions.index(m2)
        return self.matrix[i][j]

    def self_check(self) -> bool:
        return _exact_inverse_pair(self.matrix, self.gram)


def wg_symplectic(l: int, n: int, cap: int | None = None) -> SymplecticWeingarten:
    """Exact symplectic Weingarten table for Sp_{2n}, n >= l."""
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    if n < l:
        raise RegimeError(f"symplectic Weingarten needs n >= l, got n={n}, l={l}")
    parts, gram = gram_symplectic(l, n, cap)
    return SymplecticWeingarten(l=l, n=n, partitions=parts, gram=gram,
                                matrix=invert_rational_matrix(gram))


# ---------------------------------------------------------------------------
# large-n behavior


@dataclass
class AsymptoticsReport:
    series: str
    order: int           # k for unitary, l otherwise
    n_grid: tuple[int, ...]
    diag_scaled: list[float]      # n^k Wg(id) resp. min/max-free n^l Wg(m,m)
    diag_limit: float | None      # 1 for unitary/orthogonal, None for symplectic
    diag_fitted_c: float          # dev(n) <= c/n over the grid
    offdiag_scaled: list[float]   # max over entries of n^(expected order) |Wg|
    diag_ok: bool
    offdiag_ok: bool

    @property
    def ok(self) -> bool:
        return self.diag_ok and self.offdiag_ok

    def summary(self) -> str:
        scaled = ", ".join(f"{v:.6g}" for v in self.diag_scaled)
        limit = "bounded" if self.diag_limit is None else f"limit {self.diag_limit:g}"
        return (f"{self.series} order {self.order}: scaled diagonal [{scaled}] "
                f"({limit}); diagonal {'ok' if self.diag_ok else 'FAIL'}, "
                f"off-diagonal {'ok' if self.offdiag_ok else 'FAIL'}")


def _decaying(devs: Sequence[float], grid: Sequence[int]) -> bool:
    # allow slack 4 on a ~1/n decay from the first to the last grid point
    first, last = devs[0], devs[-1]
    if last == 0:
        return True
    return last <= 4.0 * first * (grid[0] / grid[-1])


def check_asymptotics(series: str, order: int, n_grid: Iterable[int],
                      cap: int | None = None) -> AsymptoticsReport:
    """Tabulate the expected large-n scalings of a Weingarten series.

    For unitary and orthogonal tables, n^k Wg(id) (resp. n^l Wg(m, m)) must
    tend to 1 with deviation O(1/n), and non-identity entries scaled by their
    expected order must stay bounded.  For the symplectic series only the
    decay orders are checked: the scaled diagonal stays bounded (it tends to
    2^-l under this normalization) and off-diagonal entries carry at least
    one extra power of 1/n.
    """
    grid = tuple(sorted(n_grid))
    if series not in ("unitary", "orthogonal", "symplectic"):
        raise ValueError(f"unknown series {series!r}")
    diag_scaled: list[float] = []
    offdiag_scaled: list[float] = []
    for n in grid:
        if series == "unitary":
            table = wg_unitary(order, n, cap)
            k = order
            ident = (1,) * k
            diag_scaled.append(float(n ** k * table.by_type[ident]))
            off = 0.0
            for t, val in table.by_type.items():
                if t == ident:
                    continue
                weight = k + sum(c - 1 for c in t)  # k + |sigma|
                off = max(off, abs(float(n ** weight * val)))
            offdiag_scaled.append(off)
        else:
            table = (wg_orthogonal if series == "orthogonal" else wg_symplectic)(order, n, cap)
            l = order
            parts = table.partitions
            diag_scaled.append(max(abs(float(n ** l * table.matrix[i][i]))
                                   for i in range(len(parts))))
            off = 0.0
            for i, m in enumerate(parts):
                for j, m2 in enumerate(parts):
                    if i == j:
                        continue
                    weight = 2 * l - loops(m, m2)
                    off = max(off, abs(float(n ** weight * table.matrix[i][j])))
            offdiag_scaled.append(off)

    if series == "symplectic":
        diag_limit = None
        devs = [abs(v - diag_scaled[-1]) for v in diag_scaled]
        diag_ok = max(diag_scaled) <= 2.0 * diag_scaled[-1] + 1e-12
    else:
        diag_limit = 1.0
        devs = [abs(v - 1.0) for v in diag_scaled]
        diag_ok = _decaying(devs, grid)
    fitted_c = max((n * d for n, d in zip(grid, devs)), default=0.0)
    offdiag_ok = offdiag_scaled[-1] <= 2.0 * offdiag_scaled[0] + 1e-12
    return AsymptoticsReport(series=series, order=order, n_grid=grid,
                             diag_scaled=diag_scaled, diag_limit=diag_limit,
                             diag_fitted_c=fitted_c, offdiag_scaled=offdiag_scaled,
                             diag_ok=diag_ok, offdiag_ok=offdiag_ok)


# ---------------------------------------------------------------------------
# serialization

# File format (1-based indices, exact values as "p/q" strings):
#   unitary:      {"series": "unitary", "k": .., "n": ..,
#                  "index": [[cycle type], ...], "values": ["p/q", ...]}
#   orthogonal /  {"series": .., "l": .., "n": ..,
#   symplectic:    "index": [[[1,2],[3,4]], ...], "values": [["p/q", ..], ..]}


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def _partition_to_json(m: PairPartition) -> list[list[int]]:
    return [[a + 1, b + 1] for a, b in m]


def _partition_from_json(blocks: Sequence[Sequence[int]]) -> PairPartition:
    return tuple(sorted((min(b) - 1, max(b) - 1) for b in blocks))


def table_to_json(table) -> dict:
    if isinstance(table, UnitaryWeingarten):
        types = sorted(table.by_type)
        return {
            "series": "unitary",
            "k": table.k,
            "n": table.n,
            "index": [list(t) for t in types],
            "values": [_frac_str(table.by_type[t]) for t in types],
        }
    series = "orthogonal" if isinstance(table, OrthogonalWeingarten) else "symplectic"
    return {
        "series": series,
        "l": table.l,
        "n": table.n,
        "index": [_partition_to_json(m) for m in table.partitions],
        "values": [[_frac_str(v) for v in row] for row in table.matrix],
    }


def table_from_json(data: dict):
    series = data["series"]
    if series == "unitary":
        k, n = data["k"], data["n"]
        by_type = {tuple(t): parse_fraction(v)
                   for t, v in zip(data["index"], data["values"])}
        return UnitaryWeingarten(k=k, n=n, perms=tuple(enumerate_permutations(k)),
                                 by_type=by_type)
    l, n = data["l"], data["n"]
    parts = tuple(_partition_from_json(m) for m in data["index"])
    matrix = [[parse_fraction(v) for v in row] for row in data["values"]]
    gram = [[n ** loops(m, m2) for m2 in parts] for m in parts] if series == "orthogonal" else \
        gram_symplectic(l, n)[1]
    cls = OrthogonalWeingarten if series == "orthogonal" else SymplecticWeingarten
    return cls(l=l, n=n, partitions=parts, gram=gram, matrix=matrix)


def dump_table(table, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(table_to_json(table), fh, indent=2)
        fh.write("\n")


def load_table(path: str):
    with open(path) as fh:
        return table_from_json(json.load(fh))
