"""Exact Haar integrals of polynomial functions of matrix entries.

Monomials are written through index functions: a degree-k orthogonal monomial
g[phi(0), psi(0)] * ... * g[phi(k-1), psi(k-1)] is the pair (phi, psi) of
tuples of 0-based indices.  Unitary monomials carry a second pair for the
conjugated factors.  Symplectic monomials take explicit (row, col, conj)
factors with indices in {0..2n-1}; conjugated entries are first rewritten via
the quaternion relation conj(g[a, b]) = s(a) s(b) g[flip(a), flip(b)], where
flip moves an index across n and s is +1 on the first half, -1 on the second.

All results are exact rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .combinatorics import (
    Permutation,
    enumerate_pair_partitions,
    enumerate_permutations,
    fixed_pair_partitions,
    inverse,
    is_constant_on_blocks,
    permutation_from_cycle_type,
)
from .weingarten import wg_orthogonal, wg_symplectic, wg_unitary


@lru_cache(maxsize=128)
def _orthogonal_table(l: int, n: int):
    return wg_orthogonal(l, n)


@lru_cache(maxsize=128)
def _unitary_table(k: int, n: int):
    return wg_unitary(k, n)


@lru_cache(maxsize=128)
def _symplectic_table(l: int, n: int):
    return wg_symplectic(l, n)


def _check_indices(name: str, idx: Sequence[int], bound: int) -> None:
    for x in idx:
        if not 0 <= x < bound:
            raise ValueError(f"{name} index {x} out of range [0, {bound})")


# ---------------------------------------------------------------------------
# orthogonal


def integrate_orthogonal(phi: Sequence[int], psi: Sequence[int], n: int) -> Fraction:
    """E prod_j g[phi(j), psi(j)] over the orthogonal group O_n.

    Zero for odd degree; otherwise the double sum of Weingarten values over
    the pair partitions on which phi resp. psi are constant.  Exact in the
    stable range n >= degree/2.
    """
    if len(phi) != len(psi):
        raise ValueError("phi and psi must have the same length")
    k = len(phi)
    _check_indices("row", phi, n)
    _check_indices("col", psi, n)
    if k == 0:
        return Fraction(1)
    if k % 2 != 0:
        return Fraction(0)
    table = _orthogonal_table(k // 2, n)
    row_hits = [i for i, m in enumerate(table.partitions) if is_constant_on_blocks(phi, m)]
    col_hits = [j for j, m in enumerate(table.partitions) if is_constant_on_blocks(psi, m)]
    total = Fraction(0)
    for i in row_hits:
        for j in col_hits:
            total += table.matrix[i][j]
    return total


# ---------------------------------------------------------------------------
# unitary


def integrate_unitary(phi: Sequence[int], psi: Sequence[int],
                      phi_conj: Sequence[int], psi_conj: Sequence[int],
                      n: int) -> Fraction:
    """E prod_j u[phi(j), psi(j)] * prod_j conj(u[phi_conj(j), psi_conj(j)])
    over the unitary group U_n.

    Zero unless the plain and conjugated degrees match (phase invariance);
    otherwise the double sum over permutation pairs matching rows to rows and
    columns to columns.  Exact in the stable range n >= degree.
    """
    if len(phi) != len(psi) or len(phi_conj) != len(psi_conj):
        raise ValueError("row and column index tuples must have equal length")
    for name, idx in (("row", phi), ("col", psi), ("row", phi_conj), ("col", psi_conj)):
        _check_indices(name, idx, n)
    k = len(phi)
    if k != len(phi_conj):
        return Fraction(0)
    if k == 0:
        return Fraction(1)
    table = _unitary_table(k, n)
    perms = table.perms
    row_perms = [s for s in perms if all(phi[j] == phi_conj[s[j]] for j in range(k))]
    if not row_perms:
        return Fraction(0)
    col_perms = [t for t in perms if all(psi[j] == psi_conj[t[j]] for j in range(k))]
    total = Fraction(0)
    for s in row_perms:
        s_inv = inverse(s)
        for t in col_perms:
            total += table.value(tuple(t[s_inv[j]] for j in range(k)))
    return total


# ---------------------------------------------------------------------------
# symplectic


def _flip(x: int, n: int) -> int:
    return x + n if x < n else x - n


def rewrite_conjugates(factors: Sequence[tuple[int, int, bool]], n: int
                       ) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Eliminate conjugated entries of g in Sp_{2n} and return
    (sign, plain factors)."""
    sign = 1
    plain = []
    for row, col, conj in factors:
        if conj:
            sign *= (1 if row < n else -1) * (1 if col < n else -1)
            row, col = _flip(row, n), _flip(col, n)
        plain.append((row, col))
    return sign, tuple(plain)


def _signed_hits(values: Sequence[int], halves: Sequence[int], partitions) -> dict[int, int]:
    """For each partition index: 0 if the (value, half) data violates it,
    else the sign (-1)^(number of blocks whose first element sits in the
    lower half)."""
    out = {}
    for idx, m in enumerate(partitions):
        sign = 1
        for a, b in m:
            if values[a] != values[b] or halves[a] == halves[b]:
                sign = 0
                break
            if halves[a] == 0:
                sign = -sign
        if sign:
            out[idx] = sign
    return out


def integrate_symplectic(factors: Sequence[tuple[int, int, bool]], n: int) -> Fraction:
    """E prod_j g[row_j, col_j] (entries of g in Sp_{2n}, indices 0-based in
    {0..2n-1}, conjugates allowed) over the compact symplectic group.

    Zero for odd degree.  Exact in the stable range n >= degree/2.
    """
    k = len(factors)
    for row, col, _ in factors:
        if not (0 <= row < 2 * n and 0 <= col < 2 * n):
            raise ValueError(f"index ({row}, {col}) out of range for Sp_{{2n}}, n={n}")
    if k == 0:
        return Fraction(1)
    if k % 2 != 0:
        return Fraction(0)
    sign, plain = rewrite_conjugates(factors, n)
    rows = [r for r, _ in plain]
    cols = [c for _, c in plain]
    phi = [r % n for r in rows]
    alpha = [r // n for r in rows]
    psi = [c % n for c in cols]
    beta = [c // n for c in cols]
    table = _symplectic_table(k // 2, n)
    row_hits = _signed_hits(phi, alpha, table.partitions)
    if not row_hits:
        return Fraction(0)
    col_hits = _signed_hits(psi, beta, table.partitions)
    total = Fraction(0)
    for i, si in row_hits.items():
        for j, sj in col_hits.items():
            total += si * sj * table.matrix[i][j]
    return sign * total


# ---------------------------------------------------------------------------
# monomial objects and their file format


@dataclass(frozen=True)
class Monomial:
    """A product of matrix entries (optionally conjugated) for one of the
    three groups.  JSON form uses 1-based indices:

        {"group": "unitary", "n": 3,
         "factors": [{"row": 1, "col": 1, "conj": false}, ...]}

    For "symplectic", n is the half-dimension and indices run in {1..2n}.
    """

    group: str
    n: int
    factors: tuple[tuple[int, int, bool], ...]

    def __post_init__(self):
        if self.group not in ("unitary", "orthogonal", "symplectic"):
            raise ValueError(f"unknown group {self.group!r}")
        if self.group == "orthogonal":
            if any(conj for _, _, conj in self.factors):
                raise ValueError("orthogonal entries are real; conj is not allowed")

    @classmethod
    def from_json(cls, data: dict) -> "Monomial":
        try:
            factors = tuple(
                (f["row"] - 1, f["col"] - 1, bool(f.get("conj", False)))
                for f in data["factors"]
            )
            group, n = data["group"], int(data["n"])
        except (TypeError, KeyError, AttributeError) as exc:
            raise ValueError(f"malformed monomial JSON: {exc!r}") from exc
        return cls(group=group, n=n, factors=factors)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "n": self.n,
            "factors": [
                {"row": r + 1, "col": c + 1, "conj": conj}
                for r, c, conj in self.factors
            ],
        }

    def integrate(self) -> Fraction:
        if self.group == "orthogonal":
            phi = tuple(r for r, _, _ in self.factors)
            psi = tuple(c for _, c, _ in self.factors)
            return integrate_orthogonal(phi, psi, self.n)
        if self.group == "symplectic":
            return integrate_symplectic(self.factors, self.n)
        phi = tuple(r for r, c, conj in self.factors if not conj)
        psi = tuple(c for r, c, conj in self.factors if not conj)
        phi_c = tuple(r for r, c, conj in self.factors if conj)
        psi_c = tuple(c for r, c, conj in self.factors if conj)
        return integrate_unitary(phi, psi, phi_c, psi_c, self.n)


# ---------------------------------------------------------------------------
# orthogonal power sums (products of traces of powers)


def _cycle_type_from_exponents(a: Sequence[int]) -> tuple[int, ...]:
    ctype = []
    for j, aj in enumerate(a, start=1):
        if aj < 0:
            raise ValueError("exponents must be nonnegative")
        ctype.extend([j] * aj)
    if not ctype:
        raise ValueError("empty trace product")
    return tuple(sorted(ctype, reverse=True))


def power_sum_integral_orthogonal(a: Sequence[int], n: int, *,
                                  method: str = "grouped",
                                  budget: int = 50_000_000) -> Fraction:
    """E prod_j (Tr g^j)^(a[j-1]) over O_n, exactly.

    Expands the trace product into its full sum of n^k entry monomials
    (k = sum of j * a[j-1]) and integrates each one; "grouped" evaluates the
    same sum with equal-valued monomials bucketed together, "direct" calls
    integrate_orthogonal per monomial.
    """
    ctype = _cycle_type_from_exponents(a)
    k = sum(ctype)
    s = permutation_from_cycle_type(ctype)
    if k % 2 != 0:
        return Fraction(0)
    if n ** k > budget:
        raise ValueError(f"expansion size n^k = {n}^{k} exceeds budget {budget}")
    if method == "direct":
        total = Fraction(0)
        for tup in itertools.product(range(n), repeat=k):
            psi = tuple(tup[s[j]] for j in range(k))
            total += integrate_orthogonal(tup, psi, n)
        return total
    if method != "grouped":
        raise ValueError(f"unknown method {method!r}")

    table = _orthogonal_table(k // 2, n)
    parts = table.partitions
    p = len(parts)
    # all index tuples as an (n^k, k) array; psi permutes the columns by s
    tuples = np.indices((n,) * k).reshape(k, -1).T.astype(np.int16)
    psi = tuples[:, list(s)]

    def masks(cols: np.ndarray) -> np.ndarray:
        out = np.zeros(cols.shape[0], dtype=np.int64)
        for t, m in enumerate(parts):
            const = np.ones(cols.shape[0], dtype=bool)
            for x, y in m:
                const &= cols[:, x] == cols[:, y]
            out |= const.astype(np.int64) << t
        return out

    keys = masks(tuples) << p | masks(psi)
    uniq, counts = np.unique(keys, return_counts=True)
    wg_sum_cache: dict[int, Fraction] = {}
    total = Fraction(0)
    for key, count in zip(uniq.tolist(), counts.tolist()):
        val = wg_sum_cache.get(key)
        if val is None:
            mask_phi, mask_psi = key >> p, key & ((1 << p) - 1)
            val = Fraction(0)
            for i in range(p):
                if mask_phi >> i & 1:
                    row = table.matrix[i]
                    for j in range(p):
                        if mask_psi >> j & 1:
                            val += row[j]
            wg_sum_cache[key] = val
        total += count * val
    return total


@dataclass
class TraceFormulaCheck:
    cycle_type: tuple[int, ...]
    n: int
    integral: Fraction
    fixed_matchings: int
    matched: bool


def check_trace_formula(ctype: Sequence[int], n: int) -> TraceFormulaCheck:
    """Verify that E prod Tr(g^c) over O_n equals the number of pair
    partitions fixed by a permutation of that cycle type (n in the stable
    range)."""
    ctype = tuple(sorted(ctype, reverse=True))
    k = sum(ctype)
    a = [0] * (max(ctype) if ctype else 0)
    for c in ctype:
        a[c - 1] += 1
    integral = power_sum_integral_orthogonal(a, n)
    s = permutation_from_cycle_type(ctype)
    if k % 2 == 0:
        count = fixed_pair_partitions(s)
    else:
        count = 0  # no pair partitions of an odd set
    return TraceFormulaCheck(cycle_type=ctype, n=n, integral=integral,
                             fixed_matchings=count, matched=integral == count)
