"""Exact and limiting moments of the linear statistic Re Tr(A V).

For a coefficient matrix A in the class's parameter space W and V uniform on
the symmetric space, the statistic T = Tr(A V) is a polynomial in the entries
of the underlying Haar group element, so its low moments are exact rationals.
This module computes them two ways:

* exactly, by expanding T into entry monomials and integrating term by term
  (mean) or pair by pair with grouped Weingarten sums (second moment);

* in closed form at every n, because the degree-two Weingarten tables are
  explicit rational functions and the pair expansion collapses to a couple of
  invariants of the projected coefficient matrix;

* in the large-n limit, where Var Re Tr(A V) -> (gamma_C / n) * re-trace of
  P(A) P(A)^dagger over the class's base field, minus a signature-trace
  correction for the chiral families, whose gamma_C carry the factor
  4pq/n^2 and degenerate together with the signature.

Traces for the quaternionic families are base-field traces: half the trace of
the embedded 2n x 2n complex form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactalg import (
    CMatrix,
    CRat,
    crat_add,
    crat_conj,
    crat_dagger,
    crat_matmul,
    crat_matrix,
    crat_real,
    crat_scale,
    crat_to_complex,
    crat_trace,
    crat_transpose,
)
from .integrals import (
    _orthogonal_table,
    _symplectic_table,
    _unitary_table,
    integrate_orthogonal,
    integrate_symplectic,
    integrate_unitary,
)
from .spaces import SymmetryClass, _structure, project_w

DEFAULT_PAIR_BUDGET = 60_000_000

# non-chiral variance weights gamma in Var ~ (gamma / n) * field trace
_GAMMA_FIXED = {
    "A": Fraction(1, 2), "AII": Fraction(1, 2),
    "AI": Fraction(1), "BD": Fraction(1), "DIII": Fraction(1),
    "C": Fraction(1), "CI": Fraction(2),
}


def gamma_value(cls: SymmetryClass) -> Fraction:
    """Variance weight of the class.  The chiral weights carry the signature
    balance 4pq/n^2, so they reduce to 1 (AIII) and 2 (BDI, CII) at p = q and
    vanish as the signature degenerates toward p or q = 0."""
    if not cls.is_chiral:
        return _GAMMA_FIXED[cls.tag]
    balance = Fraction(4 * cls.p * cls.q, cls.n * cls.n)
    return balance if cls.tag == "AIII" else 2 * balance


def field_trace_real(cls: SymmetryClass, m: np.ndarray) -> float:
    """Re of the trace over the class's base field: half the embedded complex
    trace for the quaternionic families, the plain one otherwise."""
    t = float(np.trace(m).real)
    return t / 2 if cls.group == "symplectic" else t


def field_trace_real_exact(cls: SymmetryClass, m: CMatrix) -> Fraction:
    t = crat_trace(m).re
    return t / 2 if cls.group == "symplectic" else t


def theoretical_covariance(cls: SymmetryClass, mats: list[np.ndarray]) -> np.ndarray:
    """Limiting covariance matrix of (Re Tr(A_mu V))_mu: entry (mu, nu) is
    (gamma / n) * re-trace(P_mu P_nu^dagger), with the chiral families
    subtracting re-trace(P_mu S) * re-trace(P_nu S) / n for the signature
    structure S.  The subtraction kills the flat direction A = S, along which
    Tr(A V) is constant."""
    proj = [project_w(cls, a) for a in mats]
    g = float(gamma_value(cls)) / cls.n
    r = len(proj)
    sig_traces = None
    if cls.is_chiral:
        s = _structure(cls)["sig"]
        sig_traces = [field_trace_real(cls, pa @ s) for pa in proj]
    out = np.empty((r, r))
    for i in range(r):
        for j in range(r):
            val = field_trace_real(cls, proj[i] @ proj[j].conj().T)
            if sig_traces is not None:
                val -= sig_traces[i] * sig_traces[j] / cls.n
            out[i, j] = g * val
    return out


def asymptotic_variance(cls: SymmetryClass, a: np.ndarray) -> float:
    return float(theoretical_covariance(cls, [a])[0, 0])


def chiral_mean(cls: SymmetryClass, a: np.ndarray) -> float:
    """Limiting (here also exact) mean of Re Tr(A V): zero except for the
    three chiral families, where it is ((p - q) / n) times the re-trace of
    P(A) against the signature structure matrix (doubled to undo the
    base-field halving in the quaternionic case)."""
    if not cls.is_chiral:
        return 0.0
    pa = project_w(cls, a)
    s = _structure(cls)["sig"]
    scale = Fraction(cls.p - cls.q, cls.n)
    if cls.tag == "CII":
        return 2 * float(scale) * field_trace_real(cls, pa @ s)
    return float(scale) * field_trace_real(cls, pa @ s)


def asymptotic_second_moment(cls: SymmetryClass, a: np.ndarray) -> float:
    return asymptotic_variance(cls, a) + chiral_mean(cls, a) ** 2


# ---------------------------------------------------------------------------
# exact structure matrices and projections


def _exact_structure(cls: SymmetryClass) -> dict[str, CMatrix]:
    out = {}
    for key, m in _structure(cls).items():
        out[key] = crat_matrix([[int(round(x)) for x in row] for row in m])
    return out


def _half(mat: CMatrix) -> CMatrix:
    return crat_scale(Fraction(1, 2), mat)


def project_w_exact(cls: SymmetryClass, m: CMatrix) -> CMatrix:
    """Exact-arithmetic version of the parameter-space projection."""
    if len(m) != cls.ambient or any(len(row) != cls.ambient for row in m):
        raise ValueError(f"matrix size does not match ambient size {cls.ambient}")
    tag = cls.tag
    s = _exact_structure(cls)
    if tag == "A":
        return m
    if tag == "AI":
        return _half(crat_add(m, crat_transpose(m)))
    if tag == "AII":
        j = s["J"]
        return _half(crat_add(m, crat_matmul(crat_matmul(j, crat_transpose(m)), crat_transpose(j))))
    if tag == "AIII":
        sig = s["sig"]
        return _half(crat_add(m, crat_matmul(crat_matmul(sig, crat_dagger(m)), sig)))
    if tag == "BD":
        return crat_real(m)
    if tag == "BDI":
        sig = s["sig"]
        r = crat_real(m)
        return _half(crat_add(r, crat_matmul(crat_matmul(sig, crat_transpose(r)), sig)))
    if tag == "DIII":
        j = s["J"]
        r = crat_real(m)
        return _half(crat_add(r, crat_matmul(crat_matmul(j, crat_transpose(r)), crat_transpose(j))))
    j = s["J"]
    quat = _half(crat_add(m, crat_matmul(crat_matmul(j, crat_conj(m)), crat_transpose(j))))
    if tag == "C":
        return quat
    sig = s["sig"]
    return _half(crat_add(quat, crat_matmul(crat_matmul(sig, crat_dagger(quat)), sig)))


def chiral_mean_exact(cls: SymmetryClass, a: CMatrix) -> Fraction:
    if not cls.is_chiral:
        return Fraction(0)
    pa = project_w_exact(cls, a)
    sig = _exact_structure(cls)["sig"]
    scale = Fraction(cls.p - cls.q, cls.n)
    t = field_trace_real_exact(cls, crat_matmul(pa, sig))
    return (2 if cls.tag == "CII" else 1) * scale * t


# ---------------------------------------------------------------------------
# expansion of T = Tr(A V) into entry monomials of the group element


@dataclass
class Expansion:
    """T = sum_t coeff_t * prod(plain entries) * prod(conjugated entries),
    entries of the underlying Haar group element."""

    group: str
    size: int                      # matrix size of the group element
    coeffs: list[CRat]
    plain_rows: np.ndarray         # (T, deg) int32
    plain_cols: np.ndarray
    conj_rows: np.ndarray          # (T, deg_conj)
    conj_cols: np.ndarray
    real_statistic: bool           # True if T is real for every V


def _supp(mat: CMatrix) -> list[tuple[int, int, CRat]]:
    out = []
    for i, row in enumerate(mat):
        for j, x in enumerate(row):
            if x:
                out.append((i, j, x))
    return out


def expand_statistic(cls: SymmetryClass, a: CMatrix) -> Expansion:
    """Expand T = Tr(P(A) V) over the class, with V written through the
    underlying group element g.  The closed embeddings reduce every class to
    monomials of degree at most two per factor side."""
    pa = project_w_exact(cls, a)
    s = _exact_structure(cls)
    m = cls.ambient
    tag = cls.tag
    coeffs: list[CRat] = []
    plain: list[tuple[tuple[int, int], ...]] = []
    conj: list[tuple[tuple[int, int], ...]] = []

    def emit(c: CRat, pf: tuple[tuple[int, int], ...],
             cf: tuple[tuple[int, int], ...] = ()) -> None:
        if c:
            coeffs.append(c)
            plain.append(pf)
            conj.append(cf)

    if tag in ("A", "BD", "C"):
        # T = Tr(A g)
        for i, j, c in _supp(pa):
            emit(c, ((j, i),))
    elif tag == "AI":
        # T = Tr(A g g^t)
        for i, j, c in _supp(pa):
            for k in range(m):
                emit(c, ((j, k), (i, k)))
    elif tag in ("AII", "DIII"):
        # T = Tr(B g J^t g^t), B = J A
        b = crat_matmul(s["J"], pa)
        jt = crat_transpose(s["J"])
        supp_jt = _supp(jt)
        for i, j, c in _supp(b):
            for k, l, v in supp_jt:
                emit(c * v, ((j, k), (i, l)))
    elif tag == "AIII":
        # T = Tr(B g sig g*), B = sig A; g* entries are conjugated
        b = crat_matmul(s["sig"], pa)
        eps = [s["sig"][k][k] for k in range(m)]
        for i, j, c in _supp(b):
            for k in range(m):
                emit(c * eps[k], ((j, k),), ((i, k),))
    elif tag == "BDI":
        # T = Tr(B g sig g^t), B = sig A
        b = crat_matmul(s["sig"], pa)
        eps = [s["sig"][k][k] for k in range(m)]
        for i, j, c in _supp(b):
            for k in range(m):
                emit(c * eps[k], ((j, k), (i, k)))
    elif tag == "CI":
        # T = Tr(B g K g^t), B = K A, K = J sig
        kmat = crat_matmul(s["J"], s["sig"])
        b = crat_matmul(kmat, pa)
        supp_k = _supp(kmat)
        for i, j, c in _supp(b):
            for k, l, v in supp_k:
                emit(c * v, ((j, k), (i, l)))
    else:
        # CII: T = -Tr(B g K g^t), B = K A, K = J sig
        kmat = crat_matmul(s["J"], s["sig"])
        b = crat_matmul(kmat, pa)
        supp_k = _supp(kmat)
        for i, j, c in _supp(b):
            for k, l, v in supp_k:
                emit(-(c * v), ((j, k), (i, l)))

    group = cls.group
    size = 2 * cls.n if group == "symplectic" else m
    deg = max((len(f) for f in plain), default=1)
    degc = max((len(f) for f in conj), default=0)
    t = len(coeffs)
    pr = np.zeros((t, deg), dtype=np.int32)
    pc = np.zeros((t, deg), dtype=np.int32)
    cr = np.zeros((t, degc), dtype=np.int32)
    cc = np.zeros((t, degc), dtype=np.int32)
    for ti, (pf, cf) in enumerate(zip(plain, conj)):
        for fi, (r, c) in enumerate(pf):
            pr[ti, fi], pc[ti, fi] = r, c
        for fi, (r, c) in enumerate(cf):
            cr[ti, fi], cc[ti, fi] = r, c
    real_stat = tag not in ("A", "AI", "AII")
    return Expansion(group=group, size=size, coeffs=coeffs,
                     plain_rows=pr, plain_cols=pc, conj_rows=cr, conj_cols=cc,
                     real_statistic=real_stat)


# ---------------------------------------------------------------------------
# exact mean


def exact_mean(cls: SymmetryClass, a: CMatrix) -> Fraction:
    """E Re Tr(A V) as an exact rational, at the class's actual size."""
    exp = expand_statistic(cls, a)
    total = CRat()
    for t, c in enumerate(exp.coeffs):
        pf_r = tuple(int(x) for x in exp.plain_rows[t])
        pf_c = tuple(int(x) for x in exp.plain_cols[t])
        cf_r = tuple(int(x) for x in exp.conj_rows[t])
        cf_c = tuple(int(x) for x in exp.conj_cols[t])
        if exp.group == "orthogonal":
            val = integrate_orthogonal(pf_r, pf_c, exp.size)
        elif exp.group == "symplectic":
            factors = tuple((r, col, False) for r, col in zip(pf_r, pf_c))
            val = integrate_symplectic(factors, cls.n)
        else:
            val = integrate_unitary(pf_r, pf_c, cf_r, cf_c, exp.size)
        total = total + c * val
    return total.re


# ---------------------------------------------------------------------------
# exact second moment: grouped pair sums
#
# E[T * S] for S in {T, conj(T)} is a double sum over term pairs (t, t').
# For each Weingarten pairing of the combined factor positions, the indicator
# of the pairing factors over the (t, t') grid, so the rational sum collapses
# to a handful of integer bilinear forms evaluated with integer matrix
# arithmetic.  Coefficients are scaled to a common denominator first; the
# result is exact.


def _scaled_coeffs(coeffs: list[CRat]) -> tuple[np.ndarray, np.ndarray, int]:
    denom = 1
    for c in coeffs:
        denom = denom * c.re.denominator // math.gcd(denom, c.re.denominator)
        denom = denom * c.im.denominator // math.gcd(denom, c.im.denominator)
    re = [int(c.re * denom) for c in coeffs]
    im = [int(c.im * denom) for c in coeffs]
    peak = max(max(map(abs, re), default=0), max(map(abs, im), default=0))
    if peak * max(len(coeffs), 1) < 2 ** 62:
        return np.array(re, dtype=np.int64), np.array(im, dtype=np.int64), denom
    return (np.array(re, dtype=object), np.array(im, dtype=object), denom)


def _pair_sum(grid: np.ndarray, cre: np.ndarray, cim: np.ndarray,
              conj_second: bool) -> CRat:
    """sum over (t, t') of grid[t, t'] * c_t * (conj(c_t') or c_t'),
    exactly, as an unscaled integer CRat."""
    if cre.dtype == object:
        g = grid.astype(object)
    else:
        g = grid.astype(np.int64)
    # np.dot, not matmul: it also supports object (big-int) arrays
    yre = g.dot(cre)
    yim = g.dot(cim)
    lre = [int(x) for x in cre.tolist()]
    lim = [int(x) for x in cim.tolist()]
    wre = [int(x) for x in yre.tolist()]
    wim = [int(x) for x in yim.tolist()]
    if conj_second:
        sre = sum(a * b + c * d for a, b, c, d in zip(lre, wre, lim, wim))
        sim = sum(a * b - c * d for a, b, c, d in zip(lim, wre, lre, wim))
    else:
        sre = sum(a * b - c * d for a, b, c, d in zip(lre, wre, lim, wim))
        sim = sum(a * b + c * d for a, b, c, d in zip(lre, wim, lim, wre))
    return CRat(Fraction(sre), Fraction(sim))


def _cross_eq(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.equal.outer(a, b)


def _orthogonal_block_grid(parts, rows_by_pos: list[np.ndarray], t: int):
    """Indicator grids over (t, t') for each pair partition of the combined
    positions; positions 0..d-1 live on t, positions d.. on t'."""
    d = len(rows_by_pos) // 2
    grids = []
    for m in parts:
        grid = np.ones((t, t), dtype=bool)
        for a, b in m:
            if a < d and b < d:
                v = rows_by_pos[a] == rows_by_pos[b]
                grid &= v[:, None]
            elif a >= d and b >= d:
                v = rows_by_pos[a] == rows_by_pos[b]
                grid &= v[None, :]
            else:
                grid &= _cross_eq(rows_by_pos[a], rows_by_pos[b])
        grids.append(grid.astype(np.int8))
    return grids


def _symplectic_block_grid(parts, idx_by_pos: list[np.ndarray], half: int, t: int):
    """Signed indicator grids: a block demands equal value indices and
    opposite halves, and contributes -1 when its first position sits in the
    lower half."""
    d = len(idx_by_pos) // 2
    val = [x % half for x in idx_by_pos]
    hlf = [x // half for x in idx_by_pos]
    grids = []
    for m in parts:
        grid = np.ones((t, t), dtype=np.int8)
        for a, b in m:
            sign_vec = np.where(hlf[a] == 0, -1, 1).astype(np.int8)
            if a < d and b < d:
                ok = (val[a] == val[b]) & (hlf[a] != hlf[b])
                grid = grid * (ok.astype(np.int8) * sign_vec)[:, None]
            elif a >= d and b >= d:
                ok = (val[a] == val[b]) & (hlf[a] != hlf[b])
                grid = grid * (ok.astype(np.int8) * sign_vec)[None, :]
            else:
                ok = _cross_eq(val[a], val[b]) & (hlf[a][:, None] != hlf[b][None, :])
                grid = grid * ok.astype(np.int8) * sign_vec[:, None]
        grids.append(grid)
    return grids


def _check_budget(t: int, budget: int) -> None:
    if t * t > budget:
        raise ValueError(
            f"pair expansion needs a {t} x {t} grid, over the budget of"
            f" {budget} cells; raise the budget to force the computation")


def _second_moment_orthogonal(exp: Expansion, budget: int) -> CRat:
    t = len(exp.coeffs)
    _check_budget(t, budget)
    cre, cim, denom = _scaled_coeffs(exp.coeffs)
    d = exp.plain_rows.shape[1]
    rows = [exp.plain_rows[:, i] for i in range(d)] * 2
    cols = [exp.plain_cols[:, i] for i in range(d)] * 2
    table = _orthogonal_table(d, exp.size)
    rg = _orthogonal_block_grid(table.partitions, rows, t)
    cg = _orthogonal_block_grid(table.partitions, cols, t)
    total = CRat()
    for i, gi in enumerate(rg):
        for j, gj in enumerate(cg):
            w = table.matrix[i][j]
            if w:
                total = total + w * _pair_sum(gi * gj, cre, cim, conj_second=False)
    return total * CRat(Fraction(1, denom * denom))


def _second_moment_symplectic(exp: Expansion, half: int, budget: int) -> CRat:
    t = len(exp.coeffs)
    _check_budget(t, budget)
    cre, cim, denom = _scaled_coeffs(exp.coeffs)
    d = exp.plain_rows.shape[1]
    rows = [exp.plain_rows[:, i] for i in range(d)] * 2
    cols = [exp.plain_cols[:, i] for i in range(d)] * 2
    table = _symplectic_table(d, half)
    rg = _symplectic_block_grid(table.partitions, rows, half, t)
    cg = _symplectic_block_grid(table.partitions, cols, half, t)
    total = CRat()
    for i, gi in enumerate(rg):
        for j, gj in enumerate(cg):
            w = table.matrix[i][j]
            if w:
                total = total + w * _pair_sum(gi * gj, cre, cim, conj_second=False)
    return total * CRat(Fraction(1, denom * denom))


def _second_moment_unitary_pair(exp: Expansion, conj_second: bool,
                                budget: int) -> CRat:
    """E[T * conj(T)] when conj_second (terms of conj(T) are the conjugated
    mirrors), else E[T * T] for a mixed expansion with one plain and one
    conjugated factor per term."""
    t = len(exp.coeffs)
    _check_budget(t, budget)
    cre, cim, denom = _scaled_coeffs(exp.coeffs)
    if conj_second:
        d = exp.plain_rows.shape[1]
        if d == 1:
            w1 = _unitary_table(1, exp.size).value((0,))
            grid = (_cross_eq(exp.plain_rows[:, 0], exp.plain_rows[:, 0])
                    & _cross_eq(exp.plain_cols[:, 0], exp.plain_cols[:, 0])).astype(np.int8)
            return w1 * _pair_sum(grid, cre, cim, conj_second=True) * CRat(Fraction(1, denom * denom))
        # d == 2: plain positions of t match conjugated copies of t'
        tab = _unitary_table(2, exp.size)
        we, wt = tab.value((0, 1)), tab.value((1, 0))
        r1, r2 = exp.plain_rows[:, 0], exp.plain_rows[:, 1]
        c1, c2 = exp.plain_cols[:, 0], exp.plain_cols[:, 1]
        rid = _cross_eq(r1, r1) & _cross_eq(r2, r2)
        rsw = _cross_eq(r1, r2) & _cross_eq(r2, r1)
        cid = _cross_eq(c1, c1) & _cross_eq(c2, c2)
        csw = _cross_eq(c1, c2) & _cross_eq(c2, c1)
        total = CRat()
        for rg, rw in ((rid, 0), (rsw, 1)):
            for cg, cw in ((cid, 0), (csw, 1)):
                w = we if rw == cw else wt
                grid = (rg & cg).astype(np.int8)
                total = total + w * _pair_sum(grid, cre, cim, conj_second=True)
        return total * CRat(Fraction(1, denom * denom))
    # mixed statistic squared: plain factors (one per term) of t and t'
    # match the conjugated factors of t and t'
    tab = _unitary_table(2, exp.size)
    we, wt = tab.value((0, 1)), tab.value((1, 0))
    pr, cr = exp.plain_rows[:, 0], exp.conj_rows[:, 0]
    pc, cc = exp.plain_cols[:, 0], exp.conj_cols[:, 0]
    rid = ((pr == cr)[:, None]) & ((pr == cr)[None, :])
    rsw = _cross_eq(pr, cr) & _cross_eq(cr, pr)
    cid = ((pc == cc)[:, None]) & ((pc == cc)[None, :])
    csw = _cross_eq(pc, cc) & _cross_eq(cc, pc)
    total = CRat()
    for rg, rw in ((rid, 0), (rsw, 1)):
        for cg, cw in ((cid, 0), (csw, 1)):
            w = we if rw == cw else wt
            grid = (rg & cg).astype(np.int8)
            total = total + w * _pair_sum(grid, cre, cim, conj_second=False)
    return total * CRat(Fraction(1, denom * denom))


def exact_second_moment(cls: SymmetryClass, a: CMatrix, *,
                        budget: int = DEFAULT_PAIR_BUDGET) -> Fraction:
    """E (Re Tr(A V))^2 as an exact rational, at the class's actual size."""
    exp = expand_statistic(cls, a)
    if exp.group == "orthogonal":
        val = _second_moment_orthogonal(exp, budget)
        assert val.im == 0, "second moment of a real statistic must be real"
        return val.re
    if exp.group == "symplectic":
        val = _second_moment_symplectic(exp, cls.n, budget)
        assert val.im == 0, "second moment of a real statistic must be real"
        return val.re
    if exp.real_statistic:
        # AIII: T is real, E T^2 is the answer
        val = _second_moment_unitary_pair(exp, conj_second=False, budget=budget)
        assert val.im == 0, "second moment of a real statistic must be real"
        return val.re
    # A, AI, AII: T has uniformly random phase, so E T^2 = 0 and
    # E (Re T)^2 = E |T|^2 / 2
    val = _second_moment_unitary_pair(exp, conj_second=True, budget=budget)
    assert val.im == 0, "|T|^2 has a real expectation"
    return val.re / 2


def exact_variance(cls: SymmetryClass, a: CMatrix, *,
                   budget: int = DEFAULT_PAIR_BUDGET) -> Fraction:
    mean = exact_mean(cls, a)
    return exact_second_moment(cls, a, budget=budget) - mean * mean


def exact_covariance(cls: SymmetryClass, a: CMatrix, b: CMatrix, *,
                     budget: int = DEFAULT_PAIR_BUDGET) -> Fraction:
    """Exact Cov(Re Tr(A V), Re Tr(B V)) by polarization of the pair engine:
    4 Cov = Var(A + B) - Var(A - B)."""
    apb = crat_add(a, b)
    amb = crat_add(a, crat_scale(Fraction(-1), b))
    vp = exact_variance(cls, apb, budget=budget)
    vm = exact_variance(cls, amb, budget=budget)
    return (vp - vm) / 4


# ---------------------------------------------------------------------------
# closed forms for the degree-two moments


def _re_overlap_exact(pa: CMatrix, pb: CMatrix) -> Fraction:
    """Re Tr(pa pb^dagger) = Re sum_ij pa_ij conj(pb_ij), exactly."""
    tot = Fraction(0)
    for ra, rb in zip(pa, pb):
        for x, y in zip(ra, rb):
            tot += x.re * y.re + x.im * y.im
    return tot


def exact_covariance_closed(cls: SymmetryClass, a: CMatrix, b: CMatrix) -> Fraction:
    """Cov(Re Tr(A V), Re Tr(B V)) in closed form at the class's actual size.

    The degree-two Weingarten tables are explicit rational functions of n, so
    the pair expansion collapses to the entrywise overlap of the projected
    coefficient matrices plus, for the chiral families, their traces against
    the signature structure.  Agrees with the pair-engine route wherever the
    tables are in regime, and extends it down to the smallest sizes.
    """
    pa = project_w_exact(cls, a)
    pb = project_w_exact(cls, b)
    n = cls.n
    g = _re_overlap_exact(pa, pb)
    tag = cls.tag
    if tag in ("A", "C"):
        return g / (2 * n)
    if tag == "AI":
        return g / (n + 1)
    if tag == "AII":
        return g / (2 * n - 1)
    if tag == "BD":
        return g / n
    if tag == "DIII":
        return 2 * g / (2 * n - 1)
    if tag == "CI":
        return 2 * g / (2 * n + 1)
    sig = _exact_structure(cls)["sig"]
    ta = crat_trace(crat_matmul(pa, sig)).re
    tb = crat_trace(crat_matmul(pb, sig)).re
    w = 4 * cls.p * cls.q
    if tag == "AIII":
        return w * (g - ta * tb / n) / (n * (n * n - 1))
    if tag == "BDI":
        return 2 * w * (g - ta * tb / n) / (n * (n - 1) * (n + 2))
    # CII
    return w * (2 * g - ta * tb / n) / (n * (2 * n + 1) * (n - 1))


def exact_variance_closed(cls: SymmetryClass, a: CMatrix) -> Fraction:
    """Var Re Tr(A V) in closed form; see exact_covariance_closed."""
    return exact_covariance_closed(cls, a, a)


# ---------------------------------------------------------------------------
# reports


@dataclass
class MomentReport:
    descriptor: str
    exact_mean: Fraction
    exact_second_moment: Fraction
    exact_variance: Fraction
    asymptotic_mean: float
    asymptotic_variance: float
    variance_deviation: float     # |exact - asymptotic| / asymptotic

    def to_json(self) -> dict:
        return {
            "class": self.descriptor,
            "exact_mean": str(self.exact_mean),
            "exact_second_moment": str(self.exact_second_moment),
            "exact_variance": str(self.exact_variance),
            "asymptotic_mean": self.asymptotic_mean,
            "asymptotic_variance": self.asymptotic_variance,
            "variance_deviation": self.variance_deviation,
        }


def moment_report(cls: SymmetryClass, a: CMatrix, *,
                  budget: int = DEFAULT_PAIR_BUDGET) -> MomentReport:
    """Exact mean/second moment/variance next to their limiting values."""
    em = exact_mean(cls, a)
    e2 = exact_second_moment(cls, a, budget=budget)
    ev = e2 - em * em
    af = crat_to_complex(project_w_exact(cls, a))
    av = asymptotic_variance(cls, af)
    am = chiral_mean(cls, af)
    dev = abs(float(ev) - av) / av if av else float("nan")
    return MomentReport(descriptor=cls.describe(), exact_mean=em,
                        exact_second_moment=e2, exact_variance=ev,
                        asymptotic_mean=am, asymptotic_variance=av,
                        variance_deviation=dev)
