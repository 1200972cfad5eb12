"""Monte Carlo verification of the Gaussian limit of Re Tr(A V).

An experiment fixes a symmetry class, a list of coefficient matrices, a draw
count and a seed.  Draws are partitioned into fixed-size chunks; each draw
uses its own counter-based substream keyed by (seed, draw index), so the
sampled values are a pure function of those two integers.  Workers only pick
up chunks, and chunk partial sums are combined in chunk order, which makes
the resulting report bit-identical across worker counts and reruns.

The empirical side reduces to power sums of the statistic values, from which
unbiased cumulant estimators (k-statistics) are formed.  The theoretical side
has three columns: the exact mean, the exact finite-size variance in closed
form, and the limiting variance; verdicts compare the estimators against
theory at five standard errors, plus the stated relative tolerances.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from pathlib import Path

import numpy as np

try:
    import tomllib as tomli
except ModuleNotFoundError:
    import tomli

from . import __version__
from .errors import StructureError
from .exactalg import CMatrix, CRat, as_crat, crat_matrix, crat_to_complex
from .moments import (
    DEFAULT_PAIR_BUDGET,
    asymptotic_variance,
    chiral_mean_exact,
    exact_covariance_closed,
    exact_variance,
    exact_variance_closed,
    project_w_exact,
    theoretical_covariance,
)
from .sampling import sample_v_batch
from .spaces import SymmetryClass, parse_class, _structure

# Fixed chunk size: the partition of draws into chunks must not depend on the
# worker count, or combined floating-point sums would change with it.
CHUNK = 256

BUILTIN_RECIPES = ("identity", "cyclic-shift", "shift-diag", "signature")

# absolute slack absorbing float rounding when a statistic is degenerate
_ATOL = 1e-9


def default_signature(n: int) -> tuple[int, int]:
    """Default chiral signature (p, q): p near 3n/5, clamped so p, q >= 1."""
    p = min(n - 1, max(1, -(-3 * n // 5)))
    return p, n - p


def default_descriptor(tag: str, n: int) -> str:
    """Class descriptor for a tag and size, filling in the default signature
    for the chiral families."""
    cls = parse_class(f"{tag}:n={n}" if tag not in ("AIII", "BDI", "CII")
                      else "{}:n={},p={},q={}".format(tag, n, *default_signature(n)))
    return cls.describe()


# ---------------------------------------------------------------------------
# coefficient matrix recipes


def _entry_to_crat(x) -> CRat:
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ValueError("matrix entry pairs must be [re, im]")
        re, im = (Fraction(str(v)) if isinstance(v, str) else Fraction(v) for v in x)
        return as_crat(re) + as_crat(im) * as_crat(1j)
    if isinstance(x, str):
        return as_crat(Fraction(x))
    return as_crat(x)


@dataclass(frozen=True)
class MatrixSpec:
    """A named coefficient matrix: either a builtin recipe (rows is None) or
    explicit entries (ints, floats, "p/q" strings, or [re, im] pairs)."""

    name: str
    rows: tuple | None = None

    @staticmethod
    def from_config(item) -> "MatrixSpec":
        if isinstance(item, str):
            if item not in BUILTIN_RECIPES:
                raise ValueError(f"unknown matrix recipe {item!r}; "
                                 f"builtins are {BUILTIN_RECIPES}")
            return MatrixSpec(name=item)
        name = item.get("name", "custom")
        rows = tuple(tuple(r) for r in item["rows"])
        return MatrixSpec(name=name, rows=rows)


def build_matrix(cls: SymmetryClass, spec: MatrixSpec) -> CMatrix:
    """Materialize a matrix spec at the class's ambient size, exactly."""
    m = cls.ambient
    if spec.rows is not None:
        mat = crat_matrix([[_entry_to_crat(x) for x in row] for row in spec.rows])
        if len(mat) != m or any(len(r) != m for r in mat):
            raise ValueError(f"matrix {spec.name!r} is not {m} x {m}")
        return mat
    if spec.name == "identity":
        return crat_matrix([[int(i == j) for j in range(m)] for i in range(m)])
    if spec.name == "cyclic-shift":
        return crat_matrix([[int(j == (i + 1) % m) for j in range(m)]
                            for i in range(m)])
    if spec.name == "shift-diag":
        rows = [[Fraction(int(j == (i + 1) % m)) for j in range(m)] for i in range(m)]
        for i in range(m):
            rows[i][i] += Fraction(1, i + 1)
        return crat_matrix(rows)
    if spec.name == "signature":
        if not cls.is_chiral:
            raise ValueError("the signature recipe needs a chiral class")
        s = _structure(cls)["sig"]
        return crat_matrix([[int(round(x)) for x in row] for row in s])
    raise ValueError(f"unknown matrix recipe {spec.name!r}")


# ---------------------------------------------------------------------------
# experiment specification


@dataclass(frozen=True)
class ExperimentSpec:
    descriptor: str
    matrices: tuple[MatrixSpec, ...]
    draws: int
    seed: int

    def __post_init__(self):
        if self.draws < 8:
            raise ValueError("draws must be at least 8 for fourth cumulants")
        if not self.matrices:
            raise ValueError("at least one coefficient matrix is required")

    @staticmethod
    def from_dict(d: dict) -> "ExperimentSpec":
        try:
            return ExperimentSpec(
                descriptor=d["class"],
                matrices=tuple(MatrixSpec.from_config(x) for x in d["matrices"]),
                draws=int(d["draws"]),
                seed=int(d.get("seed", 0)),
            )
        except (TypeError, KeyError, AttributeError) as exc:
            raise ValueError(f"malformed experiment spec: {exc!r}") from exc

    @staticmethod
    def from_file(path: str | Path) -> "ExperimentSpec":
        path = Path(path)
        if path.suffix == ".toml":
            with open(path, "rb") as fh:
                return ExperimentSpec.from_dict(tomli.load(fh))
        with open(path, "r", encoding="utf-8") as fh:
            return ExperimentSpec.from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# chunked sampling


def _chunk_stats(task):
    """Power sums of the statistics over one chunk of draws.

    Module level so process pools can pickle it.  Returns arrays only; the
    caller combines chunks in chunk order.
    """
    descriptor, seed, start, count, stack = task
    cls = parse_class(descriptor)
    idx = np.arange(start, start + count, dtype=np.int64)
    v = sample_v_batch(cls, seed, idx)
    ts = np.einsum("rij,bji->rb", stack, v).real
    return (
        ts.sum(axis=1),
        (ts ** 2).sum(axis=1),
        (ts ** 3).sum(axis=1),
        (ts ** 4).sum(axis=1),
        ts @ ts.T,
    )


def _power_sums(descriptor: str, seed: int, draws: int, stack: np.ndarray,
                workers: int) -> tuple[np.ndarray, ...]:
    tasks = [(descriptor, seed, start, min(CHUNK, draws - start), stack)
             for start in range(0, draws, CHUNK)]
    r = stack.shape[0]
    s1, s2, s3, s4 = (np.zeros(r) for _ in range(4))
    cross = np.zeros((r, r))
    if workers <= 1:
        results = map(_chunk_stats, tasks)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_chunk_stats, tasks)
    # map() yields in task order, so the reduction order is fixed
    for c1, c2, c3, c4, cc in results:
        s1 += c1
        s2 += c2
        s3 += c3
        s4 += c4
        cross += cc
    if workers > 1:
        pool.shutdown()
    return s1, s2, s3, s4, cross


# ---------------------------------------------------------------------------
# k-statistics


@dataclass(frozen=True)
class KStats:
    """Unbiased cumulant estimators from power sums of one statistic."""

    n: int
    k1: float
    k2: float
    k3: float
    k4: float
    m2: float
    m4: float


def k_statistics(s1: float, s2: float, s3: float, s4: float, n: int) -> KStats:
    m1 = s1 / n
    m2 = s2 / n - m1 ** 2
    m3 = s3 / n - 3 * m1 * s2 / n + 2 * m1 ** 3
    m4 = s4 / n - 4 * m1 * s3 / n + 6 * m1 ** 2 * s2 / n - 3 * m1 ** 4
    k2 = n / (n - 1) * m2
    k3 = n ** 2 * m3 / ((n - 1) * (n - 2))
    k4 = (n ** 2 * ((n + 1) * m4 - 3 * (n - 1) * m2 ** 2)
          / ((n - 1) * (n - 2) * (n - 3)))
    return KStats(n=n, k1=m1, k2=k2, k3=k3, k4=k4, m2=m2, m4=m4)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class MatrixResult:
    name: str
    stats: KStats
    theory_mean: float
    theory_var_exact: float
    theory_var_limit: float
    se_mean: float
    se_var: float
    g1: float
    g2: float
    g1_bound: float
    g2_bound: float
    degenerate: bool
    mean_ok: bool
    var_exact_ok: bool
    var_limit_ok: bool
    skew_ok: bool
    kurt_ok: bool

    @property
    def all_ok(self) -> bool:
        return (self.mean_ok and self.var_exact_ok and self.var_limit_ok
                and self.skew_ok and self.kurt_ok)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "draws": self.stats.n,
            "k1": self.stats.k1, "k2": self.stats.k2,
            "k3": self.stats.k3, "k4": self.stats.k4,
            "theory_mean": self.theory_mean,
            "theory_var_exact": self.theory_var_exact,
            "theory_var_limit": self.theory_var_limit,
            "se_mean": self.se_mean, "se_var": self.se_var,
            "g1": self.g1, "g2": self.g2,
            "g1_bound": self.g1_bound, "g2_bound": self.g2_bound,
            "degenerate": self.degenerate,
            "mean_ok": self.mean_ok,
            "var_exact_ok": self.var_exact_ok,
            "var_limit_ok": self.var_limit_ok,
            "skew_ok": self.skew_ok, "kurt_ok": self.kurt_ok,
        }


@dataclass(frozen=True)
class PairResult:
    left: str
    right: str
    empirical: float
    theory_exact: float
    theory_limit: float
    se: float
    abs_ok: bool
    rel_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.abs_ok and self.rel_ok

    def to_json(self) -> dict:
        return {
            "left": self.left, "right": self.right,
            "empirical": self.empirical,
            "theory_exact": self.theory_exact,
            "theory_limit": self.theory_limit,
            "se": self.se,
            "abs_ok": self.abs_ok, "rel_ok": self.rel_ok,
        }


@dataclass(frozen=True)
class SampleReport:
    descriptor: str
    seed: int
    draws: int
    chunk: int
    version: str
    matrices: tuple[MatrixResult, ...]
    pairs: tuple[PairResult, ...]

    @property
    def all_ok(self) -> bool:
        return (all(m.all_ok for m in self.matrices)
                and all(p.all_ok for p in self.pairs))

    def to_json(self) -> dict:
        return {
            "class": self.descriptor,
            "seed": self.seed,
            "draws": self.draws,
            "chunk": self.chunk,
            "version": self.version,
            "matrices": [m.to_json() for m in self.matrices],
            "pairs": [p.to_json() for p in self.pairs],
            "all_ok": self.all_ok,
        }


def report_json(report) -> str:
    """Canonical serialization: sorted keys, no volatile fields."""
    return json.dumps(report.to_json(), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# running an experiment


def _matrix_result(name: str, ks: KStats, mean_th: float, var_exact: float,
                   var_limit: float) -> MatrixResult:
    n = ks.n
    se_mean = sqrt(max(ks.k2, 0.0) / n)
    se_var = sqrt(max(ks.m4 - ks.m2 ** 2, 0.0) / n)
    slack = _ATOL * (1.0 + abs(mean_th) + var_exact)
    mean_ok = abs(ks.k1 - mean_th) <= 5 * se_mean + slack
    var_exact_ok = abs(ks.k2 - var_exact) <= 5 * se_var + slack
    var_limit_ok = (abs(ks.k2 - var_limit) <= 5 * se_var + slack
                    and abs(ks.k2 - var_limit) <= 0.1 * var_limit + slack)
    degenerate = var_exact <= _ATOL
    g1_bound = 5 * sqrt(6.0 / n)
    g2_bound = 5 * sqrt(24.0 / n)
    if degenerate:
        g1 = g2 = 0.0
        skew_ok = kurt_ok = True
    else:
        g1 = ks.k3 / ks.k2 ** 1.5
        g2 = ks.k4 / ks.k2 ** 2
        skew_ok = abs(g1) <= g1_bound
        kurt_ok = abs(g2) <= g2_bound
    return MatrixResult(
        name=name, stats=ks, theory_mean=mean_th,
        theory_var_exact=var_exact, theory_var_limit=var_limit,
        se_mean=se_mean, se_var=se_var, g1=g1, g2=g2,
        g1_bound=g1_bound, g2_bound=g2_bound, degenerate=degenerate,
        mean_ok=mean_ok, var_exact_ok=var_exact_ok, var_limit_ok=var_limit_ok,
        skew_ok=skew_ok, kurt_ok=kurt_ok)


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> SampleReport:
    """Sample the class, estimate cumulants of each Re Tr(A V), and compare
    with the exact and limiting theory."""
    cls = parse_class(spec.descriptor)
    exact = [project_w_exact(cls, build_matrix(cls, ms)) for ms in spec.matrices]
    floats = [crat_to_complex(p) for p in exact]
    stack = np.stack(floats)
    names = _unique_names([ms.name for ms in spec.matrices])

    s1, s2, s3, s4, cross = _power_sums(
        cls.describe(), spec.seed, spec.draws, stack, workers)
    n = spec.draws
    limit_cov = theoretical_covariance(cls, floats)

    matrices = []
    for i in range(len(exact)):
        ks = k_statistics(float(s1[i]), float(s2[i]), float(s3[i]),
                          float(s4[i]), n)
        mean_th = float(chiral_mean_exact(cls, exact[i]))
        var_exact = float(exact_variance_closed(cls, exact[i]))
        matrices.append(_matrix_result(names[i], ks, mean_th, var_exact,
                                       float(limit_cov[i, i])))

    pairs = []
    for i in range(len(exact)):
        for j in range(i + 1, len(exact)):
            emp = n / (n - 1) * (float(cross[i, j]) / n
                                 - matrices[i].stats.k1 * matrices[j].stats.k1)
            th_exact = float(exact_covariance_closed(cls, exact[i], exact[j]))
            th_limit = float(limit_cov[i, j])
            se = sqrt(max(matrices[i].stats.k2 * matrices[j].stats.k2
                          + emp ** 2, 0.0) / n)
            slack = _ATOL * (1.0 + abs(th_exact))
            abs_ok = abs(emp - th_limit) <= 5 * se + slack
            rel_ok = (abs(emp - th_limit) <= 0.15 * abs(th_limit) + slack
                      if abs(th_limit) > _ATOL else abs_ok)
            pairs.append(PairResult(
                left=names[i], right=names[j], empirical=emp,
                theory_exact=th_exact, theory_limit=th_limit, se=se,
                abs_ok=abs_ok, rel_ok=rel_ok))

    return SampleReport(descriptor=cls.describe(), seed=spec.seed,
                        draws=spec.draws, chunk=CHUNK, version=__version__,
                        matrices=tuple(matrices), pairs=tuple(pairs))


def _unique_names(names: list[str]) -> list[str]:
    seen: dict[str, int] = {}
    out = []
    for name in names:
        seen[name] = seen.get(name, 0) + 1
        out.append(name if seen[name] == 1 else f"{name}-{seen[name]}")
    return out


# ---------------------------------------------------------------------------
# exact-versus-limit convergence sweep


@dataclass(frozen=True)
class SweepRow:
    descriptor: str
    size: int
    exact: Fraction
    limit: float
    deviation: float

    def to_json(self) -> dict:
        return {"class": self.descriptor, "n": self.size,
                "exact": str(self.exact), "limit": self.limit,
                "deviation": self.deviation}


@dataclass(frozen=True)
class SweepReport:
    tag: str
    recipe: str
    rows: tuple[SweepRow, ...]
    fit_c: float
    all_zero: bool
    decays: bool
    in_band: bool

    @property
    def ok(self) -> bool:
        return self.all_zero or (self.decays and self.in_band)

    def to_json(self) -> dict:
        return {"tag": self.tag, "recipe": self.recipe,
                "rows": [r.to_json() for r in self.rows],
                "fit_c": self.fit_c, "all_zero": self.all_zero,
                "decays": self.decays, "in_band": self.in_band,
                "ok": self.ok}


def convergence_sweep(tag: str, sizes: tuple[int, ...] = (2, 4, 6, 8),
                      recipe: str = "shift-diag", *,
                      budget: int = DEFAULT_PAIR_BUDGET) -> SweepReport:
    """Exact finite-size variance against its limit over a grid of sizes.

    The exact value is computed twice, by the pair engine and by the closed
    form, and the two must agree identically.  The deviation profile is then
    checked for decay like c/n: monotone nonincreasing and each point within
    a factor of three of the fitted c/n curve.  Classes whose exact variance
    equals the limit at every size pass trivially.
    """
    rows = []
    for n in sizes:
        descriptor = default_descriptor(tag, n)
        cls = parse_class(descriptor)
        a = build_matrix(cls, MatrixSpec(recipe))
        ev = exact_variance(cls, a, budget=budget)
        closed = exact_variance_closed(cls, a)
        if ev != closed:
            raise StructureError(
                f"pair engine and closed form disagree for {descriptor}: "
                f"{ev} vs {closed}")
        av = asymptotic_variance(cls, crat_to_complex(a))
        dev = abs(float(ev) - av) / av
        rows.append(SweepRow(descriptor=descriptor, size=n, exact=ev,
                             limit=av, deviation=dev))

    devs = [r.deviation for r in rows]
    all_zero = max(devs) <= 1e-12
    if all_zero:
        return SweepReport(tag=tag, recipe=recipe, rows=tuple(rows),
                           fit_c=0.0, all_zero=True, decays=True, in_band=True)
    fit_c = sum(r.size * r.deviation for r in rows) / len(rows)
    decays = all(devs[i + 1] <= devs[i] + 1e-12 for i in range(len(devs) - 1))
    in_band = all(fit_c / (3 * r.size) <= r.deviation <= 3 * fit_c / r.size
                  for r in rows)
    return SweepReport(tag=tag, recipe=recipe, rows=tuple(rows), fit_c=fit_c,
                       all_zero=all_zero, decays=decays, in_band=in_band)
