import random
from fractions import Fraction

import numpy as np
import pytest

from haarsym.exactalg import CRat, crat_matrix, crat_to_complex
from haarsym.moments import (
    chiral_mean,
    chiral_mean_exact,
    exact_covariance,
    exact_covariance_closed,
    exact_mean,
    exact_variance,
    exact_variance_closed,
    gamma_value,
    project_w_exact,
    theoretical_covariance,
)
from haarsym.sampling import sample_v_batch
from haarsym.spaces import CLASS_TAGS, parse_class, project_w

DESCRIPTORS = (
    "A:n=3", "AI:n=3", "AII:n=3", "BD:n=4", "DIII:n=3", "C:n=3", "CI:n=3",
    "AIII:n=4,p=2,q=2", "AIII:n=5,p=2,q=3", "BDI:n=4,p=3,q=1",
    "CII:n=4,p=1,q=3", "CII:n=5,p=3,q=2",
)


def _random_cmatrix(rng: random.Random, m: int):
    return crat_matrix([
        [CRat(Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
              Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
         for _ in range(m)] for _ in range(m)])


def test_variance_engine_matches_closed_form():
    rng = random.Random(17)
    for desc in DESCRIPTORS:
        cls = parse_class(desc)
        for _ in range(2):
            a = _random_cmatrix(rng, cls.ambient)
            assert exact_variance(cls, a) == exact_variance_closed(cls, a), desc


def test_covariance_engine_matches_closed_form():
    rng = random.Random(23)
    for desc in DESCRIPTORS[:6]:
        cls = parse_class(desc)
        a = _random_cmatrix(rng, cls.ambient)
        b = _random_cmatrix(rng, cls.ambient)
        assert exact_covariance(cls, a, b) == exact_covariance_closed(cls, a, b), desc


def test_closed_form_from_first_principles():
    # independent rederivation: project, take the squared norm of the
    # coefficients, divide by the class's variance denominator
    rng = random.Random(29)
    cls = parse_class("AI:n=4")
    a = _random_cmatrix(rng, 4)
    pa = project_w_exact(cls, a)
    x = sum((z * z.conj()).re for row in pa for z in row)
    assert exact_variance_closed(cls, a) == x / Fraction(cls.n + 1)

    bd = parse_class("BD:n=5")
    b = _random_cmatrix(rng, 5)
    pb = project_w_exact(bd, b)
    xb = sum((z * z.conj()).re for row in pb for z in row)
    assert exact_variance_closed(bd, b) == xb / Fraction(bd.n)


def test_exact_projection_matches_float_projection():
    rng = random.Random(31)
    for desc in DESCRIPTORS:
        cls = parse_class(desc)
        a = _random_cmatrix(rng, cls.ambient)
        exact = np.asarray(crat_to_complex(project_w_exact(cls, a)))
        floats = project_w(cls, np.asarray(crat_to_complex(a)))
        assert np.max(np.abs(exact - floats)) < 1e-12, desc


def test_exact_mean_laws():
    rng = random.Random(37)
    for desc in DESCRIPTORS:
        cls = parse_class(desc)
        a = _random_cmatrix(rng, cls.ambient)
        mean = exact_mean(cls, a)
        if cls.is_chiral:
            assert mean == chiral_mean_exact(cls, a), desc
        else:
            assert mean == 0, desc


def test_variance_laws_non_chiral():
    # variance equals the squared norm of the projected coefficients over a
    # class-specific rational denominator
    rng = random.Random(41)
    n = 6
    laws = {
        "A": Fraction(1, 2 * n),
        "AI": Fraction(1, n + 1),
        "AII": Fraction(1, 2 * n - 1),
        "BD": Fraction(1, n),
        "DIII": Fraction(2, 2 * n - 1),
        "C": Fraction(1, 2 * n),
        "CI": Fraction(2, 2 * n + 1),
    }
    for tag, factor in laws.items():
        cls = parse_class(f"{tag}:n={n}")
        a = _random_cmatrix(rng, cls.ambient)
        pa = project_w_exact(cls, a)
        x = sum((z * z.conj()).re for row in pa for z in row)
        assert exact_variance_closed(cls, a) == x * factor, tag


def test_variance_laws_chiral():
    # same law with the constant direction along the signature removed
    from haarsym.exactalg import crat_matmul, crat_trace
    from haarsym.moments import _exact_structure

    rng = random.Random(43)
    cases = {
        "AIII:n=5,p=3,q=2": lambda n: Fraction(1, n * (n * n - 1)),
        "BDI:n=5,p=4,q=1": lambda n: Fraction(2, n * (n - 1) * (n + 2)),
    }
    for desc, factor in cases.items():
        cls = parse_class(desc)
        a = _random_cmatrix(rng, cls.ambient)
        pa = project_w_exact(cls, a)
        x = sum((z * z.conj()).re for row in pa for z in row)
        sig = _exact_structure(cls)["sig"]
        t = crat_trace(crat_matmul(pa, sig)).re
        w = 4 * cls.p * cls.q
        want = w * (x - t * t / Fraction(cls.n)) * factor(cls.n)
        assert exact_variance_closed(cls, a) == want, desc


def test_flat_direction_of_chiral_classes():
    # the signature statistic is constant, so its variance vanishes exactly
    from haarsym.montecarlo import MatrixSpec, build_matrix

    for desc in ("AIII:n=5,p=3,q=2", "BDI:n=6,p=4,q=2", "CII:n=4,p=3,q=1"):
        cls = parse_class(desc)
        sig = build_matrix(cls, MatrixSpec("signature"))
        assert exact_variance_closed(cls, sig) == 0
        assert exact_variance(cls, sig) == 0
        sig_f = np.asarray(crat_to_complex(sig))
        cov = theoretical_covariance(cls, [sig_f])
        assert abs(cov[0, 0]) < 1e-12
        assert abs(chiral_mean(cls, sig_f) - float(chiral_mean_exact(cls, sig))) < 1e-12


def test_theoretical_covariance_is_symmetric_psd():
    rng = np.random.default_rng(43)
    for desc in ("AI:n=8", "C:n=5", "AIII:n=6,p=4,q=2"):
        cls = parse_class(desc)
        m = cls.ambient
        mats = [rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
                for _ in range(3)]
        sigma = theoretical_covariance(cls, mats)
        assert np.max(np.abs(sigma - sigma.T)) < 1e-12
        assert np.linalg.eigvalsh(sigma).min() > -1e-10


def test_polarization_identity():
    rng = random.Random(47)
    cls = parse_class("CI:n=3")
    a = _random_cmatrix(rng, cls.ambient)
    b = _random_cmatrix(rng, cls.ambient)
    cov = exact_covariance_closed(cls, a, b)
    assert exact_covariance_closed(cls, b, a) == cov
    assert exact_covariance_closed(cls, a, a) == exact_variance_closed(cls, a)


def test_small_sample_agreement():
    # cheap end-to-end: sampled variance near the exact value
    cls = parse_class("AI:n=4")
    rng = random.Random(53)
    a = _random_cmatrix(rng, 4)
    af = np.asarray(crat_to_complex(a))
    v = sample_v_batch(cls, seed=71, indices=np.arange(4000))
    t = np.einsum("bij,ji->b", v, af).real
    exact = float(exact_variance_closed(cls, a))
    se = np.sqrt(2.0 / len(t)) * exact
    assert abs(t.var(ddof=1) - exact) < 5 * se + 1e-9
