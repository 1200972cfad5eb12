import json
from fractions import Fraction

import numpy as np
import pytest
import scipy.stats

import haarsym.montecarlo as mc
from haarsym import __version__
from haarsym.errors import StructureError
from haarsym.exactalg import CRat
from haarsym.spaces import parse_class


def test_default_signature():
    assert mc.default_signature(2) == (1, 1)
    assert mc.default_signature(5) == (3, 2)
    assert mc.default_signature(50) == (30, 20)
    for n in range(2, 40):
        p, q = mc.default_signature(n)
        assert p + q == n and p >= 1 and q >= 1


def test_default_descriptor():
    assert mc.default_descriptor("AI", 5) == "AI:n=5"
    assert mc.default_descriptor("BDI", 5) == "BDI:n=5,p=3,q=2"


def test_build_matrix_recipes():
    cls = parse_class("A:n=4")
    ident = mc.build_matrix(cls, mc.MatrixSpec("identity"))
    assert ident[2][2] == CRat(Fraction(1)) and ident[0][1] == CRat(Fraction(0))

    shift = mc.build_matrix(cls, mc.MatrixSpec("cyclic-shift"))
    assert shift[0][1] == CRat(Fraction(1)) and shift[3][0] == CRat(Fraction(1))

    sd = mc.build_matrix(cls, mc.MatrixSpec("shift-diag"))
    assert sd[1][1] == CRat(Fraction(1, 2))
    assert sd[1][2] == CRat(Fraction(1))

    chiral = parse_class("AIII:n=4,p=3,q=1")
    sig = mc.build_matrix(chiral, mc.MatrixSpec("signature"))
    assert sig[0][0] == CRat(Fraction(1)) and sig[3][3] == CRat(Fraction(-1))

    with pytest.raises(ValueError):
        mc.build_matrix(cls, mc.MatrixSpec("signature"))
    with pytest.raises(ValueError):
        mc.build_matrix(cls, mc.MatrixSpec("no-such-recipe"))


def test_build_matrix_explicit_rows():
    cls = parse_class("A:n=2")
    spec = mc.MatrixSpec("custom", rows=(("1/2", [0, 1]), (3, "-2/7")))
    m = mc.build_matrix(cls, spec)
    assert m[0][0] == CRat(Fraction(1, 2))
    assert m[0][1] == CRat(Fraction(0), Fraction(1))
    assert m[1][0] == CRat(Fraction(3))
    assert m[1][1] == CRat(Fraction(-2, 7))
    with pytest.raises(ValueError):
        mc.build_matrix(cls, mc.MatrixSpec("bad", rows=((1,),)))


def test_experiment_spec_parsing(tmp_path):
    doc = {"class": "AI:n=6", "draws": 100, "seed": 3,
           "matrices": ["shift-diag",
                        {"name": "tiny", "rows": [["1/2"] * 6] * 6}]}
    spec = mc.ExperimentSpec.from_dict(doc)
    assert spec.descriptor == "AI:n=6"
    assert spec.matrices[0].name == "shift-diag"
    assert spec.matrices[1].name == "tiny"
    assert spec.matrices[1].rows is not None
    with pytest.raises(ValueError):
        mc.MatrixSpec.from_config("no-such-recipe")

    jpath = tmp_path / "exp.json"
    jpath.write_text(json.dumps(doc))
    assert mc.ExperimentSpec.from_file(jpath) == spec

    tpath = tmp_path / "exp.toml"
    tpath.write_text('class = "AI:n=6"\ndraws = 100\nseed = 3\n'
                     'matrices = ["shift-diag", "identity"]\n')
    toml_spec = mc.ExperimentSpec.from_file(tpath)
    assert toml_spec.descriptor == spec.descriptor
    assert toml_spec.draws == spec.draws

    with pytest.raises(ValueError):
        mc.ExperimentSpec.from_dict({"class": "AI:n=6", "draws": 4,
                                     "matrices": ["identity"], "seed": 0})

    # structural junk maps to ValueError so the CLI can report it cleanly
    with pytest.raises(ValueError, match="malformed"):
        mc.ExperimentSpec.from_dict({"draws": 100, "matrices": ["identity"]})
    with pytest.raises(ValueError, match="malformed"):
        mc.ExperimentSpec.from_dict({"class": "AI:n=6", "draws": 100,
                                     "matrices": [{"name": "no-rows"}]})


def test_k_statistics_against_scipy():
    rng = np.random.default_rng(19)
    x = rng.standard_normal(500) * 1.7 + 0.3
    s1, s2, s3, s4 = (float((x ** p).sum()) for p in (1, 2, 3, 4))
    ks = mc.k_statistics(s1, s2, s3, s4, len(x))
    assert ks.k1 == pytest.approx(x.mean(), rel=1e-12)
    assert ks.k2 == pytest.approx(scipy.stats.kstat(x, 2), rel=1e-10)
    assert ks.k3 == pytest.approx(scipy.stats.kstat(x, 3), rel=1e-8)
    assert ks.k4 == pytest.approx(scipy.stats.kstat(x, 4), rel=1e-6)


def test_run_experiment_report_shape():
    spec = mc.ExperimentSpec(descriptor="BD:n=6",
                             matrices=(mc.MatrixSpec("shift-diag"),
                                       mc.MatrixSpec("identity")),
                             draws=2048, seed=5)
    rep = mc.run_experiment(spec)
    assert rep.descriptor == "BD:n=6"
    assert rep.version == __version__
    assert len(rep.matrices) == 2
    assert len(rep.pairs) == 1
    row = rep.matrices[0]
    assert row.theory_mean == 0.0
    assert row.theory_var_exact > 0
    assert row.mean_ok and row.var_exact_ok
    data = json.loads(mc.report_json(rep))
    assert data["class"] == "BD:n=6"
    assert "workers" not in data


def test_degenerate_statistic_is_flagged():
    spec = mc.ExperimentSpec(descriptor="AIII:n=5,p=3,q=2",
                             matrices=(mc.MatrixSpec("signature"),),
                             draws=256, seed=2)
    rep = mc.run_experiment(spec)
    row = rep.matrices[0]
    assert row.degenerate
    assert row.theory_var_exact == 0.0
    assert row.stats.k1 == pytest.approx(1.0, abs=1e-10)  # p - q = 1
    assert row.mean_ok and row.skew_ok and row.kurt_ok


def test_reports_identical_across_worker_counts():
    spec = mc.ExperimentSpec(descriptor="AI:n=5",
                             matrices=(mc.MatrixSpec("shift-diag"),
                                       mc.MatrixSpec("cyclic-shift")),
                             draws=1024, seed=9)
    serial = mc.report_json(mc.run_experiment(spec, workers=1))
    threaded = mc.report_json(mc.run_experiment(spec, workers=2))
    assert serial == threaded


def test_unique_names():
    assert mc._unique_names(["a", "b", "a", "a"]) == ["a", "b", "a-2", "a-3"]


def test_convergence_sweep_exact_class():
    rep = mc.convergence_sweep("A", (2, 3, 4))
    assert rep.all_zero and rep.ok
    assert rep.fit_c == 0.0


def test_convergence_sweep_decaying_class():
    rep = mc.convergence_sweep("AI", (2, 4, 6))
    assert not rep.all_zero
    assert rep.decays and rep.in_band and rep.ok
    # the law is exactly 1/(n+1) relative deviation for this class
    for row in rep.rows:
        assert row.deviation == pytest.approx(1.0 / (row.size + 1), rel=1e-9)


def test_convergence_sweep_guards_cross_route(monkeypatch):
    monkeypatch.setattr(mc, "exact_variance_closed",
                        lambda cls, a: Fraction(1, 7))
    with pytest.raises(StructureError):
        mc.convergence_sweep("AI", (2, 3))
