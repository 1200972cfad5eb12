"""The eleven acceptance verdicts, one test each.

The heavy sampling runs (ten classes at size 50, twenty thousand draws)
are shared through a module-scoped context, so the variance, mean,
cumulant and covariance tests all read the same reports.  Expect this
module to dominate the suite's runtime.
"""

import os

import pytest

from haarsym import acceptance


@pytest.fixture(scope="module")
def ctx():
    workers = int(os.environ.get("HAARSYM_TEST_WORKERS", "0")) or max(
        1, min(4, os.cpu_count() or 1))
    return acceptance.AcceptanceContext(workers=workers)


def _run(fn, ctx):
    result = fn(ctx)
    print(result.line())
    assert result.ok, result.line()


def test_criterion_01_weingarten_inverse(ctx):
    _run(acceptance.criterion_weingarten_inverse, ctx)


def test_criterion_02_gram_oracles(ctx):
    _run(acceptance.criterion_gram_oracles, ctx)


def test_criterion_03_trace_and_anchors(ctx):
    _run(acceptance.criterion_trace_and_anchors, ctx)


def test_criterion_04_sampler_moments(ctx):
    _run(acceptance.criterion_sampler_moments, ctx)


def test_criterion_05_variance_all_classes(ctx):
    _run(acceptance.criterion_variance_all_classes, ctx)


def test_criterion_06_chiral_means(ctx):
    _run(acceptance.criterion_chiral_means, ctx)


def test_criterion_07_finite_size_decay(ctx):
    _run(acceptance.criterion_finite_size_decay, ctx)


def test_criterion_08_higher_cumulants(ctx):
    _run(acceptance.criterion_higher_cumulants, ctx)


def test_criterion_09_joint_covariance(ctx):
    _run(acceptance.criterion_joint_covariance, ctx)


def test_criterion_10_projections(ctx):
    _run(acceptance.criterion_projections, ctx)


def test_criterion_11_determinism(ctx):
    _run(acceptance.criterion_determinism, ctx)
