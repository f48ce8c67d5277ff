import math

import numpy as np
import pytest

from gmd_extremes import expansions as ex
from gmd_extremes.errors import DomainError, NumericError, UsageError
from gmd_extremes.gmd import GmdParams
from gmd_extremes.lab import (
    DEFAULT_N_GRID,
    ERROR_COLUMNS,
    PROBES,
    RATE_N_GRID,
    error_table,
    limit_probe,
    max_workers,
    mc_block_extremes,
    probe_both_stages,
    rate_fit,
    richardson_extrapolate,
)

from .conftest import SHAPES

# --- Richardson ----------------------------------------------------------------


def test_richardson_linear_exact():
    assert richardson_extrapolate([0.5, 0.25], [2 + 3 * 0.5, 2 + 3 * 0.25]) == pytest.approx(2.0, abs=1e-15)


def test_richardson_quadratic():
    t = [0.4, 0.2, 0.1]
    assert richardson_extrapolate(t, [3 + s + s * s for s in t]) == pytest.approx(3.0, abs=1e-12)


def test_richardson_constant():
    assert richardson_extrapolate([0.3, 0.2, 0.1], [1.25] * 3) == pytest.approx(1.25, abs=1e-15)


def test_richardson_errors():
    with pytest.raises(DomainError):
        richardson_extrapolate([0.2, 0.2], [1, 2])
    with pytest.raises(DomainError):
        richardson_extrapolate([0.2], [1])
    with pytest.raises(DomainError):
        richardson_extrapolate([0.1, 0.2], [1, 2])


# --- probes --------------------------------------------------------------------


def test_probe_lemma42_examples(maxwell):
    first, second = probe_both_stages("lemma42", maxwell, (1.0, 0.0))
    assert first.extrapolated == pytest.approx(-0.1839397, abs=0.01)
    assert second.target == pytest.approx(ex.w_k(maxwell, 1.0))
    assert second.rel_gap < 0.10


def test_probe_lemma42_rejects_printed_second_coefficient(maxwell):
    # the originally stated w_k(1) = 0.5058343 is not the limit the functional approaches
    second = limit_probe("lemma42", maxwell, (1.0, 0.0), stage=2, printed=True)
    assert second.target == pytest.approx(0.5058343, abs=1e-7)
    assert second.rel_gap > 0.5


def test_probe_thm23_examples(maxwell):
    first, second = probe_both_stages("thm23", maxwell, (0.0, 0.0))
    assert first.extrapolated == pytest.approx(-2.0, abs=0.05)
    assert second.extrapolated == pytest.approx(5.0, rel=0.15)


def test_probe_result_shape(maxwell):
    r = limit_probe("eq415", maxwell, (1.0, 0.0))
    assert r.n_grid == sorted(r.n_grid) and len(set(r.n_grid)) == len(r.n_grid)
    assert all(a > b for a, b in zip(r.t_grid, r.t_grid[1:]))
    assert len(r.n_grid) == len(r.t_grid) == len(r.values)
    assert r.abs_gap == abs(r.extrapolated - r.target)
    d = r.to_dict()
    assert d["functional_id"] == "eq415" and d["stage"] == 1


@pytest.mark.parametrize("k", SHAPES)
@pytest.mark.parametrize("pid", sorted(PROBES))
def test_every_probe_matches_its_targets(k, pid):
    p = GmdParams(k, 1.0)
    for pt in ((1.0, 0.0), (0.0, 0.0)):
        first, second = probe_both_stages(pid, p, pt)
        assert first.abs_gap < 0.01
        if second.target == 0.0:
            assert second.abs_gap < 0.0075
        else:
            assert second.rel_gap < 0.15


@pytest.mark.parametrize("k", SHAPES)
@pytest.mark.parametrize("pid", sorted(PROBES))
def test_probe_gap_shrinks_on_shifted_grid(k, pid):
    p = GmdParams(k, 1.0)
    shifted = [n * 1e6 for n in DEFAULT_N_GRID]
    base = limit_probe(pid, p, (1.0, 0.0), stage=1)
    moved = limit_probe(pid, p, (1.0, 0.0), shifted, stage=1)
    assert moved.abs_gap < base.abs_gap
    # second-stage gaps sit near the extrapolation noise floor for some entries
    base = limit_probe(pid, p, (1.0, 0.0), stage=2)
    moved = limit_probe(pid, p, (1.0, 0.0), shifted, stage=2)
    assert moved.abs_gap < max(base.abs_gap, 1e-3 * max(1.0, abs(base.target)))


def test_probe_errors(maxwell):
    with pytest.raises(UsageError):
        limit_probe("lemma99", maxwell, (1.0, 0.0))
    with pytest.raises(DomainError):
        limit_probe("lemma42", maxwell, (1.0, 0.0), [1e12, 1e6, 1e24])
    with pytest.raises(UsageError):
        limit_probe("lemma42", maxwell, (1.0, 0.0), stage=3)


# --- rates -----------------------------------------------------------------------


@pytest.mark.parametrize("k", [0.5, 1.0, 6.0])
def test_rate_slopes_cdf(k):
    p = GmdParams(k, 1.0)
    assert rate_fit(p, (1.0, 0.0), 1) == pytest.approx(1.0, abs=0.15)
    assert rate_fit(p, (1.0, 0.0), 2) == pytest.approx(2.0, abs=0.25)


@pytest.mark.parametrize("k", SHAPES)
def test_rate_slope_pdf(k):
    assert rate_fit(GmdParams(k, 1.0), (0.0, 0.0), 1, kind="pdf") == pytest.approx(1.0, abs=0.15)


def test_rate_slope_maxwell_default_grid(maxwell):
    grid = (1e6, 1e12, 1e24)
    assert rate_fit(maxwell, (1.0, 0.0), 1, grid) == pytest.approx(1.0, abs=0.15)


def test_rate_fit_flags_zero_errors():
    # far outside the support of the minimum both laws are exactly zero
    p = GmdParams(1.0, 1.0)
    with pytest.raises(NumericError, match="n ="):
        rate_fit(p, (800.0, -800.0), 1, [1e100, 1e200, 1e300])
    with pytest.raises(UsageError):
        rate_fit(p, (1.0, 0.0), 1, kind="mass")


# --- error tables -------------------------------------------------------------------


def test_error_table_shape_and_consistency():
    p = GmdParams(1.0, 1.0)
    recs = error_table(p, [50, 500], [0.0, 2.0], [-1.0, 6.0])
    assert len(recs) == 8
    assert [(r.n, r.x, r.y) for r in recs[:4]] == [(50, 0, -1), (50, 0, 6), (50, 2, -1), (50, 2, 6)]
    for r in recs:
        assert r.delta1 == abs(r.exact_cdf - r.s1)
        assert r.delta3 == abs(r.exact_cdf - r.s3)
        assert r.theta2 == abs(r.exact_pdf - r.t2)
    assert ERROR_COLUMNS[:7] == ("k", "sigma", "n", "x", "y", "b", "exact_cdf")
    assert error_table(p, [50, 500], [0.0, 2.0], [-1.0, 6.0]) == recs


def test_error_table_fig2_point(maxwell):
    (r,) = error_table(maxwell, [500], [2.0], [6.0])
    assert r.exact_cdf == pytest.approx(0.876415413973879, rel=1e-12)
    assert r.exact_cdf == pytest.approx(r.s1, abs=0.05)


def test_error_table_limits(maxwell):
    # the first-order error only decays like 1/log n, so even at n = 1e300 it
    # is the size of the b^{-2k} correction rather than round-off
    (far,) = error_table(maxwell, [1e300], [1.0], [0.0])
    assert far.delta1 < 1e-4
    assert far.delta1 == pytest.approx(abs(far.s2 - far.s1), rel=0.01)
    (mid,) = error_table(maxwell, [1e8], [1.0], [0.0])
    assert mid.delta3 <= mid.delta1


@pytest.mark.parametrize("k", SHAPES)
def test_larger_n_is_better(k):
    p = GmdParams(k, 1.0)
    small, large = error_table(p, [50, 5000], [2.0], [6.0])
    for name in ("delta1", "delta2", "delta3", "theta1", "theta2", "theta3"):
        assert getattr(large, name) < getattr(small, name), name


def test_error_table_rejects_small_n(maxwell):
    with pytest.raises(DomainError):
        error_table(maxwell, [2], [0.0], [0.0])


# --- Monte Carlo ---------------------------------------------------------------------


@pytest.fixture(scope="module")
def mc_run():
    p = GmdParams(1.0, 1.0)
    return mc_block_extremes(p, 100, 100_000, 2024, [(0.0, 0.0), (1.0, -1.0), (0.5, 50.0)])


def test_mc_within_binomial_bound(mc_run):
    dev0 = abs(mc_run.empirical[0] - mc_run.exact[0])
    q = mc_run.exact[0]
    assert dev0 <= 4 * math.sqrt(q * (1 - q) / mc_run.reps)
    assert mc_run.max_abs_dev <= mc_run.se_bound
    assert all(0 <= e <= 1 for e in mc_run.empirical)
    assert mc_run.max_abs_dev == max(abs(a - b) for a, b in zip(mc_run.empirical, mc_run.exact))


def test_mc_large_y_is_the_max_marginal(mc_run):
    assert mc_run.empirical[2] == mc_run.empirical_max[2]


def test_mc_deterministic_and_thread_independent(monkeypatch):
    p = GmdParams(1.5, 0.7)
    grid = [(0.0, 0.0), (2.0, -1.0)]
    monkeypatch.setenv("GMD_EXTREMES_THREADS", "1")
    one = mc_block_extremes(p, 20, 12_000, 7, grid)
    monkeypatch.setenv("GMD_EXTREMES_THREADS", "4")
    four = mc_block_extremes(p, 20, 12_000, 7, grid)
    assert one.to_dict() == four.to_dict()
    assert mc_block_extremes(p, 20, 12_000, 8, grid).empirical != one.empirical


def test_mc_deviation_trend():
    # four times the replications should roughly halve the deviation; checked
    # on the average over several seeds so the trend is not a coin flip
    p = GmdParams(1.0, 1.0)
    grid = [(0.0, 0.0), (1.0, -1.0)]
    small = np.mean([mc_block_extremes(p, 10, 2_000, s, grid).max_abs_dev for s in range(8)])
    large = np.mean([mc_block_extremes(p, 10, 8_000, s, grid).max_abs_dev for s in range(8)])
    assert large < small


def test_mc_guards(maxwell, monkeypatch):
    with pytest.raises(UsageError):
        mc_block_extremes(maxwell, 10_000, 200_000, 0, [(0.0, 0.0)])
    with pytest.raises(UsageError):
        mc_block_extremes(maxwell, 10, 10, 0, [])
    with pytest.raises(DomainError):
        mc_block_extremes(maxwell, 2, 10, 0, [(0.0, 0.0)])
    monkeypatch.setenv("GMD_EXTREMES_THREADS", "zero")
    with pytest.raises(UsageError):
        max_workers()


def test_rate_grid_is_geometric_in_log_n():
    logs = np.log(np.log(RATE_N_GRID))
    assert np.allclose(np.diff(logs), np.diff(logs)[0])
