import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from gmd_extremes.errors import DomainError
from gmd_extremes.gmd import GmdParams, cdf, log_sf, mills_tail, pdf, quantile, sample, sf

from .conftest import SCALES, SHAPES

CDF_AT_2 = 1 - 0.26146412994911062220 / 2


def closed_form_k1(x):
    return x * x * math.exp(-x * x / 2) / math.sqrt(2 * math.pi)


def test_params_validation():
    with pytest.raises(DomainError):
        GmdParams(0.0, 1.0)
    with pytest.raises(DomainError):
        GmdParams(1.0, -1.0)
    p = GmdParams(2.0, 1.5)
    assert p.a == 1.25
    expected = 2.0 / (2 ** 1.25 * 1.5 ** 2.5 * math.gamma(1.25))
    assert math.exp(p.log_norm) == pytest.approx(expected, rel=1e-14)


def test_pdf_examples(maxwell):
    assert pdf(maxwell, 0.0) == 0.0
    assert pdf(maxwell, 1.0) == pytest.approx(0.2419707245, abs=1e-10)
    assert pdf(maxwell, -1.0) == pdf(maxwell, 1.0)


def test_pdf_closed_form_k1(maxwell):
    for x in np.linspace(-5, 5, 1001):
        assert abs(pdf(maxwell, x) - closed_form_k1(x)) <= 1e-14


@pytest.mark.parametrize("k", SHAPES)
@pytest.mark.parametrize("sigma", SCALES)
def test_density_integrates_to_one(k, sigma):
    p = GmdParams(k, sigma)
    top = quantile(p, 1 - 1e-12)
    mode = (2 * sigma**2) ** (1 / (2 * k))
    pts = sorted({0.5 * mode, mode, 2 * mode})
    pts = [v for v in pts if v < top]
    half, _ = quad(lambda x: pdf(p, x), 0, top, points=pts, epsabs=1e-14, epsrel=1e-13, limit=200)
    assert abs(2 * half - 1) <= 1e-10


def test_cdf_examples(maxwell):
    assert cdf(maxwell, 0.0) == 0.5
    assert cdf(maxwell, 2.0) == pytest.approx(CDF_AT_2, rel=1e-13)
    assert cdf(maxwell, 2.0) == pytest.approx(0.869268, abs=1e-6)
    assert cdf(maxwell, -1.3) == 1 - cdf(maxwell, 1.3)


@settings(max_examples=200, deadline=None)
@given(k=st.sampled_from(SHAPES), x=st.floats(-30, 30))
def test_reflection_exact(k, x):
    p = GmdParams(k, 1.0)
    assert cdf(p, -x) + cdf(p, x) == 1.0


@pytest.mark.parametrize("k", SHAPES)
def test_cdf_nondecreasing(k):
    p = GmdParams(k, 1.0)
    values = [cdf(p, x) for x in np.linspace(-6, 6, 601)]
    assert all(a <= b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("k", SHAPES)
@pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 4.0])
def test_pdf_is_derivative_of_cdf(k, x):
    p = GmdParams(k, 1.0)
    h = 1e-5 * max(1.0, x)
    fd = (cdf(p, x + h) - cdf(p, x - h)) / (2 * h)
    # use sf for the difference where cdf is saturated
    fd_sf = (sf(p, x - h) - sf(p, x + h)) / (2 * h)
    dens = pdf(p, x)
    if dens < 1e-12:
        assert fd_sf == pytest.approx(dens, rel=1e-4)
        return
    best = fd if abs(fd - dens) < abs(fd_sf - dens) else fd_sf
    assert best == pytest.approx(dens, rel=1e-6)


def test_sf_examples(maxwell):
    assert sf(maxwell, 2.0) == pytest.approx(0.26146412994911062220 / 2, rel=1e-13)
    assert sf(maxwell, 0.0) == 0.5
    assert sf(maxwell, 2.0) + cdf(maxwell, 2.0) == 1.0


def test_sf_far_tail_log_domain(maxwell):
    # sf(40) = e^{-797.23...} is below the smallest double, so the tail is
    # checked through log_sf against a rescaled quadrature of x^2 phi(x).
    import mpmath

    mpmath.mp.dps = 40
    rest = mpmath.quad(
        lambda s: (40 + s) ** 2 * mpmath.exp(-40 * s - s * s / 2) / mpmath.sqrt(2 * mpmath.pi),
        [0, 0.05, 0.2, 1, mpmath.inf],
    )
    ref = float(-800 + mpmath.log(rest))
    assert log_sf(maxwell, 40.0) == pytest.approx(ref, rel=1e-12)
    assert sf(maxwell, 40.0) == 0.0
    assert sf(maxwell, 37.0) > 0
    assert math.log(sf(maxwell, 37.0)) == pytest.approx(log_sf(maxwell, 37.0), rel=1e-13)


def test_quantile_examples(maxwell):
    assert quantile(maxwell, 0.5) == 0.0
    assert quantile(maxwell, 0.869268) == pytest.approx(2.0, abs=1e-6)
    with pytest.raises(DomainError):
        quantile(maxwell, 1.0)
    with pytest.raises(DomainError):
        quantile(maxwell, 0.0)


@settings(max_examples=200, deadline=None)
@given(k=st.sampled_from(SHAPES), sigma=st.sampled_from(SCALES), q=st.floats(1e-12, 1 - 1e-12))
def test_quantile_round_trip(k, sigma, q):
    p = GmdParams(k, sigma)
    x = quantile(p, q)
    if q > 0.5:
        assert sf(p, x) == pytest.approx(1 - q, rel=1e-9)
    else:
        assert cdf(p, x) == pytest.approx(q, rel=1e-9)
    assert cdf(p, x) == pytest.approx(q, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(k=st.sampled_from(SHAPES), q=st.floats(1e-12, 1 - 1e-12))
def test_quantile_antisymmetric(k, q):
    # only where the complement is exact in binary floating point
    assume(1 - (1 - q) == q)
    p = GmdParams(k, 1.0)
    assert quantile(p, 1 - q) == -quantile(p, q)


def test_sample_moments(maxwell):
    rng = np.random.default_rng(2024)
    draws = sample(maxwell, rng, 1_000_000)
    assert abs(draws.mean()) < 0.005
    assert abs((draws**2).mean() - 3.0) < 0.02
    assert abs((draws <= 2.0).mean() - CDF_AT_2) < 4 * math.sqrt(CDF_AT_2 * (1 - CDF_AT_2) / 1e6)


def test_sample_deterministic(maxwell):
    a = sample(maxwell, np.random.default_rng(7), 1000)
    b = sample(maxwell, np.random.default_rng(7), 1000)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("k", [0.5, 1.5, 6.0])
def test_sample_law_other_shapes(k):
    p = GmdParams(k, 0.7)
    draws = sample(p, np.random.default_rng(11), 200_000)
    for q in (0.1, 0.5, 0.8, 0.99):
        x = quantile(p, q)
        assert abs((draws <= x).mean() - q) < 4 * math.sqrt(q * (1 - q) / 200_000)


def test_mills_examples(maxwell):
    assert mills_tail(maxwell, 6.0, 3) / sf(maxwell, 6.0) == pytest.approx(1.0, abs=2e-4)
    r3 = abs(mills_tail(maxwell, 3.0, 1) / sf(maxwell, 3.0) - 1)
    r6 = abs(mills_tail(maxwell, 6.0, 1) / sf(maxwell, 6.0) - 1)
    assert 2.5 < r3 / r6 < 5.0
    with pytest.raises(DomainError):
        mills_tail(maxwell, 0.0, 1)


@pytest.mark.parametrize("k", SHAPES)
def test_mills_positive(k):
    p = GmdParams(k, 1.0)
    for x in (1.5, 2, 4, 8):
        for m in (1, 2, 3):
            assert mills_tail(p, x, m) >= 0


@pytest.mark.parametrize("k", [1.0, 1.5])
def test_mills_error_decreases_in_x_and_terms(k):
    p = GmdParams(k, 1.0)
    err = {(x, m): abs(mills_tail(p, x, m) / sf(p, x) - 1) for x in (4, 6, 8, 10) for m in (1, 2, 3)}
    for m in (1, 2, 3):
        assert err[(4, m)] > err[(6, m)] > err[(8, m)] > err[(10, m)]
    for x in (4, 6, 8, 10):
        assert err[(x, 1)] > err[(x, 2)] > err[(x, 3)]


def test_mills_exact_for_half_shape():
    # k = 1/2: the tail series terminates after the second factor
    p = GmdParams(0.5, 1.3)
    for x in (4.0, 8.0, 12.0):
        assert mills_tail(p, x, 2) == pytest.approx(sf(p, x), rel=1e-13)
        assert mills_tail(p, x, 3) == mills_tail(p, x, 2)
