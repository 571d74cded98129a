import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fraccover.cover_count import ScaleSeries, build_scale_series, rasterize
from fraccover.errors import DegenerateInputError, DomainError, InsufficientDataError
from fraccover.fractal_gen import generate_koch, generate_sierpinski
from fraccover.scaling_law import (
    NO_TRIM,
    TrimPolicy,
    estimate_dimension,
    fit_power_law,
    trim_scale_regime,
    verify_area_scaling,
)

KOCH = math.log(4) / math.log(3)
SIERPINSKI = math.log(3) / math.log(2)


def power_law(dim, c=1.0, deltas=(1.0, 0.5, 0.25, 0.125)):
    return ScaleSeries.from_counts(list(deltas), [c * d**-dim for d in deltas])


@pytest.fixture(scope="module")
def koch_series():
    return build_scale_series(rasterize(generate_koch(7), 3**7), 3, 7)


@pytest.fixture(scope="module")
def sierpinski_series():
    return build_scale_series(rasterize(generate_sierpinski(8), 2**8), 2, 8)


def test_exact_square_law():
    est = estimate_dimension(power_law(2.0))
    assert est.d_h == pytest.approx(2.0, abs=1e-12)
    assert est.r_squared == pytest.approx(1.0, abs=1e-12)
    assert est.n_points == 4
    assert est.scale_range == (0.125, 1.0)
    assert not est.out_of_range


def test_constant_series():
    s = ScaleSeries.from_counts([1.0, 0.5, 0.25], [5, 5, 5])
    est = estimate_dimension(s)
    assert est.d_h == 0.0
    assert est.log_c == pytest.approx(math.log(5))


def test_fit_against_numpy_polyfit():
    rng = np.random.default_rng(3)
    x = np.log(np.geomspace(1, 1e-3, 9))
    y = -1.37 * x + 0.4 + rng.normal(0, 0.05, x.size)
    slope, intercept, r2, se = fit_power_law(x, y)
    (p1, p0), cov = np.polyfit(x, y, 1, cov=True)
    assert slope == pytest.approx(p1, rel=1e-12)
    assert intercept == pytest.approx(p0, rel=1e-12)
    assert se == pytest.approx(math.sqrt(cov[0, 0]), rel=1e-9)
    assert r2 == pytest.approx(np.corrcoef(x, y)[0, 1] ** 2, rel=1e-12)


def test_estimate_errors():
    with pytest.raises(InsufficientDataError):
        estimate_dimension(power_law(1.0, deltas=(1.0, 0.5)))
    with pytest.raises(DegenerateInputError):
        fit_power_law(np.zeros(4), np.arange(4.0))


def test_out_of_range_flagged_not_clamped():
    est = estimate_dimension(power_law(2.5))
    assert est.out_of_range
    assert est.d_h == pytest.approx(2.5)


def test_koch_trimmed_fit(koch_series):
    est = estimate_dimension(koch_series, TrimPolicy())
    assert abs(est.d_h - KOCH) < 0.08
    assert est.scale_range == pytest.approx((9 / 3**7, 1 / 9))


def test_trim_noop():
    s = ScaleSeries.from_counts([0.1, 0.05, 0.02], [10, 40, 250], resolution=0.001)
    assert trim_scale_regime(s, TrimPolicy()).entries == s.entries


def test_trim_drops_low_count():
    s = ScaleSeries.from_counts([0.5, 0.1, 0.05, 0.02], [2, 10, 40, 250])
    t = trim_scale_regime(s)
    assert t.deltas.tolist() == [0.1, 0.05, 0.02]


def test_trim_resolution_floor_and_order():
    s = ScaleSeries.from_counts([0.1, 0.05, 0.02, 0.01], [10, 40, 250, 900], resolution=0.004)
    t = trim_scale_regime(s)
    assert t.deltas.tolist() == [0.1, 0.05, 0.02]
    t = trim_scale_regime(s, TrimPolicy(resolution=0.01))
    assert t.deltas.tolist() == [0.1, 0.05]


def test_trim_everything_raises():
    s = ScaleSeries.from_counts([0.5, 0.25], [1, 2])
    with pytest.raises(InsufficientDataError):
        trim_scale_regime(s)


def test_koch_trim_window(koch_series):
    t = trim_scale_regime(koch_series)
    # counts >= 8 and boxes of >= 4 cells leave boxes of 9..243 cells
    assert [round(d * 3**7) for d in t.deltas] == [243, 81, 27, 9]
    untrimmed = estimate_dimension(koch_series)
    trimmed = estimate_dimension(koch_series, TrimPolicy())
    assert abs(trimmed.d_h - KOCH) < 0.08
    assert abs(untrimmed.d_h - KOCH) < 0.08


def test_identity_residuals_exactly_zero(koch_series):
    rep = verify_area_scaling(koch_series, 1.3)
    identity = [p for p in rep.pairs if p.alpha == 1.0]
    assert len(identity) == len(koch_series)
    assert all(p.residual == 0.0 for p in identity)
    assert len(rep.pairs) == len(koch_series) ** 2


def test_exact_power_law_residuals():
    rep = verify_area_scaling(power_law(1.5, 3.0), 1.5)
    assert rep.max_abs_residual < 1e-12
    assert rep.median_abs_residual <= rep.max_abs_residual


def test_sierpinski_residuals(sierpinski_series):
    rep = verify_area_scaling(trim_scale_regime(sierpinski_series), SIERPINSKI)
    assert rep.median_abs_residual < 0.15


def test_residual_by_hand():
    s = ScaleSeries.from_counts([1.0, 0.5], [1, 3])
    rep = verify_area_scaling(s, 1.0)
    # pair 0 -> 1: alpha = 1/2, S = 1 then 3/4
    p = rep.pairs[1]
    assert p.alpha == 0.5 and p.delta == 1.0
    assert p.residual == pytest.approx(math.log(0.75) - math.log(0.5))


def test_verify_preconditions():
    with pytest.raises(InsufficientDataError):
        verify_area_scaling(ScaleSeries.from_counts([1.0], [1]), 1.0)
    with pytest.raises(DomainError):
        verify_area_scaling(power_law(1.0), float("nan"))


def test_restricted_summary(koch_series):
    rep = verify_area_scaling(trim_scale_regime(koch_series), KOCH)
    near = rep.restricted(math.log(3) + 1e-9, include_identity=False)
    assert near.size == 2 * (len(trim_scale_regime(koch_series)) - 1)


# r^2 of a nearly flat line is a ratio of rounding errors, so skip 0 < D < 0.01
dims = st.one_of(st.just(0.0), st.floats(0.01, 2.0))
consts = st.floats(1e-3, 1e3)
delta_lists = st.lists(st.floats(1e-4, 1.0), min_size=4, max_size=10, unique=True).filter(
    lambda ds: min(ds) < max(ds) / 1.5
)


def _series(dim, c, ds):
    ds = sorted(ds, reverse=True)
    if any(b >= a * (1 - 1e-9) for a, b in zip(ds, ds[1:])):
        ds = list(np.geomspace(ds[0], ds[0] / 100, len(ds)))
    return ScaleSeries.from_counts(ds, [c * d**-dim for d in ds])


@given(dims, consts, delta_lists)
def test_power_law_recovery(dim, c, ds):
    est = estimate_dimension(_series(dim, c, ds))
    assert est.d_h == pytest.approx(dim, abs=1e-10)
    assert est.log_c == pytest.approx(math.log(c), abs=1e-10)
    assert est.r_squared == pytest.approx(1.0, abs=1e-10)


@given(dims, consts, delta_lists, st.floats(0.01, 100.0))
def test_estimate_scale_invariant(dim, c, ds, k):
    s = _series(dim, c, ds)
    scaled = ScaleSeries.from_counts(list(s.deltas * k), list(s.counts * k**-dim))
    assert estimate_dimension(scaled).d_h == pytest.approx(estimate_dimension(s).d_h, abs=1e-10)


@given(st.lists(st.floats(1, 1e5), min_size=2, max_size=8), st.floats(0.0, 2.0))
def test_residual_antisymmetry(counts, d_h):
    ds = [2.0**-k for k in range(len(counts))]
    s = ScaleSeries.from_counts(ds, sorted(counts))
    rep = verify_area_scaling(s, d_h)
    n = len(s)
    for i in range(n):
        for j in range(n):
            assert rep.pairs[i * n + j].residual == -rep.pairs[j * n + i].residual


@given(dims, consts, delta_lists, st.sampled_from([-0.2, 0.2]))
def test_fitted_dimension_minimizes_median_residual(dim, c, ds, shift):
    s = _series(dim, c, ds)
    d_fit = estimate_dimension(s).d_h
    best = verify_area_scaling(s, d_fit).median_abs_residual
    assert best <= verify_area_scaling(s, d_fit + shift).median_abs_residual


def test_no_trim_policy_keeps_everything(koch_series):
    assert trim_scale_regime(koch_series, NO_TRIM).entries == koch_series.entries
