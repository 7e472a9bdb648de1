import math

import pytest
from hypothesis import given, settings, strategies as st

from rrsim import rates
from rrsim.em_model import exact_snr_rrs
from rrsim.errors import AlphaDomain, NotFarField, SingularRegion
from rrsim.geometry import default_scene

# Closed-form array SNR at 64 x 64, frozen from the pure-Python oracle.
ORACLE_PA_FARFIELD_64 = (108992318.72700778, 26.699651236466767)


def test_surface_prefactor(scene):
    lam = scene.wavelength
    expect = (
        scene.tx_power * 0.8**2 * 1.0 * 12.0 * scene.ue.psi * 50.0**2
        / (scene.noise_power * (4 * math.pi) ** 2 * 0.15**2)
    )
    assert rates.rrs_prefactor(scene) == pytest.approx(expect, rel=1e-14)
    assert rates.rrs_prefactor(scene) == pytest.approx(1.5176e17, rel=1e-4)
    assert lam == 1.15e-2


def test_quadrature_tracks_exact_sum(scene):
    q = rates.rate_rrs_quadrature(scene)
    assert q.method == "quadrature"
    assert q.rate == pytest.approx(exact_snr_rrs(scene).rate, rel=1e-4)


def test_array_quadrature_tracks_exact(scene):
    from rrsim.em_model import exact_rate_pa

    assert rates.rate_pa_quadrature(scene).rate == pytest.approx(exact_rate_pa(scene).rate, rel=1e-5)


def test_pa_farfield_oracle(scene):
    r = rates.rate_pa_farfield(scene)
    assert r.snr == pytest.approx(ORACLE_PA_FARFIELD_64[0], rel=1e-12)
    assert r.rate == pytest.approx(ORACLE_PA_FARFIELD_64[1], rel=1e-13)


def test_bound_ordering_reference(scene):
    lo = rates.rate_rrs_lower(scene).rate
    mid = rates.rate_rrs_quadrature(scene).rate
    hi = rates.rate_rrs_upper(scene).rate
    assert lo <= mid <= hi


@settings(max_examples=25, deadline=None)
@given(st.floats(2.0, 8.0), st.floats(0.1, 0.5), st.integers(5, 300))
def test_bound_ordering_random(alpha, rf, side):
    s = default_scene(feed_distance=rf, gain_exponent=alpha, rrs_side=side)
    lo = rates.rate_rrs_lower(s)
    mid = rates.rate_rrs_quadrature(s)
    slack = 2 * (lo.estimated_numerical_error + mid.estimated_numerical_error)
    assert lo.rate <= mid.rate + slack
    assert rates.rate_rrs_upper(s).rate >= mid.rate - slack


@settings(max_examples=20, deadline=None)
@given(st.integers(10, 2000))
def test_rate_grows_with_size(side):
    s = default_scene()
    a = rates.rate_rrs_quadrature(s, element_count=side**2).rate
    b = rates.rate_rrs_quadrature(s, element_count=(side + 1) ** 2).rate
    assert b > a


def test_singular_ring_needs_band(scene):
    big = 3000**2
    with pytest.raises(SingularRegion):
        rates.rate_rrs_upper(scene, exclusion_band=None, element_count=big)
    assert rates.rate_rrs_upper(scene, element_count=big).rate > 0


def test_alpha_domain():
    s = default_scene(gain_exponent=1.0)
    with pytest.raises(AlphaDomain):
        rates.rate_rrs_lower_farfield(s)


def test_near_field_rejected(scene):
    with pytest.raises(NotFarField):
        rates.rate_pa_farfield(scene, element_count=1e5)
    with pytest.raises(NotFarField):
        rates.rate_rrs_lower_farfield(scene, element_count=1e6)


def test_closed_form_matches_disc_quadrature(scene):
    n = 1000.0
    closed = rates.rate_rrs_lower_farfield(scene, element_count=n).snr
    quad = rates.rate_rrs_lower(scene, element_count=n).snr
    assert closed == pytest.approx(quad, rel=5e-3)


def test_thresholds(scene):
    thr = rates.farfield_thresholds(scene)
    assert thr.rrs_element_limit == pytest.approx(50.0 * 1.15e-2 / (2 * 2 * (1.15e-2 / 6) ** 2), rel=1e-12)
    assert thr.pa_element_limit == pytest.approx(thr.rrs_element_limit / 9, rel=1e-12)
    assert thr.rate_threshold == pytest.approx(25.4515, abs=1e-3)
    assert thr.rate_threshold == min(thr.rrs_rate_at_limit, thr.pa_rate_at_limit)


def test_continuous_count_keeps_aspect():
    s = default_scene()
    spec = rates.integral_spec(s, "rrs", element_count=400)
    spec_grid = rates.integral_spec(s.with_(rrs_side=20), "rrs")
    assert spec.region == spec_grid.region
