import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rrsim.em_model import (
    PhaseMask,
    cauchy_snr_bound,
    channel_field,
    exact_rate_pa,
    exact_snr_rrs,
    feed_gain,
    incident_field,
    incident_signal,
    optimal_phase_mask,
    snr_with_phases,
    ue_channel,
)
from rrsim.geometry import default_scene

# Frozen from a separate pure-Python double loop over elements (no numpy).
ORACLE_RRS_100 = (13906735.340321664, 23.7292805493623)
ORACLE_PA_64 = (108992626.1554843, 26.699655305789395)


def small_scene(side=8, rf=0.15, alpha=5.0):
    return default_scene(feed_distance=rf, gain_exponent=alpha, rrs_side=side, pa_side=side)


def test_feed_gain_boresight_and_edge():
    assert feed_gain(5.0, 0.0) == pytest.approx(12.0)
    assert feed_gain(5.0, math.pi / 2) == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(feed_gain(0.0, np.array([0.1, 1.0])), 2.0)


def test_reference_surface_snr(scene):
    rep = exact_snr_rrs(scene)
    assert rep.snr == pytest.approx(ORACLE_RRS_100[0], rel=1e-12)
    assert rep.rate == pytest.approx(ORACLE_RRS_100[1], rel=1e-13)


def test_reference_array_snr(scene):
    rep = exact_rate_pa(scene)
    assert rep.snr == pytest.approx(ORACLE_PA_64[0], rel=1e-12)
    assert rep.rate == pytest.approx(ORACLE_PA_64[1], rel=1e-13)


def test_scalar_accessors_match_fields():
    s = small_scene(5)
    y = incident_field(s)
    h = channel_field(s.ue, s.surface, s.wavelength)
    assert incident_signal(s, (1, 3)) == y[1, 3]
    assert ue_channel(s.ue, s.surface, s.wavelength, (4, 0)) == h[4, 0]
    with pytest.raises(IndexError):
        incident_signal(s, (5, 0))


def test_incident_amplitude_at_centre():
    # single element: y = sqrt(G_F A_F / (4 pi r_F^2)) with A_F = s^2 at normal incidence
    s = small_scene(1)
    s_elem = s.surface.element_dy
    expect = math.sqrt(12.0 * s_elem**2 / (4 * math.pi * 0.15**2))
    assert abs(incident_signal(s, (0, 0))) == pytest.approx(expect, rel=1e-14)


def test_optimal_mask_attains_exact():
    s = small_scene(6)
    rep = exact_snr_rrs(s)
    assert snr_with_phases(s, optimal_phase_mask(s)).snr == pytest.approx(rep.snr, rel=1e-12)


def test_random_masks_never_beat_alignment(rng):
    s = small_scene(6)
    best = exact_snr_rrs(s).snr
    for _ in range(50):
        assert snr_with_phases(s, PhaseMask.random(s.surface, rng)).snr <= best * (1 + 1e-12)


def test_quantization_loses_little_and_more_bits_help():
    s = small_scene(10)
    ideal = optimal_phase_mask(s)
    best = exact_snr_rrs(s).snr
    snrs = [snr_with_phases(s, ideal.quantized(b)).snr for b in (1, 2, 3, 6)]
    assert all(v <= best * (1 + 1e-12) for v in snrs)
    assert snrs[-1] > snrs[0]
    assert snrs[-1] == pytest.approx(best, rel=1e-3)


def test_mask_shape_checked():
    s = small_scene(4)
    with pytest.raises(ValueError):
        snr_with_phases(s, PhaseMask(np.zeros((3, 4))))


def test_zero_power_gives_zero_rate():
    s = small_scene(4).with_(tx_power=0.0)
    assert exact_snr_rrs(s).rate == 0.0
    assert exact_rate_pa(s).rate == 0.0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.floats(0.1, 0.5), st.floats(0.0, 8.0))
def test_cauchy_bound_dominates(side, rf, alpha):
    s = small_scene(side, rf, alpha)
    assert cauchy_snr_bound(s) >= exact_snr_rrs(s).snr * (1 - 1e-12)


@settings(max_examples=30, deadline=None)
@given(st.floats(1.0, 10.0))
def test_snr_scales_with_power(factor):
    s = small_scene(5)
    boosted = s.with_(tx_power=s.tx_power * factor)
    assert exact_snr_rrs(boosted).snr == pytest.approx(factor * exact_snr_rrs(s).snr, rel=1e-12)
    assert exact_rate_pa(boosted).snr == pytest.approx(factor * exact_rate_pa(s).snr, rel=1e-12)


def test_phases_wrapped():
    m = PhaseMask(np.array([[-0.5, 7.0]]))
    assert np.all((m.phases >= 0) & (m.phases < 2 * math.pi))
