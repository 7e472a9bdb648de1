import math

import numpy as np
import pytest

from rrsim import power, rates
from rrsim.errors import DegenerateModel, RateUnreachable
from rrsim.geometry import default_scene
from rrsim.power import PowerModel


def test_l_pw_reference(model):
    # 0.1 / (5e-6 + 5e-4)
    assert power.element_power_ratio(model) == pytest.approx(198.01980198019803, rel=1e-14)


def test_grouping_amortises_converter():
    lpw1 = power.element_power_ratio(PowerModel(group_size=1))
    lpw4 = power.element_power_ratio(PowerModel(group_size=4))
    assert lpw4 > lpw1
    assert power.power_rrs(PowerModel(group_size=4), 400).watts == pytest.approx(400 * 5e-6 + 100 * 5e-4 + 5)


def test_degenerate_model():
    with pytest.raises(DegenerateModel):
        power.element_power_ratio(PowerModel(diode_power=0.0, converter_power=0.0))


def test_power_draw(model):
    assert power.power_pa(model, 4096).watts == pytest.approx(414.6)
    assert power.power_pa(model, 4096).exceeds_budget
    assert not power.power_rrs(model, 10000).exceeds_budget


def test_closed_counts_invert_rates(scene):
    n = power.pa_count_closed(scene, 22.0)
    assert math.log2(1 + rates.pa_farfield_snr(scene, n)) == pytest.approx(22.0, abs=1e-10)
    n = power.rrs_count_closed(scene, 22.0)
    assert math.log2(1 + rates.rrs_lower_farfield_snr(scene, n)) == pytest.approx(22.0, abs=1e-10)


def test_g_closed_is_count_ratio(scene):
    c = 23.0
    assert power.g_closed(c, scene) == pytest.approx(
        power.rrs_count_closed(scene, c) / power.pa_count_closed(scene, c), rel=1e-12
    )


def test_g_reference_values(scene):
    assert power.g_closed(20.0, scene) == pytest.approx(63.72, rel=1e-3)


def test_g_numeric_near_closed(scene):
    for c in (20.5, 23.0, 25.0):
        assert power.g_numeric(c, scene) == pytest.approx(power.g_closed(c, scene), rel=1e-5)


def test_unreachable_rate(scene):
    with pytest.raises(RateUnreachable):
        power.g_closed(40.0, scene)
    with pytest.raises(RateUnreachable) as info:
        power.rrs_count_numeric(scene, 40.0)
    assert info.value.technology == "rrs"


def test_crossover_reference(scene, model):
    rep = power.crossover_rates(scene, model)
    assert rep.c_e1 == pytest.approx(16.5286, abs=1e-3)
    assert rep.c_e2 == pytest.approx(26.7726, abs=1e-3)
    assert rep.rrs_wins_interval == (rep.c_min, rep.c_thr)
    for root in (rep.c_e1, rep.c_e2):
        assert power.g_closed(root, scene) == pytest.approx(rep.l_pw, rel=1e-6)
    assert rep.g_min == pytest.approx(21.49, rel=1e-3)


def test_empty_interval_when_shifters_are_cheap(scene):
    rep = power.crossover_rates(scene, PowerModel(shifter_power=0.1e-6))
    assert rep.l_pw < rep.g_min
    assert rep.rrs_wins_interval is None and rep.c_e1 is None


def test_whole_grid():
    assert power.whole_grid(100.0, 1.0) == 100
    assert power.whole_grid(100.5, 1.0) == 121
    assert power.whole_grid(7.0, 2.0) == 8


def test_verdict_far_field(scene, model):
    v = power.verdict(22.0, scene, model)
    assert v.outcome == "rrs-wins"
    assert v.rrs_method == v.pa_method == "closed-form-ff"
    assert v.power_ratio < 1


def test_verdict_rejects_low_rate(scene, model):
    with pytest.raises(ValueError):
        power.verdict(10.0, scene, model)


def test_verdict_infeasible(scene):
    v = power.verdict(22.0, scene, PowerModel(max_power=6.0))
    assert v.outcome == "infeasible" and "pa" in v.over_budget


def test_near_field_feed_tradeoff(model):
    # beyond the far-field window a farther, less directive feed needs fewer surface elements
    c = 26.3
    a = default_scene(feed_distance=0.15, gain_exponent=5.0)
    b = default_scene(feed_distance=0.25, gain_exponent=3.0)
    va = power.verdict(c, a, model)
    vb = power.verdict(c, b, model)
    assert c > rates.farfield_thresholds(a).rate_threshold
    assert vb.rrs_count < va.rrs_count
    assert vb.pa_count == va.pa_count
    assert vb.power_pa == va.power_pa


def test_discrete_derivative_single_sign_change(scene, model):
    thr = rates.farfield_thresholds(scene).rate_threshold
    grid = np.linspace(model.min_rate, thr, 201)[:-1]
    g = np.array([power.g_closed(c, scene) for c in grid])
    signs = np.sign(np.diff(g))
    assert np.count_nonzero(np.diff(signs) != 0) == 1
