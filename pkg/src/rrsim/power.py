"""Power consumption of both antenna technologies and the rate-dependent crossover.

Sizing is done on the family of surfaces/arrays sharing the scene's aspect
ratio (square for the reference scenario). Continuous element counts are used
for the ratio g(C); verdicts round up to whole grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from . import rates
from .errors import DegenerateModel, NoBracket, RateUnreachable
from .numerics import find_root_bracketed, minimize_unimodal


@dataclass(frozen=True)
class PowerModel:
    diode_power: float = 5e-6
    diodes_per_element: int = 1
    converter_power: float = 5e-4
    group_size: int = 1
    fpga_power: float = 5.0
    shifter_power: float = 0.1
    max_power: float = 250.0
    min_rate: float = 20.0

    def __post_init__(self):
        for name in ("diode_power", "converter_power", "fpga_power", "shifter_power", "max_power"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.diodes_per_element < 0:
            raise ValueError("diodes_per_element must be nonnegative")
        if self.group_size < 1:
            raise ValueError("group_size must be >= 1")
        if self.min_rate < 0:
            raise ValueError("min_rate must be nonnegative")

    @property
    def rrs_element_power(self):
        return self.diodes_per_element * self.diode_power + self.converter_power / self.group_size


class PowerDraw(NamedTuple):
    watts: float
    exceeds_budget: bool


def power_rrs(model, element_count):
    if element_count < 0:
        raise ValueError("element count must be nonnegative")
    w = (
        element_count * model.diodes_per_element * model.diode_power
        + element_count / model.group_size * model.converter_power
        + model.fpga_power
    )
    return PowerDraw(w, w > model.max_power)


def power_pa(model, element_count):
    if element_count < 0:
        raise ValueError("element count must be nonnegative")
    w = element_count * model.shifter_power + model.fpga_power
    return PowerDraw(w, w > model.max_power)


def element_power_ratio(model):
    """l_pw: one phase shifter's draw over one surface element's draw."""
    denom = model.rrs_element_power
    if denom <= 0:
        raise DegenerateModel("surface element power is zero; ratio undefined")
    return model.shifter_power / denom


# -- closed-form sizing (far field) ---------------------------------------

def pa_count_closed(scene, rate):
    """Array element count whose far-field rate equals ``rate``."""
    array = scene.require_array()
    snr = 2.0**rate - 1.0
    return snr * scene.ue.range**4 / (array.element_dy**2 * array.element_dz**2 * rates.pa_prefactor(scene))


def rrs_count_closed(scene, rate):
    """Surface element count whose far-field disc-bound rate equals ``rate``."""
    alpha = scene.feed.gain_exponent
    t = math.sqrt(2.0**rate - 1.0) / rates.rrs_farfield_scale(scene)
    if t >= 1.0:
        raise RateUnreachable(f"rate {rate:g} exceeds the surface's far-field ceiling", "rrs")
    x = (1.0 - t) ** (-4.0 / (alpha - 1.0)) - 1.0
    return 4.0 * scene.feed.distance**2 * x / rates.rrs_disc_area_coefficient(scene)


def g_closed(rate, scene):
    """Far-field ratio (surface elements)/(array elements) needed for ``rate``.

    Written out as the single expression; raises :class:`RateUnreachable` when
    the rate is at or beyond the surface's far-field ceiling.
    """
    alpha = scene.feed.gain_exponent
    array = scene.require_array()
    lp = rates.pa_prefactor(scene)
    snr = 2.0**rate - 1.0
    base = 1.0 - math.sqrt(snr) / rates.rrs_farfield_scale(scene)
    if base <= 0.0:
        raise RateUnreachable(f"rate {rate:g} exceeds the surface's far-field ceiling", "rrs")
    lead = (4.0 * array.element_dy**2 * array.element_dz**2 * lp * scene.feed.distance**2) / (
        rates.rrs_disc_area_coefficient(scene) * scene.ue.range**4 * snr
    )
    return lead * (base ** (-4.0 / (alpha - 1.0)) - 1.0)


# -- numeric sizing --------------------------------------------------------

def _invert_count(rate_at, target, technology, max_count, tol):
    if rate_at(1.0) >= target:
        return 1.0
    hi = 4.0
    while rate_at(hi) < target:
        if hi >= max_count:
            raise RateUnreachable(
                f"{technology}: rate {target:g} not reached with {max_count:g} elements", technology
            )
        hi = min(hi * 4.0, max_count)
    lo = hi / 4.0 if hi > 4.0 else 1.0
    sol = find_root_bracketed(lambda u: rate_at(math.exp(u)) - target, math.log(lo), math.log(hi), tol=tol)
    return math.exp(sol.abscissa)


def rrs_count_numeric(scene, rate, rel_tol=1e-8, max_count=1e9):
    """Continuous surface count at which the disc-bound quadrature rate hits ``rate``."""
    return _invert_count(
        lambda n: rates.rate_rrs_lower(scene, rel_tol=rel_tol, element_count=n).rate,
        rate, "rrs", max_count, 1e-10,
    )


def pa_count_numeric(scene, rate, rel_tol=1e-8, max_count=1e9):
    return _invert_count(
        lambda n: rates.rate_pa_quadrature(scene, rel_tol=rel_tol, element_count=n).rate,
        rate, "pa", max_count, 1e-10,
    )


def g_numeric(rate, scene, rel_tol=1e-8, max_count=1e9):
    """Element-count ratio from inverting the quadrature rates; valid in the near field too."""
    n_r = rrs_count_numeric(scene, rate, rel_tol, max_count)
    n_p = pa_count_numeric(scene, rate, rel_tol, max_count)
    return n_r / n_p


# -- crossover ---------------------------------------------------------------

@dataclass(frozen=True)
class CrossoverReport:
    c_e1: float | None
    c_e2: float | None
    rrs_wins_interval: tuple[float, float] | None
    l_pw: float
    group_size: int
    c_min: float
    c_thr: float
    g_min_rate: float
    g_min: float


def _log_g(scene):
    def h(c):
        try:
            return math.log(g_closed(c, scene))
        except RateUnreachable:
            return math.inf

    return h


def crossover_rates(scene, model, tol=1e-9):
    """Rates where g(C) = l_pw and the window where the surface draws less power."""
    l_pw = element_power_ratio(model)
    thr = rates.farfield_thresholds(scene)
    c_min, c_thr = model.min_rate, thr.rate_threshold
    c_sup = math.log2(1.0 + rates.rrs_farfield_scale(scene) ** 2)
    log_g = _log_g(scene)

    lo_win, hi_win = (c_min, c_thr) if c_thr > c_min else (c_thr, c_min)
    best = minimize_unimodal(log_g, lo_win, hi_win, tol=tol)
    c_star, g_min = best.abscissa, math.exp(best.residual)

    if l_pw <= 0 or g_min >= l_pw:
        return CrossoverReport(None, None, None, l_pw, model.group_size, c_min, c_thr, c_star, g_min)

    target = math.log(l_pw)

    def excess(c):
        return log_g(c) - target

    c_e1 = None
    step = 1.0
    lo = c_star - step
    while lo > 0 and excess(lo) < 0:
        step *= 2.0
        lo = c_star - step
    if lo <= 0:
        lo = 1e-9
    if excess(lo) > 0:
        c_e1 = _root(excess, lo, c_star, tol)

    c_e2 = None
    gap = (c_sup - c_star) / 2.0
    hi = c_star + gap
    while excess(hi) < 0 and gap > 1e-15:
        gap /= 2.0
        hi = c_sup - gap
    if excess(hi) > 0:
        c_e2 = _root(excess, c_star, hi, tol)

    lo_i = c_min if c_e1 is None else max(c_min, c_e1)
    hi_i = c_thr if c_e2 is None else min(c_thr, c_e2)
    interval = (lo_i, hi_i) if lo_i <= hi_i else None
    return CrossoverReport(c_e1, c_e2, interval, l_pw, model.group_size, c_min, c_thr, c_star, g_min)


def _root(fn, lo, hi, tol):
    try:
        sol = find_root_bracketed(fn, lo, hi, tol=tol * 1e-3)
    except NoBracket:
        return None
    return sol.abscissa


# -- verdict -----------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    outcome: str  # "rrs-wins", "array-wins" or "infeasible"
    rate: float
    rrs_count: int
    pa_count: int
    power_rrs: float
    power_pa: float
    ratio: float
    l_pw: float
    rrs_method: str
    pa_method: str
    over_budget: tuple[str, ...] = ()

    @property
    def power_ratio(self):
        return self.power_rrs / self.power_pa


def whole_grid(count, aspect):
    """Smallest M x N grid (M = ceil(aspect * N)) holding at least ``count`` elements on the family."""
    n = max(1, math.ceil(math.sqrt(count / aspect) - 1e-9))
    m = max(1, math.ceil(aspect * n - 1e-9))
    return m * n


def size_rrs(scene, rate, rel_tol=1e-8, max_count=1e9):
    """Continuous surface count for ``rate`` and the route used to get it."""
    limit = rates.element_limit(scene.surface, scene.ue.range, scene.wavelength)
    if scene.feed.gain_exponent > 1.0:
        try:
            n = rrs_count_closed(scene, rate)
        except RateUnreachable:
            n = None
        if n is not None and n < limit:
            return max(n, 1.0), "closed-form-ff"
    return rrs_count_numeric(scene, rate, rel_tol, max_count), "quadrature"


def size_pa(scene, rate, rel_tol=1e-8, max_count=1e9):
    limit = rates.element_limit(scene.require_array(), scene.ue.range, scene.wavelength)
    n = pa_count_closed(scene, rate)
    if n < limit:
        return max(n, 1.0), "closed-form-ff"
    return pa_count_numeric(scene, rate, rel_tol, max_count), "quadrature"


def verdict(rate, scene, model, rel_tol=1e-8, max_count=1e9):
    """Size both technologies for ``rate`` and decide which draws less power."""
    if rate < model.min_rate:
        raise ValueError(f"rate {rate:g} below the minimum required rate {model.min_rate:g}")
    n_r, m_r = size_rrs(scene, rate, rel_tol, max_count)
    n_p, m_p = size_pa(scene, rate, rel_tol, max_count)
    count_r = whole_grid(n_r, scene.surface.aspect)
    count_p = whole_grid(n_p, scene.require_array().aspect)
    pr = power_rrs(model, count_r)
    pp = power_pa(model, count_p)
    over = tuple(name for name, d in (("rrs", pr), ("pa", pp)) if d.exceeds_budget)
    if over:
        outcome = "infeasible"
    elif pr.watts < pp.watts:
        outcome = "rrs-wins"
    else:
        outcome = "array-wins"
    return Verdict(
        outcome, rate, count_r, count_p, pr.watts, pp.watts, count_r / count_p,
        element_power_ratio(model), m_r, m_p, over,
    )
