"""Continuous-aperture data rates, their bounds, and far-field closed forms.

Integrals are taken over the aperture expressed in coordinates normalised by
the UE range r_U, i.e. an element at (0, y*r_U, z*r_U) maps to (y, z).

Rate functions accept an optional ``element_count``. When given it replaces
M*N while keeping the geometry's aspect ratio M/N, which lets sizing code
treat the element count as a continuous variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import em_model
from .errors import AlphaDomain, NotFarField, SingularRegion
from .numerics import Disc, Rectangle, integrate_2d, integrate_radial

METHODS = ("exact-sum", "quadrature", "lower-bound", "upper-bound", "closed-form-ff")


@dataclass(frozen=True)
class RateResult:
    rate: float
    method: str
    estimated_numerical_error: float = 0.0
    snr: float = float("nan")

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.rate < 0 or self.estimated_numerical_error < 0:
            raise ValueError("rate and error estimate must be nonnegative")


@dataclass(frozen=True)
class IntegralSpec:
    region: Rectangle | Disc
    prefactor: float
    integrand: str


@dataclass(frozen=True)
class FarFieldThresholds:
    rrs_element_limit: float
    pa_element_limit: float
    rate_threshold: float
    rrs_rate_at_limit: float
    pa_rate_at_limit: float


def _aperture(geometry, element_count=None):
    """Physical aperture widths (W_y, W_z) for the geometry or a resized copy."""
    if element_count is None:
        return geometry.width_y, geometry.width_z
    if not element_count > 0:
        raise ValueError("element count must be positive")
    k = geometry.aspect
    return math.sqrt(element_count * k) * geometry.element_dy, math.sqrt(element_count / k) * geometry.element_dz


def _count(geometry, element_count=None):
    return geometry.element_count if element_count is None else element_count


def rrs_prefactor(scene):
    """L_R, with the feed boresight gain 2(alpha+1) in place of G_0."""
    ue, feed = scene.ue, scene.feed
    g0 = feed.boresight_gain
    num = scene.tx_power * scene.surface.refraction_amplitude**2 * ue.ue_gain * g0 * ue.psi * ue.range**2
    return num / (scene.noise_power * (4.0 * math.pi) ** 2 * feed.distance**2)


def pa_prefactor(scene):
    array = scene.require_array()
    ue = scene.ue
    num = scene.tx_power * scene.wavelength**2 * array.element_gain * ue.ue_gain * ue.range**2
    return num / ((4.0 * math.pi) ** 2 * scene.noise_power * array.element_dy**2 * array.element_dz**2)


def rrs_integrand(scene) -> Callable:
    ue = scene.ue
    a = (ue.range / scene.feed.distance) ** 2
    p_feed = -(scene.feed.gain_exponent + 3.0) / 4.0
    phi, omega = ue.phi, ue.omega

    def f(y, z):
        rho2 = y * y + z * z
        return (1.0 + a * rho2) ** p_feed * (1.0 - 2.0 * phi * y - 2.0 * omega * z + rho2) ** -0.75

    return f


def pa_integrand(scene, element_count=None) -> Callable:
    ue = scene.ue
    phi, omega = ue.phi, ue.omega
    scale = 1.0 / math.sqrt(_count(scene.require_array(), element_count))

    def f(y, z):
        return scale / np.sqrt(1.0 + y * y + z * z - 2.0 * phi * y - 2.0 * omega * z)

    return f


def rrs_upper_profile(scene):
    """Radial majorant of the surface integrand (alpha=0 and triangle inequality)."""
    sa = scene.ue.range / scene.feed.distance

    def f(rho):
        return np.abs(sa * rho - 1.0) ** -1.5 * np.abs(rho - 1.0) ** -1.5

    return f


def rrs_region(scene, element_count=None):
    wy, wz = _aperture(scene.surface, element_count)
    r = scene.ue.range
    return Rectangle.centered(wy / (2 * r), wz / (2 * r))


def rrs_disc(scene, element_count=None):
    wy, wz = _aperture(scene.surface, element_count)
    return Disc(min(wy, wz) / (2 * scene.ue.range))


def pa_region(scene, element_count=None):
    wy, wz = _aperture(scene.require_array(), element_count)
    r = scene.ue.range
    return Rectangle.centered(wy / (2 * r), wz / (2 * r))


def integral_spec(scene, kind, element_count=None):
    """Describe the integral behind a rate: kind in {'rrs', 'rrs-disc', 'pa'}."""
    if kind == "rrs":
        return IntegralSpec(rrs_region(scene, element_count), rrs_prefactor(scene), "f_R")
    if kind == "rrs-disc":
        return IntegralSpec(rrs_disc(scene, element_count), rrs_prefactor(scene), "f_R")
    if kind == "pa":
        return IntegralSpec(pa_region(scene, element_count), pa_prefactor(scene), "f_P")
    raise ValueError(f"unknown integral kind {kind!r}")


def _rate_from_integral(prefactor, value, error, method):
    snr = prefactor * value**2
    rate = math.log2(1.0 + snr)
    d_snr = 2.0 * prefactor * abs(value) * error + prefactor * error**2
    d_rate = d_snr / ((1.0 + snr) * math.log(2.0))
    return RateResult(rate=rate, method=method, estimated_numerical_error=d_rate, snr=snr)


def rate_rrs_quadrature(scene, rel_tol=1e-8, element_count=None):
    res = integrate_2d(rrs_integrand(scene), rrs_region(scene, element_count), rel_tol=rel_tol)
    return _rate_from_integral(rrs_prefactor(scene), res.value, res.error_estimate, "quadrature")


def rate_rrs_lower(scene, rel_tol=1e-8, element_count=None):
    """Lower bound from the disc inscribed in the surface."""
    res = integrate_2d(rrs_integrand(scene), rrs_disc(scene, element_count), rel_tol=rel_tol)
    return _rate_from_integral(rrs_prefactor(scene), res.value, res.error_estimate, "lower-bound")


def singular_radii(scene):
    return scene.feed.distance / scene.ue.range, 1.0


def rate_rrs_upper(scene, exclusion_band=1e-3, rel_tol=1e-8, element_count=None):
    """Saturation bound: the surface integrand replaced by its radial majorant.

    The majorant blows up on two rings (normalised radii r_F/r_U and 1).
    When the aperture reaches a ring, a band of relative half-width
    ``exclusion_band`` around it is left out; pass ``exclusion_band=None``
    to get :class:`SingularRegion` instead.
    """
    region = rrs_region(scene, element_count)
    rho_max = math.hypot(region.y1, region.z1)
    exclude = []
    for ring in singular_radii(scene):
        if ring < rho_max:
            if not exclusion_band:
                raise SingularRegion(f"aperture (radius {rho_max:.4g}) reaches singular ring at {ring:.4g}")
            exclude.append((ring * (1.0 - exclusion_band), ring * (1.0 + exclusion_band)))
        elif ring == rho_max:
            raise SingularRegion("aperture corner lies on a singular ring")
    res = integrate_radial(rrs_upper_profile(scene), region, rel_tol=rel_tol, exclude=exclude)
    return _rate_from_integral(rrs_prefactor(scene), res.value, res.error_estimate, "upper-bound")


def rate_pa_quadrature(scene, rel_tol=1e-8, element_count=None):
    res = integrate_2d(pa_integrand(scene, element_count), pa_region(scene, element_count), rel_tol=rel_tol)
    return _rate_from_integral(pa_prefactor(scene), res.value, res.error_estimate, "quadrature")


def rate_rrs_exact(scene):
    rep = em_model.exact_snr_rrs(scene)
    return RateResult(rate=rep.rate, method="exact-sum", snr=rep.snr)


def rate_pa_exact(scene):
    rep = em_model.exact_rate_pa(scene)
    return RateResult(rate=rep.rate, method="exact-sum", snr=rep.snr)


def _check_farfield(geometry, scene, element_count):
    wy, wz = _aperture(geometry, element_count)
    boundary = 2.0 * (wy**2 + wz**2) / scene.wavelength
    if scene.ue.range <= boundary:
        raise NotFarField(f"UE range {scene.ue.range:g} m within far-field boundary {boundary:.4g} m")


def _require_alpha(scene):
    alpha = scene.feed.gain_exponent
    if alpha <= 1.0:
        raise AlphaDomain(f"closed form needs gain exponent > 1, got {alpha:g}")
    return alpha


def rrs_farfield_scale(scene):
    """4*pi*sqrt(L_R)*r_F^2 / ((alpha-1)*r_U^2): sqrt of the far-field SNR ceiling."""
    alpha = _require_alpha(scene)
    return 4.0 * math.pi * math.sqrt(rrs_prefactor(scene)) * scene.feed.distance**2 / (
        (alpha - 1.0) * scene.ue.range**2
    )


def rrs_disc_area_coefficient(scene):
    """c_R such that (disc radius * r_U)^2 * 4 = c_R * (M*N) for the scene's aspect ratio."""
    s = scene.surface
    k = s.aspect
    return min(k * s.element_dy**2, s.element_dz**2 / k)


def rrs_lower_farfield_snr(scene, element_count=None):
    """Far-field SNR of the disc bound (no far-field check)."""
    alpha = _require_alpha(scene)
    wy, wz = _aperture(scene.surface, element_count)
    radius = min(wy, wz) / 2.0
    x = (radius / scene.feed.distance) ** 2
    bracket = 1.0 - (1.0 + x) ** ((1.0 - alpha) / 4.0)
    return (rrs_farfield_scale(scene) * bracket) ** 2


def pa_farfield_snr(scene, element_count=None):
    array = scene.require_array()
    n = _count(array, element_count)
    return n * array.element_dy**2 * array.element_dz**2 * pa_prefactor(scene) / scene.ue.range**4


def rate_rrs_lower_farfield(scene, element_count=None):
    _require_alpha(scene)
    _check_farfield(scene.surface, scene, element_count)
    snr = rrs_lower_farfield_snr(scene, element_count)
    return RateResult(rate=math.log2(1.0 + snr), method="closed-form-ff", snr=snr)


def rate_pa_farfield(scene, element_count=None):
    _check_farfield(scene.require_array(), scene, element_count)
    snr = pa_farfield_snr(scene, element_count)
    return RateResult(rate=math.log2(1.0 + snr), method="closed-form-ff", snr=snr)


def element_limit(geometry, range_, wavelength):
    """Largest M*N (at the geometry's aspect ratio) keeping the UE in the far field."""
    k = geometry.aspect
    return k * range_ * wavelength / (2.0 * (k**2 * geometry.element_dy**2 + geometry.element_dz**2))


def farfield_thresholds(scene):
    r, lam = scene.ue.range, scene.wavelength
    n_r = element_limit(scene.surface, r, lam)
    n_p = element_limit(scene.require_array(), r, lam)
    c_r = math.log2(1.0 + rrs_lower_farfield_snr(scene, n_r))
    c_p = math.log2(1.0 + pa_farfield_snr(scene, n_p))
    return FarFieldThresholds(n_r, n_p, min(c_r, c_p), c_r, c_p)
