"""Element-wise signal model and exact (summed) SNR for the surface and the array.

All amplitudes are complex numbers whose squared magnitude is a power ratio.
Per-element terms are computed with numpy; the final reductions use
``math.fsum`` in row-major element order so results do not depend on
blocking or partitioning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError
from .geometry import ArrayGeometry, SurfaceGeometry, element_grid

TWO_PI = 2.0 * math.pi


def feed_gain(gain_exponent, polar_angle):
    """Feed pattern 2(a+1) cos^a(theta) on the front hemisphere, zero behind."""
    theta = np.asarray(polar_angle, dtype=float)
    front = theta <= math.pi / 2
    cos = np.where(front, np.cos(np.where(front, theta, 0.0)), 0.0)
    gain = np.where(front, 2.0 * (gain_exponent + 1.0) * np.clip(cos, 0.0, None) ** gain_exponent, 0.0)
    return gain if gain.ndim else float(gain)


@dataclass(frozen=True)
class PhaseMask:
    """Per-element refraction phases, shape (M, N), wrapped into [0, 2*pi)."""

    phases: np.ndarray
    bits: int | None = None

    def __post_init__(self):
        ph = np.mod(np.asarray(self.phases, dtype=float), TWO_PI)
        # mod can return exactly 2*pi for tiny negative inputs
        ph = np.where(ph >= TWO_PI, 0.0, ph)
        if ph.ndim != 2:
            raise ValueError("phase mask must be two-dimensional (M, N)")
        if not np.all(np.isfinite(ph)):
            raise ValueError("phase mask contains non-finite values")
        ph.setflags(write=False)
        object.__setattr__(self, "phases", ph)

    @property
    def shape(self):
        return self.phases.shape

    def quantized(self, bits):
        """Round each phase to the nearest of 2**bits uniform levels."""
        if bits < 1:
            raise ValueError("bit depth must be >= 1")
        step = TWO_PI / 2**bits
        return PhaseMask(np.round(self.phases / step) * step, bits=bits)

    @classmethod
    def zeros(cls, geometry):
        return cls(np.zeros((geometry.m_count, geometry.n_count)))

    @classmethod
    def random(cls, geometry, rng):
        return cls(rng.uniform(0.0, TWO_PI, size=(geometry.m_count, geometry.n_count)))


@dataclass(frozen=True)
class SnrReport:
    snr: float
    rate: float
    phase_mask: PhaseMask | None = None


def _report(snr, mask=None):
    return SnrReport(snr=snr, rate=math.log2(1.0 + snr), phase_mask=mask)


def _propagation(distance, wavelength):
    return np.exp(-1j * TWO_PI * distance / wavelength)


def incident_field(scene):
    """Feed-to-element amplitudes y_R / x for every surface element, shape (M, N)."""
    feed, surface = scene.feed, scene.surface
    yy, zz = element_grid(surface)
    dist = np.sqrt(feed.distance**2 + yy**2 + zz**2)
    cos_t = feed.distance / dist
    area = surface.element_dy * surface.element_dz
    proj_area = cos_t * area
    gain = 2.0 * (feed.gain_exponent + 1.0) * cos_t**feed.gain_exponent
    return np.sqrt(gain * proj_area / (4.0 * math.pi * dist**2)) * _propagation(dist, scene.wavelength)


def _ue_distances(placement, geometry):
    yy, zz = element_grid(geometry)
    q = placement.range * placement.direction
    dx = q[0]
    dist = np.sqrt(dx**2 + (q[1] - yy) ** 2 + (q[2] - zz) ** 2)
    if np.any(dist <= 0.0):
        raise GeometryError("UE coincides with an element")
    return dist, dx


def channel_field(placement, geometry, wavelength):
    """Element-to-UE channels for every element of a surface or array, shape (M, N)."""
    dist, dx = _ue_distances(placement, geometry)
    if isinstance(geometry, SurfaceGeometry):
        proj_area = (dx / dist) * geometry.element_dy * geometry.element_dz
        mag = np.sqrt(placement.ue_gain * proj_area / (4.0 * math.pi * dist**2))
    elif isinstance(geometry, ArrayGeometry):
        mag = wavelength * math.sqrt(geometry.element_gain * placement.ue_gain) / (4.0 * math.pi * dist)
    else:
        raise TypeError(f"unsupported geometry {geometry!r}")
    return mag * _propagation(dist, wavelength)


def _check_index(geometry, index):
    m, n = index
    if not (0 <= m < geometry.m_count and 0 <= n < geometry.n_count):
        raise IndexError(f"element {index} outside {geometry.m_count}x{geometry.n_count} grid")
    return m, n


def incident_signal(scene, index):
    """Feed signal received by element ``index`` (zero-based (m, n)) per unit transmit amplitude."""
    m, n = _check_index(scene.surface, index)
    return complex(incident_field(scene)[m, n])


def ue_channel(placement, geometry, wavelength, index):
    m, n = _check_index(geometry, index)
    return complex(channel_field(placement, geometry, wavelength)[m, n])


def _csum(values):
    flat = np.ravel(values)
    return complex(math.fsum(flat.real), math.fsum(flat.imag))


def snr_with_phases(scene, mask):
    """SNR at the UE for an arbitrary surface phase configuration."""
    surface = scene.surface
    if mask.shape != (surface.m_count, surface.n_count):
        raise ValueError(f"mask shape {mask.shape} does not match surface grid")
    y = incident_field(scene)
    h = channel_field(scene.ue, surface, scene.wavelength)
    gamma = surface.refraction_amplitude * np.exp(1j * mask.phases)
    total = _csum(h * gamma * y) * math.sqrt(scene.tx_power)
    return _report(abs(total) ** 2 / scene.noise_power, mask)


def optimal_phase_mask(scene):
    y = incident_field(scene)
    h = channel_field(scene.ue, scene.surface, scene.wavelength)
    return PhaseMask(-np.angle(h * y))


def exact_snr_rrs(scene):
    """SNR with every surface element phase-aligned (the optimum)."""
    y = incident_field(scene)
    h = channel_field(scene.ue, scene.surface, scene.wavelength)
    amp = scene.surface.refraction_amplitude * math.sqrt(scene.tx_power)
    total = math.fsum(np.ravel(np.abs(h) * np.abs(y))) * amp
    mask = PhaseMask(-np.angle(h * y))
    return _report(total**2 / scene.noise_power, mask)


def exact_rate_pa(scene):
    """Phase-aligned phased-array SNR with the transmit power split evenly over elements."""
    array = scene.require_array()
    h = channel_field(scene.ue, array, scene.wavelength)
    per_element = math.sqrt(scene.tx_power / array.element_count)
    total = math.fsum(np.ravel(np.abs(h))) * per_element
    mask = PhaseMask(np.angle(h) * -1.0)
    return _report(total**2 / scene.noise_power, mask)


def cauchy_snr_bound(scene):
    """Cauchy-Schwarz upper bound on the aligned surface SNR."""
    y = incident_field(scene)
    h = channel_field(scene.ue, scene.surface, scene.wavelength)
    a2 = scene.surface.refraction_amplitude**2
    hh = math.fsum(np.ravel(np.abs(h) ** 2)) * a2
    yy = math.fsum(np.ravel(np.abs(y) ** 2)) * scene.tx_power
    return hh * yy / scene.noise_power
