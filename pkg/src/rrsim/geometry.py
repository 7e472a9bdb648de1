"""Scene geometry: element grids, feed placement and UE placement.

Frame: the surface lies in the yoz plane and the x axis is its normal. The
feed sits at (-r_F, 0, 0); the UE is on the refraction side (x > 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import GeometryError

SPEED_OF_LIGHT = 299_792_458.0

# Simulation constants of the reference scenario
DEFAULT_WAVELENGTH = 1.15e-2
DEFAULT_FREQUENCY_GHZ = 26.0


def dbm_to_watt(dbm):
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watt_to_dbm(watt):
    return 10.0 * math.log10(watt) + 30.0


def _check_grid(m_count, n_count, dy, dz):
    if int(m_count) != m_count or int(n_count) != n_count:
        raise GeometryError("element counts must be integers")
    if m_count < 1 or n_count < 1:
        raise GeometryError(f"element counts must be >= 1, got {m_count}x{n_count}")
    if not (dy > 0 and dz > 0):
        raise GeometryError("element spacings must be positive")


@dataclass(frozen=True)
class SurfaceGeometry:
    """RRS element grid: ``m_count`` columns along y, ``n_count`` rows along z."""

    m_count: int
    n_count: int
    element_dy: float
    element_dz: float
    refraction_amplitude: float = 0.8

    def __post_init__(self):
        _check_grid(self.m_count, self.n_count, self.element_dy, self.element_dz)
        if not (0.0 < self.refraction_amplitude <= 1.0):
            raise GeometryError("refraction amplitude must lie in (0, 1]")

    @property
    def element_count(self):
        return self.m_count * self.n_count

    @property
    def aspect(self):
        """k_R = M/N."""
        return self.m_count / self.n_count

    @property
    def width_y(self):
        return self.m_count * self.element_dy

    @property
    def width_z(self):
        return self.n_count * self.element_dz


@dataclass(frozen=True)
class ArrayGeometry:
    """Phased-array grid with omnidirectional elements of gain ``element_gain``."""

    m_count: int
    n_count: int
    element_dy: float
    element_dz: float
    element_gain: float = 1.0

    def __post_init__(self):
        _check_grid(self.m_count, self.n_count, self.element_dy, self.element_dz)
        if not self.element_gain > 0:
            raise GeometryError("element gain must be positive")

    @property
    def element_count(self):
        return self.m_count * self.n_count

    @property
    def aspect(self):
        return self.m_count / self.n_count

    @property
    def width_y(self):
        return self.m_count * self.element_dy

    @property
    def width_z(self):
        return self.n_count * self.element_dz


@dataclass(frozen=True)
class FeedModel:
    gain_exponent: float
    distance: float

    def __post_init__(self):
        if not self.distance > 0:
            raise GeometryError("feed distance must be positive")
        if not self.gain_exponent >= 0:
            raise GeometryError("feed gain exponent must be nonnegative")

    @property
    def position(self):
        return np.array([-self.distance, 0.0, 0.0])

    @property
    def boresight_gain(self):
        return 2.0 * (self.gain_exponent + 1.0)


@dataclass(frozen=True)
class UePlacement:
    """UE at range ``range`` along zenith ``zenith`` (from +z) and azimuth ``azimuth`` (from +x)."""

    range: float
    zenith: float
    azimuth: float
    ue_gain: float = 1.0

    def __post_init__(self):
        if not self.range > 0:
            raise GeometryError("UE range must be positive")
        if not self.ue_gain > 0:
            raise GeometryError("UE gain must be positive")
        if not self.psi > 1e-12:
            raise GeometryError(
                f"UE must be on the refraction side (x-direction cosine {self.psi:.3g} <= 0)"
            )

    @property
    def psi(self):
        return math.sin(self.zenith) * math.cos(self.azimuth)

    @property
    def phi(self):
        return math.sin(self.zenith) * math.sin(self.azimuth)

    @property
    def omega(self):
        return math.cos(self.zenith)

    @property
    def direction(self):
        return np.array([self.psi, self.phi, self.omega])


@dataclass(frozen=True)
class Scene:
    """Everything a rate computation needs.

    ``array`` is the phased array competing against the surface. Both share the
    scene's transmit power, which keeps the comparison fair by construction.
    """

    feed: FeedModel
    surface: SurfaceGeometry
    ue: UePlacement
    tx_power: float
    noise_power: float
    wavelength: float
    array: ArrayGeometry | None = None

    def __post_init__(self):
        if not self.tx_power >= 0:
            # zero power is accepted so that degenerate SNR checks can run
            raise GeometryError("transmit power must be nonnegative")
        if not self.noise_power > 0:
            raise GeometryError("noise power must be positive")
        if not self.wavelength > 0:
            raise GeometryError("wavelength must be positive")

    def with_(self, **changes):
        """Shallow ``dataclasses.replace`` that also accepts feed/surface shortcuts.

        Recognised shortcuts: ``feed_distance``, ``gain_exponent``, ``rrs_side``
        (square surface), ``pa_side`` (square array).
        """
        feed = self.feed
        surface = self.surface
        array = self.array
        if "feed_distance" in changes:
            feed = replace(feed, distance=changes.pop("feed_distance"))
        if "gain_exponent" in changes:
            feed = replace(feed, gain_exponent=changes.pop("gain_exponent"))
        if "rrs_side" in changes:
            side = int(changes.pop("rrs_side"))
            surface = replace(surface, m_count=side, n_count=side)
        if "pa_side" in changes:
            side = int(changes.pop("pa_side"))
            array = replace(self.require_array(), m_count=side, n_count=side)
        changes.setdefault("feed", feed)
        changes.setdefault("surface", surface)
        changes.setdefault("array", array)
        return replace(self, **changes)

    def require_array(self):
        if self.array is None:
            raise GeometryError("scene has no phased array attached")
        return self.array


def default_scene(
    *,
    feed_distance=0.15,
    gain_exponent=5.0,
    rrs_side=100,
    pa_side=64,
    wavelength=DEFAULT_WAVELENGTH,
):
    """Reference downlink scenario (26 GHz, UE at 50 m, 43 dBm / -96 dBm)."""
    lam = wavelength
    return Scene(
        feed=FeedModel(gain_exponent=gain_exponent, distance=feed_distance),
        surface=SurfaceGeometry(rrs_side, rrs_side, lam / 6, lam / 6, 0.8),
        ue=UePlacement(range=50.0, zenith=math.pi / 6, azimuth=math.pi / 4, ue_gain=1.0),
        tx_power=dbm_to_watt(43.0),
        noise_power=dbm_to_watt(-96.0),
        wavelength=lam,
        array=ArrayGeometry(pa_side, pa_side, lam / 2, lam / 2, 1.0),
    )


def grid_offsets(count, spacing):
    """Zero-centred 1-D offsets (m - (count-1)/2) * spacing."""
    return (np.arange(count) - (count - 1) / 2.0) * spacing


def element_positions(geometry):
    """Element centres as an ``(M*N, 3)`` array, row-major over (m, n)."""
    ys = grid_offsets(geometry.m_count, geometry.element_dy)
    zs = grid_offsets(geometry.n_count, geometry.element_dz)
    yy, zz = np.meshgrid(ys, zs, indexing="ij")
    pos = np.zeros((yy.size, 3))
    pos[:, 1] = yy.ravel()
    pos[:, 2] = zz.ravel()
    return pos


def element_grid(geometry):
    """Element y and z coordinates as two ``(M, N)`` arrays."""
    ys = grid_offsets(geometry.m_count, geometry.element_dy)
    zs = grid_offsets(geometry.n_count, geometry.element_dz)
    return np.meshgrid(ys, zs, indexing="ij")


def ue_position(placement):
    return placement.range * placement.direction


def farfield_boundary(geometry, wavelength):
    """Fraunhofer distance 2 * (W_y^2 + W_z^2) / lambda of an aperture."""
    return 2.0 * (geometry.width_y**2 + geometry.width_z**2) / wavelength
