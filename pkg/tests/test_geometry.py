import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rrsim.errors import GeometryError
from rrsim.geometry import (
    ArrayGeometry,
    SurfaceGeometry,
    UePlacement,
    dbm_to_watt,
    element_positions,
    ue_position,
)


def test_single_element_at_origin():
    pos = element_positions(SurfaceGeometry(1, 1, 0.01, 0.01))
    np.testing.assert_array_equal(pos, [[0.0, 0.0, 0.0]])


def test_odd_grid_is_symmetric():
    pos = element_positions(SurfaceGeometry(3, 1, 0.5, 0.5))
    np.testing.assert_allclose(pos[:, 1], [-0.5, 0.0, 0.5])
    assert np.all(pos[:, 0] == 0) and np.all(pos[:, 2] == 0)


def test_even_grid_uses_half_integer_indices():
    pos = element_positions(ArrayGeometry(2, 2, 1.0, 1.0))
    assert len(pos) == 4
    assert set(pos[:, 1]) == {-0.5, 0.5}
    assert set(pos[:, 2]) == {-0.5, 0.5}


def test_row_major_order():
    pos = element_positions(SurfaceGeometry(2, 3, 1.0, 1.0))
    # n varies fastest
    np.testing.assert_allclose(pos[:3, 1], -0.5)
    np.testing.assert_allclose(pos[:3, 2], [-1.0, 0.0, 1.0])


@given(
    st.integers(1, 40), st.integers(1, 40),
    st.floats(1e-4, 1.0), st.floats(1e-4, 1.0),
)
def test_grid_mean_is_origin(m, n, dy, dz):
    pos = element_positions(SurfaceGeometry(m, n, dy, dz))
    assert np.all(np.abs(pos.mean(axis=0)) <= 1e-12 * max(m * dy, n * dz, 1.0))


def test_broadside_ue():
    np.testing.assert_allclose(ue_position(UePlacement(1.0, math.pi / 2, 0.0)), [1.0, 0.0, 0.0], atol=1e-16)


def test_reference_ue_position():
    p = ue_position(UePlacement(50.0, math.pi / 6, math.pi / 4))
    np.testing.assert_allclose(p, 50.0 * np.array([0.35355339, 0.35355339, 0.86602540]), rtol=1e-8)


def test_in_plane_ue_rejected():
    with pytest.raises(GeometryError):
        UePlacement(2.0, 0.0, 1.234)


@given(st.floats(0.01, 1e4), st.floats(0.05, math.pi - 0.05), st.floats(-1.4, 1.4))
def test_direction_cosines(r, theta, phi):
    ue = UePlacement(r, theta, phi)
    assert abs(ue.psi**2 + ue.phi**2 + ue.omega**2 - 1.0) <= 1e-12
    assert math.isclose(np.linalg.norm(ue_position(ue)), r, rel_tol=1e-14)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(m_count=0, n_count=1, element_dy=1, element_dz=1),
        dict(m_count=1, n_count=1, element_dy=0, element_dz=1),
        dict(m_count=1, n_count=1, element_dy=1, element_dz=1, refraction_amplitude=1.2),
        dict(m_count=1.5, n_count=1, element_dy=1, element_dz=1),
    ],
)
def test_invalid_surface(kwargs):
    with pytest.raises(GeometryError):
        SurfaceGeometry(**kwargs)


def test_dbm_conversion():
    assert math.isclose(dbm_to_watt(43.0), 19.952623149688797, rel_tol=1e-12)
    assert math.isclose(dbm_to_watt(30.0), 1.0)
