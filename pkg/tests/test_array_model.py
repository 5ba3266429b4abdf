import numpy as np
import pytest

from superdir.exceptions import DimensionError, DomainError, OutOfDomainError
from superdir.models.array import ArrayGeometry, ElementPattern


def test_positions_along_z(isotropic):
    geometry = ArrayGeometry(4, 0.25)
    assert geometry.positions.shape == (4, 3)
    np.testing.assert_array_equal(geometry.positions[:, 2], [0.0, 0.25, 0.5, 0.75])
    assert geometry.extent == pytest.approx(0.75)
    with pytest.raises(ValueError):
        geometry.positions[0, 0] = 1.0


@pytest.mark.parametrize('count, spacing', [(0, 0.5), (2, 0.0), (2, -0.1), (2, float('nan'))])
def test_invalid_geometry(count, spacing):
    with pytest.raises(DomainError):
        ArrayGeometry(count, spacing)


def test_broadside_steering_vector_is_in_phase(isotropic):
    e = ArrayGeometry(3, 0.5).steering_vector(isotropic, np.pi / 2, 0.0)
    np.testing.assert_allclose(e.values, np.ones(3), atol=1e-15)


def test_endfire_steering_phases(isotropic):
    e = ArrayGeometry(2, 0.25).steering_vector(isotropic, 0.0, 0.0)
    np.testing.assert_allclose(e.values, [1.0, 1j], atol=1e-15)


def test_steering_theta_out_of_range(isotropic):
    with pytest.raises(DomainError):
        ArrayGeometry(2, 0.5).steering_vector(isotropic, 4.0, 0.0)


def test_half_wave_dipole_values(dipole):
    # Axis along x: maximum along z and y, null along x
    assert abs(dipole(0.0, 0.0)) == pytest.approx(1.0)
    assert abs(dipole(np.pi / 2, np.pi / 2)) == pytest.approx(1.0)
    assert abs(dipole(np.pi / 2, 0.0)) == pytest.approx(0.0, abs=1e-12)


def test_hertzian_dipole_is_sine_of_axis_angle():
    pattern = ElementPattern.from_name('hertzian-dipole')
    theta = np.linspace(0.0, np.pi, 7)
    # In the xz-plane the angle to the x axis is pi/2 - theta
    np.testing.assert_allclose(pattern(theta, 0.0).real, np.abs(np.cos(theta)), atol=1e-12)


def test_field_magnitude_matches_scalar_pattern(dipole):
    theta = np.linspace(0.1, 3.0, 11)
    phi = np.linspace(0.0, 6.0, 11)
    e_theta, e_phi = dipole.field(theta, phi)
    np.testing.assert_allclose(np.sqrt(np.abs(e_theta) ** 2 + np.abs(e_phi) ** 2),
                               np.abs(dipole(theta, phi)), atol=1e-12)


def test_unknown_pattern_kind():
    with pytest.raises(DomainError):
        ElementPattern.from_name('yagi')


def test_sampled_pattern_interpolates_and_wraps():
    theta = np.linspace(0.0, np.pi, 19)
    phi = np.linspace(0.0, 2 * np.pi, 36, endpoint=False)
    samples = np.outer(np.sin(theta), np.ones_like(phi))
    pattern = ElementPattern.sampled(theta, phi, samples)

    assert pattern(np.pi / 2, 0.3).real == pytest.approx(1.0)
    # phi between the last node and 2 pi uses the wrapped first column
    assert pattern(np.pi / 2, 2 * np.pi - 0.01).real == pytest.approx(1.0)


def test_sampled_pattern_outside_grid():
    theta = np.linspace(0.5, 2.5, 5)
    phi = np.linspace(0.0, 1.0, 5)
    pattern = ElementPattern.sampled(theta, phi, np.ones((5, 5)))
    with pytest.raises(OutOfDomainError):
        pattern(0.1, 0.5)


def test_sampled_pattern_shape_mismatch():
    with pytest.raises(DimensionError):
        ElementPattern.sampled([0.0, 1.0], [0.0, 1.0], np.ones((3, 2)))


def test_array_pattern_of_uniform_excitation(isotropic):
    geometry = ArrayGeometry(4, 0.5)
    assert geometry.evaluate_array_pattern(isotropic, np.ones(4), np.pi / 2, 0.0) == pytest.approx(4.0)
    with pytest.raises(DimensionError):
        geometry.evaluate_array_pattern(isotropic, np.ones(3), np.pi / 2, 0.0)


def test_endfire_steering_at_a_tenth_wavelength(isotropic):
    e = ArrayGeometry(3, 0.1).steering_vector(isotropic, 0.0, 0.0)
    np.testing.assert_allclose(e.values, np.exp(1j * np.pi * np.array([0.0, 0.2, 0.4])), atol=1e-15)


def test_array_pattern_is_linear_in_excitation(dipole, rng):
    geometry = ArrayGeometry(4, 0.15)
    first = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    second = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    scale = 0.6 - 1.3j
    for theta, phi in rng.uniform([0.0, 0.0], [np.pi, 2 * np.pi], size=(20, 2)):
        f_first = geometry.evaluate_array_pattern(dipole, first, theta, phi)
        f_second = geometry.evaluate_array_pattern(dipole, second, theta, phi)
        assert geometry.evaluate_array_pattern(dipole, first + second, theta, phi) == pytest.approx(
            f_first + f_second, abs=1e-12)
        assert geometry.evaluate_array_pattern(dipole, scale * first, theta, phi) == pytest.approx(
            scale * f_first, abs=1e-12)


def test_isotropic_array_pattern_bounded_by_excitation_magnitudes(isotropic, rng):
    geometry = ArrayGeometry(5, 0.2)
    for _ in range(50):
        excitation = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        theta, phi = rng.uniform(0.0, np.pi), rng.uniform(0.0, 2 * np.pi)
        value = geometry.evaluate_array_pattern(isotropic, excitation, theta, phi)
        assert abs(value) <= np.sum(np.abs(excitation)) * (1 + 1e-12)
