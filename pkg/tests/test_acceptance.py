"""End-to-end figures an implementation of superdirective synthesis must reproduce"""
import numpy as np
import pytest

from conftest import build_array
from superdir.models.coupling import CouplingMatrix
from superdir.services.beamforming import BeamformingService


def _endfire_dmax(count, spacing, pattern):
    geometry, Z = build_array(count, spacing, pattern)
    return BeamformingService.optimal_beamforming(Z, geometry.steering_vector(pattern, 0.0, 0.0)).directivity


@pytest.mark.parametrize('count', [2, 3])
def test_uzkov_limit(isotropic, count):
    assert _endfire_dmax(count, 0.01, isotropic) >= 0.99 * count ** 2


def test_two_element_endfire_at_small_spacing(isotropic):
    assert _endfire_dmax(2, 0.05, isotropic) == pytest.approx(3.9735, abs=1e-3)


@pytest.mark.parametrize('count', [2, 4])
def test_half_wavelength_broadside(isotropic, count):
    geometry, Z = build_array(count, 0.5, isotropic)
    solution = BeamformingService.optimal_beamforming(Z, geometry.steering_vector(isotropic, np.pi / 2, 0.0))
    assert solution.directivity == pytest.approx(count, abs=1e-9)


@pytest.mark.parametrize('count, cited', [(2, 5.24), (3, 10.8), (4, 18.4)])
def test_dipole_array_maximum_directivity(dipole, count, cited):
    # reference maxima were measured on monopoles over ground; loose tolerance
    spacings = np.linspace(0.05, 0.5, 19)
    best = max(_endfire_dmax(count, d, dipole) for d in spacings)
    assert best == pytest.approx(cited, rel=0.1)


def test_dipole_directivity_at_a_tenth_wavelength(dipole):
    assert 5.0 <= _endfire_dmax(2, 0.1, dipole) <= 6.2
    assert 17.0 <= _endfire_dmax(4, 0.1, dipole) <= 20.8


def _lossy_gain(dipole, spacing, efficiency=0.96):
    geometry, Z = build_array(4, spacing, dipole)
    e = geometry.steering_vector(dipole, 0.0, 0.0)
    C = CouplingMatrix.fixture(4, 0.3, 0.5)
    solution = BeamformingService.coupled_beamforming(Z, C, e)
    return BeamformingService.gain(Z, C, e, solution.excitation, efficiency), solution.directivity


def test_gain_has_interior_maximum(dipole):
    at_peak, _ = _lossy_gain(dipole, 0.33)
    assert at_peak > _lossy_gain(dipole, 0.05)[0]
    assert at_peak > _lossy_gain(dipole, 0.5)[0]


def test_gain_peak_location_and_value(dipole):
    spacings = np.linspace(0.05, 0.5, 46)
    gains = [_lossy_gain(dipole, d)[0] for d in spacings]
    peak = int(np.argmax(gains))
    assert 0.25 <= spacings[peak] <= 0.4
    assert gains[peak] == pytest.approx(9.6, rel=0.05)


def test_gain_equals_coupled_directivity_without_loss(dipole):
    gain, directivity = _lossy_gain(dipole, 0.2, efficiency=1.0)
    assert gain == pytest.approx(directivity, rel=1e-14)
