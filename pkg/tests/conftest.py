import numpy as np
import pytest

from superdir import create_app
from superdir.config import TestConfig
from superdir.models.array import ArrayGeometry, ElementPattern
from superdir.services.radiation import RadiationService


@pytest.fixture
def app():
    return create_app(TestConfig)


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def isotropic():
    return ElementPattern.from_name('isotropic')


@pytest.fixture
def dipole():
    return ElementPattern.from_name('half-wave-dipole')


def build_array(element_count, spacing, pattern):
    geometry = ArrayGeometry(element_count, spacing)
    return geometry, RadiationService.impedance_matrix(geometry, pattern)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
