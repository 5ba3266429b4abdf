import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file if it exists
env_path = Path('.') / '.env'
if env_path.exists():
    load_dotenv(dotenv_path=env_path)


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


def _env_float(name, default):
    value = os.environ.get(name)
    return float(value) if value else default


class Config:
    # Parallelism cap for spacing sweeps
    SUPERDIR_THREADS = _env_int('SUPERDIR_THREADS', os.cpu_count() or 1)

    SUPERDIR_LOG_LEVEL = os.environ.get('SUPERDIR_LOG_LEVEL', 'WARNING')

    # Sphere quadrature: Gauss-Legendre in cos(theta) x uniform phi
    QUADRATURE_THETA_NODES = _env_int('QUADRATURE_THETA_NODES', 64)
    QUADRATURE_PHI_NODES = _env_int('QUADRATURE_PHI_NODES', 128)

    # Only used to convert meter-denominated inputs to wavelengths
    DEFAULT_FREQUENCY_HZ = _env_float('DEFAULT_FREQUENCY_HZ', 845e6)

    # Numerical thresholds
    CONDITION_WARNING = 1e12
    IMAG_RESIDUE_TOLERANCE = 1e-10

    # Synthetic coupling fixture; fills in gamma/beta a coupling source leaves out
    FIXTURE_GAMMA = _env_float('FIXTURE_GAMMA', 0.3)
    FIXTURE_BETA = _env_float('FIXTURE_BETA', 0.5)


class TestConfig(Config):
    TESTING = True
    SUPERDIR_THREADS = 2
    SUPERDIR_LOG_LEVEL = 'DEBUG'
