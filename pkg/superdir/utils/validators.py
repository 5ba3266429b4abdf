"""Parsers for command-line and config-file values."""
import numpy as np

from superdir.exceptions import DataError, DomainError
from superdir.models.sweep import CouplingSource
from superdir.services.swe import SweService

SPEED_OF_LIGHT = 299792458.0


def parse_spacing_range(text):
    """'start:stop:steps' in wavelengths; a bare number is a single point"""
    parts = str(text).split(':')
    try:
        if len(parts) == 1:
            value = float(parts[0])
            return value, value, 1
        if len(parts) == 3:
            return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        pass
    raise DomainError(f'spacing must be a number or start:stop:steps, got {text!r}')


def parse_coupling_source(text, gamma=None, beta=None):
    """identity | file:<path> | synthetic[:gamma=<g>,beta=<b>,estimate=swe]

    gamma and beta fill in fixture parameters the text leaves out.
    """
    text = str(text).strip()
    if text == 'identity':
        return CouplingSource()
    if text.startswith('file:'):
        return CouplingSource(kind='file', path=text[len('file:'):])
    if text == 'synthetic' or text.startswith('synthetic:'):
        params = {'gamma': gamma, 'beta': beta}
        body = text[len('synthetic:'):] if ':' in text else ''
        for item in filter(None, (part.strip() for part in body.split(','))):
            key, sep, value = item.partition('=')
            if not sep or key not in ('gamma', 'beta', 'estimate'):
                raise DomainError(f'unknown synthetic coupling parameter {item!r}')
            params[key] = value if key == 'estimate' else _to_float(value, key)
        return CouplingSource(kind='synthetic', **params)
    raise DomainError(f'coupling must be identity, file:<path> or synthetic:<params>, got {text!r}')


def _to_float(value, name):
    try:
        return float(value)
    except ValueError:
        raise DomainError(f'{name} must be a number, got {value!r}')


def to_wavelengths(length, unit, frequency_hz):
    """Convert a length given in meters or wavelengths to wavelengths"""
    if unit == 'wavelength':
        return float(length)
    if unit == 'm':
        if not frequency_hz > 0:
            raise DomainError(f'frequency must be positive, got {frequency_hz}')
        return float(length) * frequency_hz / SPEED_OF_LIGHT
    raise DataError(f'unknown length unit {unit!r}')


def degrees_grid(theta_step, phi_step):
    """Flattened theta x phi grid in radians covering the whole sphere"""
    theta = np.deg2rad(np.arange(0.0, 180.0 + 1e-9 * theta_step, theta_step))
    phi = np.deg2rad(np.arange(0.0, 360.0, phi_step))
    return np.repeat(theta, len(phi)), np.tile(phi, len(theta))


def resolve_truncation(truncation, radius, radius_unit, frequency_hz):
    """Truncation degree from an explicit value or from an enclosing radius"""
    if truncation is not None:
        if truncation < 1:
            raise DomainError(f'truncation must be at least 1, got {truncation}')
        return int(truncation)
    if radius is None:
        return None
    return SweService.truncation_degree(to_wavelengths(radius, radius_unit, frequency_hz))


def infer_truncation(samples):
    """Largest truncation whose default grid has as many theta rows as the samples"""
    rows = len(np.unique(samples.theta))
    return max(1, rows // 2 - 1)
