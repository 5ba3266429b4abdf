"""Array geometry, element patterns and steering vectors.

Positions are in wavelengths and the wave number is fixed at 2*pi, so
frequency never enters the computation.
"""
import hashlib
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from superdir.exceptions import DimensionError, DomainError, OutOfDomainError

WAVE_NUMBER = 2.0 * np.pi

PATTERN_KINDS = ('isotropic', 'hertzian-dipole', 'half-wave-dipole', 'sampled')

_X_AXIS = (1.0, 0.0, 0.0)


def unit_direction(theta, phi):
    """Unit vector r-hat for the given angles, shape (..., 3)"""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    sin_theta = np.sin(theta)
    return np.stack([sin_theta * np.cos(phi),
                     sin_theta * np.sin(phi),
                     np.cos(theta)], axis=-1)


def _frozen(array):
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ArrayGeometry:
    """Uniform linear array on the positive z-axis, first element at the origin"""
    element_count: int
    spacing: float
    positions: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if int(self.element_count) != self.element_count or self.element_count < 1:
            raise DomainError(f'element count must be a positive integer, got {self.element_count}')
        if not np.isfinite(self.spacing) or self.spacing <= 0:
            raise DomainError(f'spacing must be positive, got {self.spacing}')
        positions = np.zeros((int(self.element_count), 3))
        positions[:, 2] = np.arange(self.element_count) * float(self.spacing)
        object.__setattr__(self, 'element_count', int(self.element_count))
        object.__setattr__(self, 'spacing', float(self.spacing))
        object.__setattr__(self, 'positions', _frozen(positions))

    @property
    def extent(self):
        """Distance between the first and last element"""
        return (self.element_count - 1) * self.spacing

    @property
    def identifier(self):
        return f'ula(M={self.element_count},d={self.spacing!r})'

    def steering_matrix(self, pattern, theta, phi):
        """Steering vectors for many directions at once, shape (K, M)"""
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        phi = np.broadcast_to(np.asarray(phi, dtype=float), theta.shape)
        # r-hat . r_m only involves the z component for a z-axis array
        phase = WAVE_NUMBER * np.outer(np.cos(theta), self.positions[:, 2])
        return pattern(theta, phi)[:, None] * np.exp(1j * phase)

    def steering_vector(self, pattern, theta, phi):
        """Steering vector e(theta, phi) of the array"""
        if not 0.0 <= theta <= np.pi:
            raise DomainError(f'theta must lie in [0, pi], got {theta}')
        values = self.steering_matrix(pattern, [theta], [phi])[0]
        return SteeringVector(values=_frozen(values), direction=(float(theta), float(phi)))

    def evaluate_array_pattern(self, pattern, excitation, theta, phi):
        """Far-field pattern a^T e(theta, phi) of an excitation"""
        excitation = check_excitation(excitation, self.element_count)
        return complex(excitation @ self.steering_vector(pattern, theta, phi).values)


@dataclass(frozen=True, eq=False)
class SteeringVector:
    values: np.ndarray
    direction: tuple


@dataclass(frozen=True, eq=False)
class ElementPattern:
    """Scalar far-field pattern k(theta, phi) of a single element"""
    kind: str
    axis: tuple = _X_AXIS
    theta_nodes: np.ndarray = None
    phi_nodes: np.ndarray = None
    samples: np.ndarray = None
    _interpolators: tuple = field(default=None, repr=False)
    _periodic: bool = field(default=False, repr=False)

    def __post_init__(self):
        if self.kind not in PATTERN_KINDS:
            raise DomainError(f'unknown pattern kind {self.kind!r}; expected one of {", ".join(PATTERN_KINDS)}')
        axis = np.asarray(self.axis, dtype=float)
        norm = np.linalg.norm(axis)
        if axis.shape != (3,) or norm == 0:
            raise DomainError('dipole axis must be a nonzero 3-vector')
        object.__setattr__(self, 'axis', tuple(axis / norm))
        if self.kind == 'sampled':
            self._build_interpolators()
        elif self.samples is not None:
            raise DomainError('samples are only accepted for sampled patterns')

    @classmethod
    def from_name(cls, kind, axis=_X_AXIS):
        if kind == 'sampled':
            raise DomainError('sampled patterns need a sample grid; use ElementPattern.sampled')
        return cls(kind=kind, axis=axis)

    @classmethod
    def sampled(cls, theta_nodes, phi_nodes, samples):
        """Pattern defined on an equiangular (theta, phi) grid"""
        return cls(kind='sampled',
                   theta_nodes=np.asarray(theta_nodes, dtype=float),
                   phi_nodes=np.asarray(phi_nodes, dtype=float),
                   samples=np.asarray(samples, dtype=complex))

    def _build_interpolators(self):
        theta, phi, samples = self.theta_nodes, self.phi_nodes, self.samples
        if theta is None or phi is None or samples is None:
            raise DomainError('sampled pattern needs theta nodes, phi nodes and samples')
        if samples.shape != (len(theta), len(phi)):
            raise DimensionError(f'samples have shape {samples.shape}, grid is {len(theta)} x {len(phi)}')
        if np.any(np.diff(theta) <= 0) or np.any(np.diff(phi) <= 0):
            raise DomainError('sample grid nodes must be strictly increasing')
        if theta[0] < 0 or theta[-1] > np.pi or phi[0] < 0 or phi[-1] >= 2 * np.pi:
            raise DomainError('sample grid must lie within theta in [0, pi], phi in [0, 2pi)')

        # Close the phi circle when the grid starts at 0 and is uniform
        periodic = False
        if len(phi) > 1 and phi[0] == 0.0:
            step = phi[1] - phi[0]
            periodic = np.allclose(np.diff(phi), step) and np.isclose(phi[-1] + step, 2 * np.pi)
        if periodic:
            phi = np.append(phi, 2 * np.pi)
            samples = np.concatenate([samples, samples[:, :1]], axis=1)

        interpolators = (
            RegularGridInterpolator((theta, phi), samples.real, method='linear', bounds_error=True),
            RegularGridInterpolator((theta, phi), samples.imag, method='linear', bounds_error=True),
        )
        object.__setattr__(self, '_interpolators', interpolators)
        object.__setattr__(self, '_periodic', periodic)

    @property
    def identifier(self):
        if self.kind == 'sampled':
            digest = hashlib.sha1(self.samples.tobytes() + self.theta_nodes.tobytes()
                                  + self.phi_nodes.tobytes()).hexdigest()[:12]
            return f'sampled:{digest}'
        if self.kind == 'isotropic':
            return 'isotropic'
        return f'{self.kind}:{self.axis}'

    def _cos_axis_angle(self, theta, phi):
        return unit_direction(theta, phi) @ np.asarray(self.axis)

    def __call__(self, theta, phi):
        """Evaluate k(theta, phi), broadcasting over the inputs"""
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        theta, phi = np.broadcast_arrays(theta, phi)

        if self.kind == 'isotropic':
            return np.ones(theta.shape, dtype=complex)

        if self.kind == 'sampled':
            return self._interpolate(theta, phi)

        cos_psi = np.clip(self._cos_axis_angle(theta, phi), -1.0, 1.0)
        sin_psi = np.sqrt(1.0 - cos_psi ** 2)
        if self.kind == 'hertzian-dipole':
            return sin_psi.astype(complex)

        # Half-wave dipole, zero along the axis
        numerator = np.cos(0.5 * np.pi * cos_psi)
        values = np.divide(numerator, sin_psi, out=np.zeros_like(sin_psi), where=sin_psi > 1e-12)
        return values.astype(complex)

    def _interpolate(self, theta, phi):
        if self._periodic:
            phi = np.mod(phi, 2 * np.pi)
        points = np.stack([theta.ravel(), phi.ravel()], axis=-1)
        real, imag = self._interpolators
        try:
            values = real(points) + 1j * imag(points)
        except ValueError as e:
            raise OutOfDomainError(f'direction outside the sampled pattern grid: {e}') from e
        return values.reshape(theta.shape)

    def field(self, theta, phi):
        """Polarized far field (E_theta, E_phi) with |E| = |k|

        Dipole kinds radiate along the projection of their axis onto the
        theta/phi unit vectors. Isotropic elements get the Hertzian dipole
        polarization as a smooth, band-limited stand-in.
        """
        if self.kind == 'sampled':
            raise DomainError('sampled patterns carry no polarization; supply field samples instead')
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        theta, phi = np.broadcast_arrays(theta, phi)

        axis = np.asarray(self.axis)
        theta_hat = np.stack([np.cos(theta) * np.cos(phi),
                              np.cos(theta) * np.sin(phi),
                              -np.sin(theta)], axis=-1)
        phi_hat = np.stack([-np.sin(phi), np.cos(phi), np.zeros_like(phi)], axis=-1)
        e_theta = (theta_hat @ axis).astype(complex)
        e_phi = (phi_hat @ axis).astype(complex)

        if self.kind == 'half-wave-dipole':
            cos_psi = np.clip(self._cos_axis_angle(theta, phi), -1.0, 1.0)
            sin_sq = 1.0 - cos_psi ** 2
            scale = np.divide(np.cos(0.5 * np.pi * cos_psi), sin_sq,
                              out=np.zeros_like(sin_sq), where=sin_sq > 1e-24)
            e_theta = e_theta * scale
            e_phi = e_phi * scale
        return e_theta, e_phi


def check_excitation(excitation, element_count):
    """Coerce an excitation to a complex vector of the array's length"""
    excitation = np.asarray(excitation, dtype=complex)
    if excitation.ndim != 1 or len(excitation) != element_count:
        raise DimensionError(f'excitation has shape {excitation.shape}, expected ({element_count},)')
    return excitation
