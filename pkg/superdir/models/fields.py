"""Far-field samples and spherical wave coefficients."""
from dataclasses import dataclass

import numpy as np

from superdir.exceptions import DataError, DimensionError, SweIndexError


def mode_count(truncation):
    """Number of (s, m, n) modes up to degree N: 2N(N+2)"""
    return 2 * truncation * (truncation + 2)


@dataclass(frozen=True, order=True)
class SweIndex:
    s: int
    n: int
    m: int

    def __post_init__(self):
        if self.s not in (1, 2):
            raise SweIndexError(f's must be 1 (TE) or 2 (TM), got {self.s}')
        if self.n < 1:
            raise SweIndexError(f'n must be at least 1, got {self.n}')
        if abs(self.m) > self.n:
            raise SweIndexError(f'|m| = {abs(self.m)} exceeds n = {self.n}')

    @property
    def position(self):
        """Flattened position: s fastest, then m, then n"""
        return 2 * (self.n * self.n - 1 + self.m + self.n) + self.s - 1

    @classmethod
    def from_position(cls, position):
        pair, s_offset = divmod(position, 2)
        n = int(np.floor(np.sqrt(pair + 1)))
        m = pair + 1 - n * n - n
        return cls(s=s_offset + 1, n=n, m=m)

    @staticmethod
    def ordering(truncation):
        """Every index up to degree N in flattened order"""
        return [SweIndex(s, n, m)
                for n in range(1, truncation + 1)
                for m in range(-n, n + 1)
                for s in (1, 2)]


@dataclass(frozen=True, eq=False)
class FieldSampleSet:
    """Far-field samples interleaved as [E_theta(1), E_phi(1), E_theta(2), ...]"""
    theta: np.ndarray
    phi: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        theta = np.array(self.theta, dtype=float).ravel()
        phi = np.array(self.phi, dtype=float).ravel()
        values = np.array(self.values, dtype=complex).ravel()
        if theta.shape != phi.shape:
            raise DimensionError(f'{len(theta)} theta values but {len(phi)} phi values')
        if len(values) != 2 * len(theta):
            raise DimensionError(f'{len(values)} field values for {len(theta)} directions; expected {2 * len(theta)}')
        if len(np.unique(np.stack([theta, phi]), axis=1).T) != len(theta):
            raise DataError('field samples contain duplicate directions')
        for array in (theta, phi, values):
            array.setflags(write=False)
        object.__setattr__(self, 'theta', theta)
        object.__setattr__(self, 'phi', phi)
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_components(cls, theta, phi, e_theta, e_phi):
        e_theta = np.asarray(e_theta, dtype=complex).ravel()
        e_phi = np.asarray(e_phi, dtype=complex).ravel()
        if e_theta.shape != e_phi.shape:
            raise DimensionError(f'{len(e_theta)} E_theta values but {len(e_phi)} E_phi values')
        values = np.empty(2 * len(e_theta), dtype=complex)
        values[0::2] = e_theta
        values[1::2] = e_phi
        return cls(theta=np.ravel(theta), phi=np.ravel(phi), values=values)

    @property
    def direction_count(self):
        return len(self.theta)

    @property
    def e_theta(self):
        return self.values[0::2]

    @property
    def e_phi(self):
        return self.values[1::2]

    def same_grid(self, other):
        return (self.theta.shape == other.theta.shape
                and np.array_equal(self.theta, other.theta)
                and np.array_equal(self.phi, other.phi))

    def with_values(self, values):
        return FieldSampleSet(theta=self.theta, phi=self.phi, values=values)


@dataclass(frozen=True, eq=False)
class WaveCoefficientSet:
    """Coefficients Q_smn in flattened SweIndex order"""
    coefficients: np.ndarray
    truncation: int
    residual: float = 0.0
    rank: int = None

    def __post_init__(self):
        coefficients = np.array(self.coefficients, dtype=complex).ravel()
        if len(coefficients) != mode_count(self.truncation):
            raise DimensionError(
                f'{len(coefficients)} coefficients for truncation {self.truncation}; '
                f'expected {mode_count(self.truncation)}')
        if not np.all(np.isfinite(coefficients)):
            raise DataError('wave coefficients must be finite')
        coefficients.setflags(write=False)
        object.__setattr__(self, 'coefficients', coefficients)

    def __getitem__(self, index):
        return self.coefficients[index.position]

    @property
    def power(self):
        """Radiated power sum |Q|^2 in normalized units"""
        return float(np.sum(np.abs(self.coefficients) ** 2))
