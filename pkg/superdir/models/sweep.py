from dataclasses import dataclass

import numpy as np

from superdir.exceptions import DomainError


@dataclass(frozen=True)
class CouplingSource:
    """Where a sweep takes its coupling matrix from"""
    kind: str = 'identity'
    path: str = None
    gamma: float = None
    beta: float = None
    estimate: str = 'direct'

    def __post_init__(self):
        if self.kind not in ('identity', 'file', 'synthetic'):
            raise DomainError(f'unknown coupling source {self.kind!r}')
        if self.kind == 'file' and not self.path:
            raise DomainError('file coupling source needs a path')
        if self.kind == 'synthetic' and (self.gamma is None or self.beta is None):
            raise DomainError('synthetic coupling needs the fixture gamma and beta')
        if self.kind == 'synthetic' and not 0.0 <= self.gamma < 1.0:
            raise DomainError(f'fixture gamma must lie in [0, 1), got {self.gamma}')
        if self.estimate not in ('direct', 'swe'):
            raise DomainError(f'estimate must be direct or swe, got {self.estimate!r}')

    def __str__(self):
        if self.kind == 'file':
            return f'file:{self.path}'
        if self.kind == 'synthetic':
            return f'synthetic:gamma={self.gamma!r},beta={self.beta!r},estimate={self.estimate}'
        return 'identity'


@dataclass(frozen=True)
class SweepSpec:
    antennas: int
    spacing_start: float
    spacing_stop: float
    spacing_steps: int = 1
    pattern: str = 'half-wave-dipole'
    theta0: float = 0.0
    phi0: float = 0.0
    efficiency: float = 1.0
    coupling: CouplingSource = CouplingSource()
    quadrature_theta: int = 64
    quadrature_phi: int = 128
    truncation: int = None
    loading: float = 0.0

    def __post_init__(self):
        if self.antennas < 1:
            raise DomainError(f'antennas must be at least 1, got {self.antennas}')
        if not self.spacing_start > 0:
            raise DomainError(f'spacing start must be positive, got {self.spacing_start}')
        if self.spacing_stop < self.spacing_start:
            raise DomainError('spacing stop must not be below spacing start')
        if self.spacing_steps < 1:
            raise DomainError(f'spacing steps must be at least 1, got {self.spacing_steps}')
        if not 0.0 < self.efficiency <= 1.0:
            raise DomainError(f'efficiency must lie in (0, 1], got {self.efficiency}')
        if not 0.0 <= self.theta0 <= 180.0:
            raise DomainError(f'theta0 must lie in [0, 180] degrees, got {self.theta0}')
        if self.loading < 0:
            raise DomainError(f'loading must be non-negative, got {self.loading}')

    @property
    def spacings(self):
        """Sweep points in wavelengths, ascending"""
        if self.spacing_steps == 1:
            return np.array([float(self.spacing_start)])
        return np.linspace(self.spacing_start, self.spacing_stop, int(self.spacing_steps))


@dataclass(frozen=True)
class SweepRow:
    spacing: float
    dmax: float
    d_traditional: float
    d_coupled: float
    gain: float
    cond_z: float
    flag: str = None

    @property
    def flagged(self):
        return self.flag is not None

    @classmethod
    def failed(cls, spacing, reason, cond_z=float('nan')):
        nan = float('nan')
        return cls(spacing=spacing, dmax=nan, d_traditional=nan, d_coupled=nan, gain=nan,
                   cond_z=cond_z, flag=reason)
