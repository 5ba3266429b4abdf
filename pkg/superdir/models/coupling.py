from dataclasses import dataclass

import numpy as np

from superdir.exceptions import DataError, DimensionError

COUPLING_SOURCES = ('identity', 'estimated', 'prescribed')


@dataclass(frozen=True, eq=False)
class CouplingMatrix:
    """Matrix C mapping uncoupled to coupled excitations

    Column n holds the currents that flow on every element when only
    element n is driven; C is not assumed symmetric.
    """
    values: np.ndarray
    source: str = 'prescribed'
    estimation_residual: float = None

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise DimensionError(f'coupling matrix must be square, got shape {values.shape}')
        if not np.all(np.isfinite(values)):
            raise DataError('coupling matrix has non-finite entries')
        if self.source not in COUPLING_SOURCES:
            raise DataError(f'unknown coupling source {self.source!r}')
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @classmethod
    def identity(cls, element_count):
        return cls(values=np.eye(element_count, dtype=complex), source='identity')

    @classmethod
    def fixture(cls, element_count, gamma, beta):
        """Test-fixture coupling c_mn = gamma^|m-n| exp(-j beta |m-n|)"""
        lag = np.abs(np.subtract.outer(np.arange(element_count), np.arange(element_count)))
        values = np.power(float(gamma), lag) * np.exp(-1j * beta * lag)
        return cls(values=values, source='prescribed')

    @property
    def size(self):
        return self.values.shape[0]


@dataclass(frozen=True)
class ElementFieldLibrary:
    """Isolated-element fields and active-element fields on a shared grid"""
    isolated: tuple
    active: tuple

    def __post_init__(self):
        isolated = tuple(self.isolated)
        active = tuple(self.active)
        if len(isolated) != len(active):
            raise DimensionError(f'{len(isolated)} isolated fields but {len(active)} active fields')
        reference = isolated[0] if isolated else None
        for samples in isolated[1:] + active:
            if not reference.same_grid(samples):
                raise DataError('all field sample sets must share one direction grid')
        object.__setattr__(self, 'isolated', isolated)
        object.__setattr__(self, 'active', active)

    @property
    def element_count(self):
        return len(self.isolated)
