from dataclasses import dataclass

import numpy as np

from superdir.exceptions import DomainError

MODES = ('uncoupled', 'coupled')


@dataclass(frozen=True, eq=False)
class BeamformingSolution:
    """Excitation with the figures of merit it was synthesized for"""
    excitation: np.ndarray
    directivity: float
    direction: tuple
    mode: str
    condition_number_Z: float
    normalization: str = 'unit-power'
    loss_resistance: float = 0.0
    gain: float = None
    gain_optimal: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f'unknown beamforming mode {self.mode!r}; expected one of {", ".join(MODES)}')
        excitation = np.array(self.excitation, dtype=complex)
        excitation.setflags(write=False)
        object.__setattr__(self, 'excitation', excitation)

    @property
    def directivity_dbi(self):
        return 10.0 * np.log10(self.directivity)
