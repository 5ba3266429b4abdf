import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from superdir.exceptions import DimensionError, NumericalError
from superdir.models.array import ArrayGeometry, ElementPattern
from superdir.models.coupling import CouplingMatrix
from superdir.models.radiation import SphereQuadrature
from superdir.models.sweep import SweepRow
from superdir.services.beamforming import BeamformingService
from superdir.services.coupling import CouplingService
from superdir.services.radiation import RadiationService
from superdir.utils import csvio

logger = logging.getLogger(__name__)


class SweepService:
    @staticmethod
    def resolve_pattern(name):
        """
        Element pattern from a kind name or 'sampled:<field csv>'
        """
        if name.startswith('sampled:'):
            return csvio.read_pattern_file(name.split(':', 1)[1])
        return ElementPattern.from_name(name)

    @staticmethod
    def resolve_coupling(source, geometry, pattern, truncation=None):
        """
        Coupling matrix for one array according to the sweep's coupling source
        """
        size = geometry.element_count
        if source.kind == 'identity':
            return CouplingMatrix.identity(size)

        if source.kind == 'file':
            coupling = csvio.read_coupling(source.path)
            if coupling.size != size:
                raise DimensionError(f'{source.path} holds a {coupling.size}x{coupling.size} matrix '
                                     f'for {size} antennas')
            return coupling

        fixture = CouplingMatrix.fixture(size, source.gamma, source.beta)
        if source.estimate == 'direct':
            return fixture
        # Run the whole measurement chain on synthetic fields
        library = CouplingService.synthetic_library(geometry, pattern, fixture, truncation)
        truncation = truncation or CouplingService.default_truncation(geometry)
        return CouplingService.estimate_from_library(library, truncation)

    @staticmethod
    def sweep_point(spec, pattern, spacing):
        """
        One row of the sweep; numerical failures flag the row instead of raising
        """
        geometry = ArrayGeometry(spec.antennas, spacing)
        quadrature = SphereQuadrature(spec.quadrature_theta, spec.quadrature_phi)
        theta0, phi0 = np.deg2rad(spec.theta0), np.deg2rad(spec.phi0)

        cond_z = float('nan')
        try:
            Z = RadiationService.impedance_matrix(geometry, pattern, quadrature, loading=spec.loading)
            cond_z = Z.condition_number
            e = geometry.steering_vector(pattern, theta0, phi0)
            coupling = SweepService.resolve_coupling(spec.coupling, geometry, pattern, spec.truncation)

            traditional = BeamformingService.optimal_beamforming(Z, e)
            compensated = BeamformingService.coupled_beamforming(Z, coupling, e)
            return SweepRow(
                spacing=float(spacing),
                dmax=traditional.directivity,
                d_traditional=BeamformingService.coupled_directivity(Z, coupling, e, traditional.excitation),
                d_coupled=compensated.directivity,
                gain=BeamformingService.gain(Z, coupling, e, compensated.excitation, spec.efficiency),
                cond_z=cond_z,
            )
        except NumericalError as error:
            logger.warning('Sweep point d=%.6g flagged: %s', spacing, error)
            return SweepRow.failed(float(spacing), str(error), cond_z=cond_z)

    @staticmethod
    def run_sweep(spec, threads=1):
        """
        Rows for every spacing of the sweep, ordered by spacing
        """
        pattern = SweepService.resolve_pattern(spec.pattern)
        spacings = spec.spacings
        logger.info('Sweeping %d spacings with %d thread(s)', len(spacings), threads)

        # map() keeps input order whatever the completion order
        with ThreadPoolExecutor(max_workers=max(1, int(threads))) as executor:
            rows = list(executor.map(lambda d: SweepService.sweep_point(spec, pattern, d), spacings))

        flagged = sum(row.flagged for row in rows)
        if flagged:
            logger.warning('%d of %d sweep points were flagged', flagged, len(rows))
        return rows
