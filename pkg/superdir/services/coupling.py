import logging

import numpy as np

from superdir.exceptions import DataError, DegenerateGeometryError, DimensionError, DomainError
from superdir.models.array import WAVE_NUMBER, check_excitation
from superdir.models.coupling import CouplingMatrix, ElementFieldLibrary
from superdir.models.fields import FieldSampleSet
from superdir.services.swe import LeastSquaresBasis, SweService

logger = logging.getLogger(__name__)

# Radius of the sphere enclosing a single element, in wavelengths
ELEMENT_RADIUS = 0.25


class CouplingService:
    @staticmethod
    def default_truncation(geometry):
        """
        Truncation degree for a sphere around half the array plus one element
        """
        return SweService.truncation_degree(0.5 * geometry.extent + ELEMENT_RADIUS)

    @staticmethod
    def isolated_fields_synthetic(geometry, pattern, theta, phi):
        """
        Field of each element radiating alone at its array position
        """
        theta = np.ravel(np.asarray(theta, dtype=float))
        phi = np.ravel(np.asarray(phi, dtype=float))
        if pattern.kind == 'isotropic':
            logger.info('Isotropic elements synthesized with Hertzian dipole polarization')
        e_theta, e_phi = pattern.field(theta, phi)

        fields = []
        for position in geometry.positions:
            shift = np.exp(1j * WAVE_NUMBER * np.cos(theta) * position[2])
            fields.append(FieldSampleSet.from_components(theta, phi, e_theta * shift, e_phi * shift))
        return fields

    @staticmethod
    def synthesize_coupled_fields(isolated, coupling):
        """
        Active-element fields as superpositions: active n = sum_m c_mn isolated m
        """
        values = coupling.values if isinstance(coupling, CouplingMatrix) else np.asarray(coupling)
        if values.shape != (len(isolated), len(isolated)):
            raise DimensionError(f'coupling matrix of shape {values.shape} for {len(isolated)} elements')
        CouplingService._check_shared_grid(isolated)

        stacked = np.column_stack([samples.values for samples in isolated])
        active = stacked @ values
        return [isolated[0].with_values(active[:, n]) for n in range(len(isolated))]

    @staticmethod
    def _check_shared_grid(fields):
        if not fields:
            raise DimensionError('at least one field sample set is required')
        for samples in fields[1:]:
            if not fields[0].same_grid(samples):
                raise DataError('field sample sets do not share one direction grid')

    @staticmethod
    def build_coefficient_set(fields, truncation, basis=None):
        """
        Matrix of wave coefficients, one column per field: 2N(N+2) x M
        """
        CouplingService._check_shared_grid(fields)
        reference = fields[0]
        basis = basis or SweService.factorize(reference.theta, reference.phi, truncation)

        stacked = np.column_stack([samples.values for samples in fields])
        coefficients = basis.solve(stacked)
        residuals = [SweService._relative_residual(basis.matrix, coefficients[:, m], stacked[:, m])
                     for m in range(stacked.shape[1])]
        logger.debug('Coefficient set of %d fields, worst fit residual %.3e', len(fields), max(residuals))
        return coefficients

    @staticmethod
    def estimate_coupling(Qs, Qc):
        """
        Least-squares solution of Qs C = Qc
        """
        Qs = np.asarray(Qs, dtype=complex)
        Qc = np.asarray(Qc, dtype=complex)
        if Qs.ndim != 2 or Qs.shape != Qc.shape:
            raise DimensionError(f'Qs has shape {Qs.shape} but Qc has shape {Qc.shape}')

        solver = LeastSquaresBasis(Qs)
        if not solver.full_rank:
            raise DegenerateGeometryError(
                f'isolated-element coefficients have rank {solver.rank} < {Qs.shape[1]}; '
                'element positions are not distinct', effective_rank=solver.rank)

        values = solver.solve(Qc)
        norm = np.linalg.norm(Qc)
        residual = float(np.linalg.norm(Qs @ values - Qc) / norm) if norm else 0.0
        logger.info('Estimated %dx%d coupling matrix, residual %.3e', *values.shape, residual)
        return CouplingMatrix(values=values, source='estimated', estimation_residual=residual)

    @staticmethod
    def estimate_from_library(library, truncation):
        """
        Qs and Qc share one grid, so a single factorization serves both
        """
        reference = library.isolated[0]
        basis = SweService.factorize(reference.theta, reference.phi, truncation)
        Qs = CouplingService.build_coefficient_set(library.isolated, truncation, basis=basis)
        Qc = CouplingService.build_coefficient_set(library.active, truncation, basis=basis)
        return CouplingService.estimate_coupling(Qs, Qc)

    @staticmethod
    def synthetic_library(geometry, pattern, coupling, truncation=None):
        """
        Isolated and active fields on the default grid for a known coupling
        """
        truncation = truncation or CouplingService.default_truncation(geometry)
        theta, phi = SweService.default_grid(truncation)
        isolated = CouplingService.isolated_fields_synthetic(geometry, pattern, theta, phi)
        active = CouplingService.synthesize_coupled_fields(isolated, coupling)
        return ElementFieldLibrary(isolated=isolated, active=active)

    @staticmethod
    def active_element_pattern(geometry, pattern, coupling, n, theta, phi):
        """
        Pattern l_n(theta, phi) radiated when only element n (1-based) is driven
        """
        if not 1 <= n <= geometry.element_count:
            raise DomainError(f'element index {n} outside 1..{geometry.element_count}')
        steering = geometry.steering_vector(pattern, theta, phi).values
        return complex(steering @ coupling.values[:, n - 1])

    @staticmethod
    def coupled_pattern(geometry, pattern, coupling, excitation, theta, phi):
        """
        Pattern (C a)^T e(theta, phi) of an excitation under coupling
        """
        radiating = coupling.values @ check_excitation(excitation, geometry.element_count)
        return geometry.evaluate_array_pattern(pattern, radiating, theta, phi)

    @staticmethod
    def add_noise(samples, relative, rng):
        """
        Complex Gaussian noise with RMS equal to relative times the field's RMS
        """
        values = samples.values
        scale = relative * np.sqrt(np.mean(np.abs(values) ** 2) / 2.0)
        noise = scale * (rng.standard_normal(values.shape) + 1j * rng.standard_normal(values.shape))
        return samples.with_values(values + noise)
