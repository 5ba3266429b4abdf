import logging

import numpy as np
import scipy.linalg

from superdir.exceptions import (ConditioningError, CouplingMatrixSingularError, DimensionError, DomainError,
                                 SingularMatrixError)
from superdir.models.beamforming import BeamformingSolution
from superdir.services.radiation import RadiationService

logger = logging.getLogger(__name__)

# Above this condition number a matrix is treated as numerically singular
SINGULAR_CONDITION = 1.0 / np.finfo(float).eps


def _steering(e):
    if hasattr(e, 'values'):
        return np.asarray(e.values, dtype=complex), tuple(e.direction)
    return np.asarray(e, dtype=complex), None


def _coupling_values(coupling, size):
    values = np.asarray(getattr(coupling, 'values', coupling), dtype=complex)
    if values.shape != (size, size):
        raise DimensionError(f'coupling matrix of shape {values.shape} for {size} elements')
    return values


class BeamformingService:
    @staticmethod
    def loss_resistance(efficiency):
        """
        Normalized ohmic loss resistance (1 - eta) / eta
        """
        if not 0.0 < efficiency <= 1.0:
            raise DomainError(f'efficiency must lie in (0, 1], got {efficiency}')
        return (1.0 - efficiency) / efficiency

    @staticmethod
    def _solve_symmetric(matrix, rhs, condition_number):
        if not np.isfinite(condition_number) or condition_number > SINGULAR_CONDITION:
            raise SingularMatrixError(
                f'impedance matrix is singular (condition number {condition_number:.3e})',
                condition_number=condition_number)
        try:
            factor = scipy.linalg.cho_factor(matrix, check_finite=False)
            return scipy.linalg.cho_solve(factor, rhs, check_finite=False)
        except scipy.linalg.LinAlgError:
            # Roundoff can push a nearly singular Z off positive definiteness
            logger.warning('Cholesky factorization failed (condition %.3e); using a general solver',
                           condition_number)
        try:
            return scipy.linalg.solve(matrix, rhs, assume_a='sym')
        except scipy.linalg.LinAlgError as e:
            raise SingularMatrixError(str(e), condition_number=condition_number) from e

    @staticmethod
    def optimal_beamforming(Z, e, condition_warning=1e12):
        """
        Directivity-optimal excitation a = Z^-1 e*, scaled to unit radiated power
        """
        steering, direction = _steering(e)
        if len(steering) != Z.size:
            raise DimensionError(f'steering vector has {len(steering)} entries, Z is {Z.size}x{Z.size}')
        condition = Z.condition_number
        if condition > condition_warning:
            logger.warning('Impedance matrix condition number %.3e exceeds %.1e', condition, condition_warning)

        weights = BeamformingService._solve_symmetric(Z.values, steering.conj(), condition)
        # e^T Z^-1 e* = e^H Z^-1 e for real Z
        maximum = float(np.real(steering @ weights))
        if not maximum > 0:
            raise ConditioningError(f'e^H Z^-1 e = {maximum:.3e} is not positive', condition_number=condition)

        return BeamformingSolution(
            excitation=weights / np.sqrt(maximum),
            directivity=maximum,
            direction=direction,
            mode='uncoupled',
            condition_number_Z=condition,
        )

    @staticmethod
    def coupled_beamforming(Z, C, e, condition_warning=1e12):
        """
        Coupling-compensated excitation b = C^-1 Z^-1 e*, unit radiated power
        """
        uncoupled = BeamformingService.optimal_beamforming(Z, e, condition_warning)
        values = _coupling_values(C, Z.size)

        if np.array_equal(values, np.eye(Z.size)):
            excitation = uncoupled.excitation
            directivity = uncoupled.directivity
        else:
            excitation = BeamformingService._uncouple(values, uncoupled.excitation)
            directivity = BeamformingService.coupled_directivity(Z, C, e, excitation)

        return BeamformingSolution(
            excitation=excitation,
            directivity=directivity,
            direction=uncoupled.direction,
            mode='coupled',
            condition_number_Z=uncoupled.condition_number_Z,
        )

    @staticmethod
    def _uncouple(values, radiating):
        """Excitation whose coupled currents C b equal the given ones"""
        condition = float(np.linalg.cond(values))
        if not np.isfinite(condition) or condition > SINGULAR_CONDITION:
            raise CouplingMatrixSingularError(
                f'coupling matrix is singular (condition number {condition:.3e})', condition_number=condition)
        try:
            return scipy.linalg.solve(values, radiating)
        except scipy.linalg.LinAlgError as e:
            raise CouplingMatrixSingularError(str(e), condition_number=condition) from e

    @staticmethod
    def coupled_directivity(Z, C, e, excitation):
        """
        Directivity of an excitation whose radiating currents are C x
        """
        steering, _ = _steering(e)
        values = _coupling_values(C, Z.size)
        excitation = np.asarray(excitation, dtype=complex)
        if excitation.shape != (Z.size,):
            raise DimensionError(f'excitation has shape {excitation.shape}, expected ({Z.size},)')
        return RadiationService.rayleigh_quotient(Z, steering, values @ excitation)

    @staticmethod
    def gain(Z, C, e, excitation, efficiency):
        """
        Gain under ohmic loss: |(C x)^T e|^2 / ((C x)^T (Z + r_loss I) (C x)*)
        """
        loss = BeamformingService.loss_resistance(efficiency)
        steering, _ = _steering(e)
        values = _coupling_values(C, Z.size)
        radiating = values @ np.asarray(excitation, dtype=complex)
        if not np.any(radiating):
            raise ConditioningError('coupled excitation is identically zero')

        power = RadiationService.radiated_power(Z, radiating)
        dissipated = loss * float(np.real(np.vdot(radiating, radiating)))
        logger.debug('r_loss = %.6g, radiated %.6g, dissipated %.6g', loss, power, dissipated)
        return float(np.abs(radiating @ steering) ** 2 / (power + dissipated))

    @staticmethod
    def gain_optimal_beamforming(Z, C, e, efficiency, condition_warning=1e12):
        """
        Excitation maximizing gain rather than directivity: C^-1 (Z + r_loss I)^-1 e*
        """
        loss = BeamformingService.loss_resistance(efficiency)
        steering, direction = _steering(e)
        values = _coupling_values(C, Z.size)

        lossy = Z.values + loss * np.eye(Z.size)
        condition = float(np.linalg.cond(lossy))
        if condition > condition_warning:
            logger.warning('Lossy impedance matrix condition number %.3e', condition)
        radiating = BeamformingService._solve_symmetric(lossy, steering.conj(), condition)
        radiating = radiating / np.sqrt(RadiationService.radiated_power(Z, radiating))
        excitation = BeamformingService._uncouple(values, radiating)

        return BeamformingSolution(
            excitation=excitation,
            directivity=BeamformingService.coupled_directivity(Z, values, steering, excitation),
            direction=direction,
            mode='coupled',
            condition_number_Z=Z.condition_number,
            loss_resistance=loss,
            gain=BeamformingService.gain(Z, values, steering, excitation, efficiency),
            gain_optimal=True,
        )

    @staticmethod
    def with_gain(solution, Z, C, e, efficiency):
        """
        Attach the gain at a given efficiency to a directivity-optimal solution
        """
        values = np.eye(Z.size) if solution.mode == 'uncoupled' else C
        return BeamformingSolution(
            excitation=solution.excitation,
            directivity=solution.directivity,
            direction=solution.direction,
            mode=solution.mode,
            condition_number_Z=solution.condition_number_Z,
            loss_resistance=BeamformingService.loss_resistance(efficiency),
            gain=BeamformingService.gain(Z, values, e, solution.excitation, efficiency),
        )

    @staticmethod
    def generalized_eigen_check(Z, e):
        """
        Eigenvalues D of e e^H x = D Z x; rank one, so a single nonzero value equal to Dmax
        """
        steering, _ = _steering(e)
        return scipy.linalg.eigh(np.outer(steering, steering.conj()), Z.values, eigvals_only=True)
