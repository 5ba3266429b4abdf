import hashlib
import logging

import numpy as np

from superdir.exceptions import AccuracyError, ConditioningError, DegenerateInputError, DomainError
from superdir.models.array import check_excitation
from superdir.models.radiation import ImpedanceMatrix, SphereQuadrature

logger = logging.getLogger(__name__)


class RadiationService:
    @staticmethod
    def impedance_matrix(geometry, pattern, quadrature=None, loading=0.0, certified=False,
                         tolerance=1e-10):
        """
        Normalized radiated-power matrix Z integrated over the sphere
        """
        quadrature = quadrature or SphereQuadrature()
        if loading < 0:
            raise DomainError(f'diagonal loading must be non-negative, got {loading}')

        values = RadiationService._integrate(geometry, pattern, quadrature, tolerance)

        # Self-convergence check at double density
        if certified:
            refined = RadiationService._integrate(geometry, pattern, quadrature.refined(), tolerance)
            change = float(np.max(np.abs(refined - values)))
            logger.debug('Quadrature refinement changed Z by %.3e', change)
            if change > tolerance:
                raise AccuracyError(
                    f'quadrature {quadrature.identifier} too coarse: refinement changed Z by {change:.3e}')

        if loading:
            values = values + loading * np.eye(geometry.element_count)

        digest = hashlib.sha1(
            f'{geometry.identifier}|{pattern.identifier}|{quadrature.identifier}'.encode()
        ).hexdigest()[:16]
        return ImpedanceMatrix(values=values, geometry_hash=digest, loading=float(loading))

    @staticmethod
    def _integrate(geometry, pattern, quadrature, tolerance):
        theta, phi, weights = quadrature.grid()
        steering = geometry.steering_matrix(pattern, theta, phi)

        # Fixed summation order keeps the result independent of BLAS threading
        integral = np.einsum('k,km,kn->mn', weights, steering, steering.conj(), optimize=False)

        # Patterns with |k|^2 even in cos(theta) give a real integral
        residue = float(np.max(np.abs(integral.imag)))
        if residue > tolerance:
            raise AccuracyError(f'impedance matrix keeps an imaginary residue of {residue:.3e}')
        return 0.5 * (integral.real + integral.real.T)

    @staticmethod
    def radiated_power(Z, excitation):
        """
        Quadratic form x^T Z x* of an excitation
        """
        values = Z.values if hasattr(Z, 'values') else np.asarray(Z)
        excitation = np.asarray(excitation, dtype=complex)
        return float(np.real(excitation @ values @ excitation.conj()))

    @staticmethod
    def rayleigh_quotient(Z, steering, radiating):
        """
        |x^T e|^2 / (x^T Z x*) for the currents actually radiating
        """
        if not np.any(radiating):
            raise DegenerateInputError('excitation is identically zero')
        power = RadiationService.radiated_power(Z, radiating)
        if not power > 0:
            raise ConditioningError(f'radiated power is not positive ({power:.3e}); Z is ill-conditioned')
        return float(np.abs(radiating @ steering) ** 2 / power)

    @staticmethod
    def directivity(geometry, pattern, Z, excitation, theta0, phi0):
        """
        Directivity of an arbitrary excitation toward (theta0, phi0)
        """
        excitation = check_excitation(excitation, geometry.element_count)
        steering = geometry.steering_vector(pattern, theta0, phi0).values
        return RadiationService.rayleigh_quotient(Z, steering, excitation)

    @staticmethod
    def directivity_pattern(geometry, pattern, Z, excitation, thetas, phis, coupling=None):
        """
        Directivity D(theta, phi) of one excitation over many directions

        With a coupling matrix the radiating currents are C x.
        """
        excitation = check_excitation(excitation, geometry.element_count)
        radiating = excitation if coupling is None else coupling.values @ excitation
        if not np.any(radiating):
            raise DegenerateInputError('excitation is identically zero')
        power = RadiationService.radiated_power(Z, radiating)
        if not power > 0:
            raise ConditioningError(f'radiated power is not positive ({power:.3e})')

        thetas = np.asarray(thetas, dtype=float)
        phis = np.asarray(phis, dtype=float)
        thetas, phis = np.broadcast_arrays(thetas, phis)
        steering = geometry.steering_matrix(pattern, thetas.ravel(), phis.ravel())
        return (np.abs(steering @ radiating) ** 2 / power).reshape(thetas.shape)
