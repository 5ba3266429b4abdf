"""
Spherical wave expansion of far fields

The far field is written as E = sum Q_smn K_smn with the constant k*sqrt(eta)
set to one. The K functions are orthonormal under the sphere average
(1/4pi) * integral of K_a . conj(K_b) dOmega, so sum |Q|^2 is the radiated
power in the same normalized units.
"""
import logging
import math

import numpy as np
import scipy.linalg

from superdir.exceptions import ConditioningError, DimensionError, DomainError, InsufficientSamplingError
from superdir.models.fields import FieldSampleSet, SweIndex, WaveCoefficientSet, mode_count
from superdir.services.legendre import legendre_tables

logger = logging.getLogger(__name__)


def _azimuthal_sign(m):
    """(-m/|m|)^m, taken as 1 for m = 0"""
    return (-1.0) ** m if m > 0 else 1.0


class LeastSquaresBasis:
    """
    SVD of a basis matrix, reused for every right-hand side fitted on it
    """

    def __init__(self, matrix):
        self.matrix = matrix
        self.U, self.s, self.Vh = scipy.linalg.svd(matrix, full_matrices=False, lapack_driver='gesvd')
        # Pseudoinverse cutoff
        self.tolerance = max(matrix.shape) * np.finfo(float).eps * self.s[0] if len(self.s) else 0.0
        self.rank = int(np.sum(self.s > self.tolerance))
        self.cond = float(self.s[0] / self.s[-1]) if self.s[-1] > 0 else np.inf

    @property
    def full_rank(self):
        return self.rank == self.matrix.shape[1]

    def solve(self, rhs):
        """Least-squares solution for one or several right-hand sides"""
        s_inv = np.zeros_like(self.s)
        keep = self.s > self.tolerance
        s_inv[keep] = 1.0 / self.s[keep]
        projected = self.U.conj().T @ rhs
        if projected.ndim == 1:
            return self.Vh.conj().T @ (s_inv * projected)
        return self.Vh.conj().T @ (s_inv[:, None] * projected)


class SweService:
    @staticmethod
    def truncation_degree(enclosing_radius):
        """
        Highest mode degree for a source inside radius r0 (wavelengths): ceil(k r0) + 10
        """
        if enclosing_radius < 0:
            raise DomainError(f'enclosing radius must be non-negative, got {enclosing_radius}')
        return int(math.ceil(2.0 * math.pi * enclosing_radius)) + 10

    @staticmethod
    def default_grid(truncation):
        """
        Equiangular grid of (2N+2) theta rows by (4N+4) phi columns, poles excluded
        """
        rows = 2 * truncation + 2
        columns = 4 * truncation + 4
        theta = (np.arange(rows) + 0.5) * np.pi / rows
        phi = 2.0 * np.pi * np.arange(columns) / columns
        return np.repeat(theta, columns), np.tile(phi, rows)

    @staticmethod
    def eval_spherical_wave_function(index, theta, phi):
        """
        (K_theta, K_phi) of one spherical wave function
        """
        if not isinstance(index, SweIndex):
            index = SweIndex(*index)
        scalar = np.ndim(theta) == 0 and np.ndim(phi) == 0
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        phi = np.broadcast_to(np.asarray(phi, dtype=float), theta.shape)
        if np.any(theta < 0) or np.any(theta > np.pi):
            raise DomainError('theta must lie in [0, pi]')

        tables = legendre_tables(index.n, theta)
        k_theta, k_phi = SweService._components(index.s, index.m, index.n, phi, tables)
        if scalar:
            return complex(k_theta[0]), complex(k_phi[0])
        return k_theta, k_phi

    @staticmethod
    def _components(s, m, n, phi, tables):
        plm, plm_over_sin, dplm = tables
        order = abs(m)
        factor = (np.sqrt(2.0 / (n * (n + 1.0))) * _azimuthal_sign(m)
                  * np.exp(1j * m * phi))
        m_over_sin = 1j * m * plm_over_sin[n, order]
        d_theta = dplm[n, order]
        if s == 1:
            factor = factor * (-1j) ** (n + 1)
            return factor * m_over_sin, -factor * d_theta
        factor = factor * (-1j) ** n
        return factor * d_theta, factor * m_over_sin

    @staticmethod
    def basis_matrix(theta, phi, truncation):
        """
        2P x 2N(N+2) matrix; rows interleave E_theta/E_phi, columns follow SweIndex order
        """
        theta = np.atleast_1d(np.asarray(theta, dtype=float)).ravel()
        phi = np.atleast_1d(np.asarray(phi, dtype=float)).ravel()
        if len(theta) < 1:
            raise DimensionError('basis matrix needs at least one direction')
        if theta.shape != phi.shape:
            raise DimensionError(f'{len(theta)} theta values but {len(phi)} phi values')

        tables = legendre_tables(truncation, theta)
        matrix = np.zeros((2 * len(theta), mode_count(truncation)), dtype=complex)
        column = 0
        for n in range(1, truncation + 1):
            for m in range(-n, n + 1):
                for s in (1, 2):
                    k_theta, k_phi = SweService._components(s, m, n, phi, tables)
                    matrix[0::2, column] = k_theta
                    matrix[1::2, column] = k_phi
                    column += 1
        return matrix

    @staticmethod
    def factorize(theta, phi, truncation):
        """
        Basis matrix for a grid together with its SVD, checked for rank
        """
        rows = 2 * len(np.ravel(theta))
        unknowns = mode_count(truncation)
        if rows < unknowns:
            raise InsufficientSamplingError(
                f'{rows} field values cannot determine {unknowns} coefficients at truncation {truncation}')

        basis = LeastSquaresBasis(SweService.basis_matrix(theta, phi, truncation))
        if not basis.full_rank:
            raise ConditioningError(
                f'sampling grid resolves only {basis.rank} of {unknowns} spherical modes',
                effective_rank=basis.rank, condition_number=basis.cond)
        if basis.cond > 1e8:
            logger.warning('SWE basis condition number %.3e; the grid is barely sufficient', basis.cond)
        return basis

    @staticmethod
    def fit_wave_coefficients(samples, truncation, basis=None):
        """
        Least-squares wave coefficients of a sampled far field
        """
        basis = basis or SweService.factorize(samples.theta, samples.phi, truncation)
        if basis.matrix.shape[0] != len(samples.values):
            raise DimensionError('basis and samples were built on different grids')
        coefficients = basis.solve(samples.values)
        residual = SweService._relative_residual(basis.matrix, coefficients, samples.values)
        logger.debug('Fitted %d coefficients, relative residual %.3e', len(coefficients), residual)
        return WaveCoefficientSet(coefficients=coefficients, truncation=truncation,
                                  residual=residual, rank=basis.rank)

    @staticmethod
    def _relative_residual(matrix, coefficients, values):
        norm = np.linalg.norm(values)
        if norm == 0:
            return 0.0
        return float(np.linalg.norm(matrix @ coefficients - values) / norm)

    @staticmethod
    def reconstruct_field(coefficients, theta, phi):
        """
        Field sum Q_smn K_smn on the requested directions
        """
        matrix = SweService.basis_matrix(theta, phi, coefficients.truncation)
        return FieldSampleSet(theta=np.ravel(theta), phi=np.ravel(phi),
                              values=matrix @ coefficients.coefficients)
