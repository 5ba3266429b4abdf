from dataclasses import dataclass, field

import numpy as np

from superdir.exceptions import DomainError


@dataclass(frozen=True, eq=False)
class SphereQuadrature:
    """Gauss-Legendre in cos(theta) times uniform phi

    Weights are normalized so that they sum to one, i.e. they already
    include the 1/(4 pi) of the average over the sphere.
    """
    theta_count: int = 64
    phi_count: int = 128
    scheme: str = 'gauss-legendre-theta x uniform-phi'
    theta_nodes: np.ndarray = field(init=False, repr=False)
    theta_weights: np.ndarray = field(init=False, repr=False)
    phi_nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.theta_count < 1 or self.phi_count < 1:
            raise DomainError('quadrature needs at least one node in theta and phi')
        x, weights = np.polynomial.legendre.leggauss(int(self.theta_count))
        # Ascending theta
        theta = np.arccos(x)[::-1]
        weights = weights[::-1] / 2.0
        phi = 2.0 * np.pi * np.arange(self.phi_count) / self.phi_count
        for name, value in (('theta_nodes', theta), ('theta_weights', weights), ('phi_nodes', phi)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    def grid(self):
        """Flattened (theta, phi, weight) over every node, theta-major"""
        theta = np.repeat(self.theta_nodes, self.phi_count)
        phi = np.tile(self.phi_nodes, self.theta_count)
        weights = np.repeat(self.theta_weights, self.phi_count) / self.phi_count
        return theta, phi, weights

    def refined(self):
        """Same scheme at double density in both angles"""
        return SphereQuadrature(theta_count=2 * self.theta_count, phi_count=2 * self.phi_count)

    @property
    def identifier(self):
        return f'gl{self.theta_count}x{self.phi_count}'


@dataclass(frozen=True, eq=False)
class ImpedanceMatrix:
    """Real symmetric matrix of normalized mutual resistances z_mn"""
    values: np.ndarray
    geometry_hash: str
    loading: float = 0.0
    condition_number: float = field(init=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'condition_number', float(np.linalg.cond(values)))

    @property
    def size(self):
        return self.values.shape[0]

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.values)
