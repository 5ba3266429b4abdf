"""
Fully normalized associated Legendre functions for the spherical wave basis

Normalization: integral of P(n,m)(x)^2 over [-1, 1] equals one, without the
Condon-Shortley phase. Columns are computed by the three-term recurrence
in degree at fixed order, seeded from the sectoral values.

Alongside P the tables carry P/sin(theta) and dP/dtheta. Both are produced
without dividing by sin(theta), so they are finite at the poles:
P/sin(theta) obeys the same recurrence in degree once its seed has the
factor sin(theta) removed, and dP/dtheta is a combination of orders m-1
and m+1.
"""
import numpy as np


def legendre_tables(max_degree, theta):
    """
    Tables of normalized associated Legendre functions of cos(theta)

    Parameters
    ----------
    max_degree: int
        highest degree N
    theta: float or array
        colatitudes in radians, within [0, pi]

    Returns
    -------
    plm: array, shape (N+1, N+2, K)
        P(n,m)(cos theta); entries with m > n are zero
    plm_over_sin: array, shape (N+1, N+2, K)
        P(n,m)(cos theta) / sin(theta) for m >= 1 (zero for m = 0)
    dplm: array, shape (N+1, N+2, K)
        derivative of P(n,m)(cos theta) with respect to theta
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float)).ravel()
    x = np.cos(theta)
    u = np.sin(theta)
    count = len(theta)
    size = max_degree + 1

    plm = np.zeros((size, size + 1, count))
    plm_over_sin = np.zeros((size, size + 1, count))

    for m in range(size):
        # Order 0 runs on P itself, higher orders on P/sin(theta)
        seed = plm if m == 0 else plm_over_sin
        if m == 0:
            seed[0, 0] = np.sqrt(0.5)
        else:
            seed[m, m] = np.sqrt((2.0 * m + 1.0) / (2.0 * m)) * plm[m - 1, m - 1]

        if m + 1 <= max_degree:
            seed[m + 1, m] = np.sqrt(2.0 * m + 3.0) * x * seed[m, m]
        for n in range(m + 2, size):
            a = np.sqrt((4.0 * n * n - 1.0) / (n * n - m * m))
            b = np.sqrt(((n - 1.0) ** 2 - m * m) / (4.0 * (n - 1.0) ** 2 - 1.0))
            seed[n, m] = a * (x * seed[n - 1, m] - b * seed[n - 2, m])

        if m > 0:
            plm[:, m] = u * plm_over_sin[:, m]

    dplm = np.zeros_like(plm)
    for n in range(1, size):
        dplm[n, 0] = -np.sqrt(n * (n + 1.0)) * plm[n, 1]
        for m in range(1, n + 1):
            dplm[n, m] = 0.5 * (np.sqrt((n + m) * (n - m + 1.0)) * plm[n, m - 1]
                                - np.sqrt((n - m) * (n + m + 1.0)) * plm[n, m + 1])

    return plm, plm_over_sin, dplm
