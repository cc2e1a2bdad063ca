"""Compiled O(N^2) pair loops for the particle flow.

Loops run in a fixed order (i < j, row-major), so sums are reproducible.
"""

import numba
import numpy as np


@numba.njit(cache=True, error_model="numpy")
def pair_forces(x1, x2, al, be, ga):
    """Sum over j != i of grad W(x_i - x_j), plus the smallest squared distance."""
    n = x1.size
    g1 = np.zeros(n)
    g2 = np.zeros(n)
    rmin2 = np.inf
    for i in range(n):
        for j in range(i + 1, n):
            d1 = x1[i] - x1[j]
            d2 = x2[i] - x2[j]
            r2 = d1 * d1 + d2 * d2
            if r2 < rmin2:
                rmin2 = r2
            inv = 1.0 / r2
            s = (ga * (d1 * d1 - d2 * d2) + 2.0 * (be - al) * d1 * d2) * inv * inv
            # grad W is odd: the (j, i) term is the negative of the (i, j) term
            a1 = -d1 * inv - s * d2
            a2 = -d2 * inv + s * d1
            g1[i] += a1
            g2[i] += a2
            g1[j] -= a1
            g2[j] -= a2
    return g1, g2, rmin2


@numba.njit(cache=True, error_model="numpy")
def min_separation2(x1, x2):
    n = x1.size
    rmin2 = np.inf
    for i in range(n):
        for j in range(i + 1, n):
            d1 = x1[i] - x1[j]
            d2 = x2[i] - x2[j]
            r2 = d1 * d1 + d2 * d2
            if r2 < rmin2:
                rmin2 = r2
    return rmin2
