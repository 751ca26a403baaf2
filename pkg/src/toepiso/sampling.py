"""Seeded randomness: Haar unitaries, Gaussian algebra elements, directions."""

import numpy as np

from .toeplitz import UpperToeplitz

__all__ = ["rng_from", "haar_unitary", "random_upper_toeplitz", "random_direction"]


def rng_from(seed):
    return np.random.default_rng(seed)


def haar_unitary(n, rng):
    """Haar-distributed unitary: QR of a complex Ginibre matrix, phases fixed.

    Multiplying Q by the phases of R's diagonal makes the factorization
    canonical (positive diagonal R), which is what gives Haar measure.
    """
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r).copy()
    d[d == 0] = 1.0
    return q * (d / np.abs(d))


def random_upper_toeplitz(n, rng):
    """Algebra element with i.i.d. standard complex normal coefficients."""
    c = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)
    return UpperToeplitz(c)


def random_direction(shape, rng):
    """Complex Gaussian matrix normalized to unit Frobenius norm."""
    g = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return g / np.linalg.norm(g)
