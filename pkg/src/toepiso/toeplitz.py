"""The upper-triangular Toeplitz algebra and the full Toeplitz operator system.

Elements of the algebra are polynomials in the shift matrix S (superdiagonal
ones) and are stored by their coefficient vectors, so products, filtration
indices, and equality questions are answered exactly on coefficients -- the
embedding into dense matrices is only for analytic questions.
"""

import numpy as np

from .errors import ContractError, ShapeError
from .linalg import DEFAULT_TOL, Defect, as_matrix, frobenius

__all__ = [
    "UpperToeplitz",
    "ToeplitzFull",
    "shift_matrix",
    "embed",
    "embed_full",
    "utoe_mul",
    "corner_norm",
    "filtration_index",
    "toeplitz_projection",
    "in_commutant_of_S",
]


class UpperToeplitz:
    """sum_k a_k S^k, stored as the coefficient vector (a_0, ..., a_{n-1})."""

    __slots__ = ("n", "coeffs")

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=np.complex128)
        if c.ndim != 1 or c.size < 1:
            raise ShapeError("coefficients must form a nonempty 1-d sequence")
        if not np.all(np.isfinite(c)):
            raise ContractError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "n", int(c.size))
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("UpperToeplitz is immutable")

    @classmethod
    def zero(cls, n):
        return cls(np.zeros(n))

    @classmethod
    def identity(cls, n):
        c = np.zeros(n, dtype=np.complex128)
        c[0] = 1.0
        return cls(c)

    @classmethod
    def shift_power(cls, n, k=1):
        if not 0 <= k:
            raise ContractError("power must be nonnegative")
        c = np.zeros(n, dtype=np.complex128)
        if k < n:
            c[k] = 1.0
        return cls(c)

    def conjugate(self):
        """Entrywise complex conjugation of the coefficients."""
        return UpperToeplitz(np.conj(self.coeffs))

    def __add__(self, other):
        if not isinstance(other, UpperToeplitz):
            return NotImplemented
        if other.n != self.n:
            raise ShapeError("size mismatch")
        return UpperToeplitz(self.coeffs + other.coeffs)

    def __sub__(self, other):
        if not isinstance(other, UpperToeplitz):
            return NotImplemented
        if other.n != self.n:
            raise ShapeError("size mismatch")
        return UpperToeplitz(self.coeffs - other.coeffs)

    def __mul__(self, other):
        if isinstance(other, UpperToeplitz):
            return utoe_mul(self, other)
        return UpperToeplitz(self.coeffs * complex(other))

    def __rmul__(self, other):
        return UpperToeplitz(complex(other) * self.coeffs)

    def __neg__(self):
        return UpperToeplitz(-self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, UpperToeplitz)
            and self.n == other.n
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((self.n, self.coeffs.tobytes()))

    def __repr__(self):
        return f"UpperToeplitz({list(self.coeffs)})"


class ToeplitzFull:
    """A full Toeplitz matrix, stored by its 2n-1 diagonals.

    diags[k + n - 1] is the value on the k-th diagonal (entry (i, j) with
    j - i = k); positive k is above the main diagonal.
    """

    __slots__ = ("n", "diags")

    def __init__(self, diags):
        d = np.array(diags, dtype=np.complex128)
        if d.ndim != 1 or d.size < 1 or d.size % 2 == 0:
            raise ShapeError("need an odd-length 1-d diagonal sequence")
        if not np.all(np.isfinite(d)):
            raise ContractError("diagonals must be finite")
        d.setflags(write=False)
        object.__setattr__(self, "n", int((d.size + 1) // 2))
        object.__setattr__(self, "diags", d)

    def __setattr__(self, name, value):
        raise AttributeError("ToeplitzFull is immutable")

    @classmethod
    def from_parts(cls, upper, lower):
        """Build X + Y* from two upper-triangular elements X, Y."""
        if upper.n != lower.n:
            raise ShapeError("size mismatch")
        n = upper.n
        d = np.zeros(2 * n - 1, dtype=np.complex128)
        d[n - 1 :] = upper.coeffs
        d[: n - 1] += np.conj(lower.coeffs[1:])[::-1]
        d[n - 1] += np.conj(lower.coeffs[0])
        return cls(d)

    def diagonal(self, k):
        """Value on the k-th diagonal, -(n-1) <= k <= n-1."""
        return complex(self.diags[k + self.n - 1])

    def upper_part(self):
        """X in the decomposition X + Y* (the main diagonal goes to X)."""
        return UpperToeplitz(self.diags[self.n - 1 :])

    def lower_part(self):
        """Y in the decomposition X + Y* (zero constant coefficient)."""
        c = np.zeros(self.n, dtype=np.complex128)
        c[1:] = np.conj(self.diags[: self.n - 1][::-1])
        return UpperToeplitz(c)

    def __eq__(self, other):
        return (
            isinstance(other, ToeplitzFull)
            and self.n == other.n
            and bool(np.array_equal(self.diags, other.diags))
        )

    def __hash__(self):
        return hash((self.n, self.diags.tobytes()))

    def __repr__(self):
        return f"ToeplitzFull({list(self.diags)})"


def shift_matrix(n):
    """The n x n shift: ones on the superdiagonal, zeros elsewhere."""
    if n < 1:
        raise ContractError("size must be positive")
    return np.eye(n, k=1, dtype=np.complex128)


def embed(A):
    """Dense matrix of an UpperToeplitz: entry (i, j) = a_{j-i} for j >= i."""
    n = A.n
    M = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        idx = np.arange(n - k)
        M[idx, idx + k] = A.coeffs[k]
    return M


def embed_full(T):
    """Dense matrix of a ToeplitzFull: entry (i, j) = diags[j - i + n - 1]."""
    n = T.n
    M = np.empty((n, n), dtype=np.complex128)
    for k in range(-(n - 1), n):
        idx = np.arange(n - abs(k))
        if k >= 0:
            M[idx, idx + k] = T.diags[k + n - 1]
        else:
            M[idx - k, idx] = T.diags[k + n - 1]
    return M


def utoe_mul(A, B):
    """Product in the algebra: truncated coefficient convolution (exact)."""
    if A.n != B.n:
        raise ShapeError("size mismatch")
    return UpperToeplitz(np.convolve(A.coeffs, B.coeffs)[: A.n])


def corner_norm(alpha, beta, n):
    """Closed-form operator norm of alpha*I + beta*S^{n-1}, n >= 2.

    The matrix compresses to the 2x2 block [[alpha, beta], [0, alpha]], whose
    squared norm is (2|alpha|^2 + |beta|^2 + |beta| sqrt(4|alpha|^2 + |beta|^2))/2.
    """
    if n < 2:
        raise ContractError("the 2x2 compression needs n >= 2")
    a = abs(alpha)
    b = abs(beta)
    return float(np.sqrt((2 * a * a + b * b + b * np.sqrt(4 * a * a + b * b)) / 2.0))


def filtration_index(A):
    """Least k with a_k != 0 (exact test); n for the zero element."""
    nz = np.flatnonzero(A.coeffs != 0)
    return int(nz[0]) if nz.size else A.n


def toeplitz_projection(M):
    """Orthogonal projection of a dense matrix onto the algebra (diagonal means)."""
    M = as_matrix(M, square=True)
    n = M.shape[0]
    return UpperToeplitz([np.mean(np.diag(M, k)) for k in range(n)])


def in_commutant_of_S(M, tol=DEFAULT_TOL):
    """Defect ||MS - SM||_F against eps_residual."""
    M = as_matrix(M, square=True)
    S = shift_matrix(M.shape[0])
    d = frobenius(M @ S - S @ M)
    return Defect(d <= tol.eps_residual, d)
