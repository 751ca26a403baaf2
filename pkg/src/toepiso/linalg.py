"""Dense complex linear algebra with explicit tolerances.

Everything here works on plain numpy ``complex128`` matrices.  Singular values
and Hermitian eigenvalues come from the package's own Jacobi kernels (see
``_kernels``); arithmetic is numpy's.  All verdict-style operations take a
:class:`Tol` and report the measured defect rather than a bare boolean.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import CertificateError, ContractError, NotNilpotentError, ShapeError

__all__ = [
    "Tol",
    "DEFAULT_TOL",
    "Defect",
    "as_matrix",
    "adjoint",
    "frobenius",
    "svd",
    "svd_values",
    "operator_norm",
    "hermitian_eigs",
    "hermitian_eigh",
    "rank_eps",
    "nullspace_basis",
    "range_basis",
    "subspace_contained",
    "is_unitary",
    "is_partial_isometry",
    "nilpotency_defect",
    "is_nilpotent",
    "nilpotency_order",
    "schur_strict_upper",
    "phase_normalize",
]


@dataclass(frozen=True)
class Tol:
    """Numerical contract: rank cut, residual budget, scalar-equality band.

    eps_rank thresholds singular values (relative to max(1, sigma_max)),
    eps_residual bounds Frobenius-norm residuals of certificates, and eps_eq
    is the band for scalar comparisons.  Defaults sit two orders above the
    rounding accumulated at desk scale (n <= 16).
    """

    eps_rank: float = 1e-9
    eps_residual: float = 1e-8
    eps_eq: float = 1e-10

    def __post_init__(self):
        if self.eps_rank < 0 or self.eps_residual < 0 or self.eps_eq < 0:
            raise ContractError("tolerances must be nonnegative")


DEFAULT_TOL = Tol()


@dataclass(frozen=True)
class Defect:
    """Boolean verdict plus the measured defect behind it."""

    ok: bool
    defect: float

    def __bool__(self):
        return self.ok


def as_matrix(a, square=False):
    """Validate and return a C-contiguous complex128 matrix."""
    M = np.ascontiguousarray(a, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise ShapeError(f"expected a nonempty 2-d matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ContractError("matrix entries must be finite")
    if square and M.shape[0] != M.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {M.shape}")
    return M


def adjoint(A):
    """Conjugate transpose."""
    return np.conj(np.asarray(A)).T


def frobenius(A):
    """Frobenius norm."""
    return float(np.linalg.norm(np.asarray(A)))


def svd(A):
    """Full SVD ``A = U @ diag(s) @ Vh`` with s descending.

    Computed by one-sided Jacobi rotations; U and Vh are square unitaries
    (U is completed deterministically when A is rank deficient).
    """
    M = as_matrix(A)
    m, n = M.shape
    if m >= n:
        return _kernels._svd_kernel(M, True)
    Ut, s, Vht = _kernels._svd_kernel(np.ascontiguousarray(M.conj().T), True)
    return Vht.conj().T, s, Ut.conj().T


def svd_values(A):
    """All min(m, n) singular values of A, sorted descending."""
    M = as_matrix(A)
    if M.shape[0] < M.shape[1]:
        M = np.ascontiguousarray(M.conj().T)
    _, s, _ = _kernels._svd_kernel(M, False)
    return s


def operator_norm(A):
    """Largest singular value (the norm induced by the Euclidean norm)."""
    return float(svd_values(A)[0])


def _check_hermitian(M, tol):
    dev = 0.5 * frobenius(M - M.conj().T)
    if dev > tol.eps_eq * max(1.0, frobenius(M)):
        raise ContractError(f"matrix is not Hermitian within tolerance (defect {dev:.3e})")


def hermitian_eigs(H, tol=DEFAULT_TOL):
    """Ascending real eigenvalues of (H + H*)/2; H must be Hermitian within eps_eq."""
    M = as_matrix(H, square=True)
    _check_hermitian(M, tol)
    w, _ = _kernels._eigh_kernel(M, False)
    return w


def hermitian_eigh(H, tol=DEFAULT_TOL):
    """Ascending eigenvalues and eigenvector columns of (H + H*)/2."""
    M = as_matrix(H, square=True)
    _check_hermitian(M, tol)
    return _kernels._eigh_kernel(M, True)


def rank_eps(A, tol=DEFAULT_TOL):
    """Number of singular values above eps_rank * max(1, sigma_max)."""
    s = svd_values(A)
    return int(np.sum(s > tol.eps_rank * max(1.0, float(s[0]))))


def _phase_fix_columns(B, eps=1e-10):
    # Rotate each column so its first sizable entry is real positive.
    B = B.copy()
    for j in range(B.shape[1]):
        col = B[:, j]
        nz = np.flatnonzero(np.abs(col) > eps)
        if nz.size:
            piv = col[nz[0]]
            B[:, j] = col * (abs(piv) / piv)
    return B


def phase_normalize(U, eps=1e-10):
    """Rotate a global phase so the first sizable entry of column 0 is real positive."""
    M = np.asarray(U)
    col = M[:, 0]
    nz = np.flatnonzero(np.abs(col) > eps)
    if nz.size == 0:
        return M.copy()
    piv = col[nz[0]]
    return M * (abs(piv) / piv)


def nullspace_basis(A, tol=DEFAULT_TOL):
    """Orthonormal columns spanning the (eps-rank) kernel of A.

    Returns a cols(A) x k matrix, k = cols(A) - rank_eps(A); k may be zero.
    """
    M = as_matrix(A)
    _, s, Vh = svd(M)
    r = int(np.sum(s > tol.eps_rank * max(1.0, float(s[0]))))
    return _phase_fix_columns(Vh[r:, :].conj().T)


def range_basis(A, tol=DEFAULT_TOL):
    """Orthonormal columns spanning the (eps-rank) column space of A."""
    M = as_matrix(A)
    U, s, _ = svd(M)
    r = int(np.sum(s > tol.eps_rank * max(1.0, float(s[0]))))
    return _phase_fix_columns(U[:, :r])


def _check_orthonormal(B, tol, name):
    if B.ndim != 2:
        raise ShapeError(f"{name} must be 2-d")
    if B.shape[1] == 0:
        return
    dev = frobenius(B.conj().T @ B - np.eye(B.shape[1]))
    if dev > tol.eps_residual:
        raise ContractError(f"{name} does not have orthonormal columns (defect {dev:.3e})")


def subspace_contained(B1, B2, tol=DEFAULT_TOL):
    """Whether span(B1) is contained in span(B2), by projection residual.

    Both arguments must already have orthonormal columns; the criterion is
    ||(I - B2 B2*) B1|| <= eps_residual in operator norm.
    """
    B1 = np.asarray(B1, dtype=np.complex128)
    B2 = np.asarray(B2, dtype=np.complex128)
    if B1.shape[0] != B2.shape[0]:
        raise ShapeError("bases live in different ambient spaces")
    _check_orthonormal(B1, tol, "first basis")
    _check_orthonormal(B2, tol, "second basis")
    if B1.shape[1] == 0:
        return True
    if B2.shape[1] == 0:
        return False
    R = B1 - B2 @ (B2.conj().T @ B1)
    return operator_norm(R) <= tol.eps_residual


def is_unitary(U, tol=DEFAULT_TOL):
    """Defect ||U*U - I||_F against eps_residual."""
    M = as_matrix(U, square=True)
    d = frobenius(M.conj().T @ M - np.eye(M.shape[0]))
    return Defect(d <= tol.eps_residual, d)


def is_partial_isometry(A, tol=DEFAULT_TOL):
    """Defect ||A A* A - A||_F against eps_residual * max(1, ||A||_F)."""
    M = as_matrix(A)
    d = frobenius(M @ M.conj().T @ M - M)
    return Defect(d <= tol.eps_residual * max(1.0, frobenius(M)), d)


def nilpotency_defect(T):
    """||(T/||T||)^n||, which is 0 exactly when T is nilpotent (0 for T = 0)."""
    M = as_matrix(T, square=True)
    nrm = operator_norm(M)
    if nrm == 0.0:
        return 0.0
    return operator_norm(np.linalg.matrix_power(M / nrm, M.shape[0]))


def is_nilpotent(T, tol=DEFAULT_TOL):
    return nilpotency_defect(T) <= tol.eps_residual


def nilpotency_order(T, tol=DEFAULT_TOL):
    """Least k with ||T^k|| <= eps_residual * max(1, ||T||)^k, or None."""
    M = as_matrix(T, square=True)
    n = M.shape[0]
    base = max(1.0, operator_norm(M))
    P = np.eye(n, dtype=np.complex128)
    for k in range(1, n + 1):
        P = P @ M
        if operator_norm(P) <= tol.eps_residual * base**k:
            return k
    return None


def schur_strict_upper(T, tol=DEFAULT_TOL):
    """Unitary Q and strictly upper triangular R with Q* T Q = R.

    T must be nilpotent within tolerance.  The reduction is done by the
    kernel-chain method: orthonormalize ker T, extend by ker T^2 against the
    previous layers, and so on -- QR iteration with shifts is useless here
    because every eigenvalue sits at 0, while the chain is exact for
    nilpotent input.  Raises NotNilpotentError otherwise.
    """
    M = as_matrix(T, square=True)
    n = M.shape[0]
    if nilpotency_defect(M) > tol.eps_residual:
        raise NotNilpotentError(operator_norm(np.linalg.matrix_power(M, n)))

    Q = np.zeros((n, 0), dtype=np.complex128)
    acc = 0
    P = np.eye(n, dtype=np.complex128)
    for _k in range(1, n + 1):
        P = P @ M
        N = nullspace_basis(P, tol)
        dim = N.shape[1]
        if dim == acc:
            continue
        C = N if acc == 0 else N - Q @ (Q.conj().T @ N)
        Uc, sc, _ = svd(C)
        new = dim - acc
        if sc[new - 1] < 0.5:
            raise ContractError("kernel chain is numerically degenerate")
        Q = np.hstack([Q, Uc[:, :new]])
        acc = dim
        if acc == n:
            break
    if acc < n:
        raise CertificateError("kernel chain did not exhaust the space")

    Q = phase_normalize(Q)
    R = Q.conj().T @ M @ Q
    diag_max = float(np.max(np.abs(np.diag(R))))
    if diag_max > tol.eps_eq:
        raise ContractError(f"reduction left a diagonal of size {diag_max:.3e}")
    Rs = np.triu(R, 1)
    resid = frobenius(R - Rs)
    if resid > tol.eps_residual * max(1.0, frobenius(M)):
        raise CertificateError(f"triangularization residual {resid:.3e} too large")
    return Q, Rs
