"""Numerical range and radius, the nilpotent radius bound, Jordan-block recovery.

The numerical radius is computed as max over angles of the top eigenvalue of
Re(e^{-i theta} A): a coarse sweep over a fixed grid followed by golden-section
refinement on the best bracket.  The support function need not be unimodal, so
the grid has to be reasonably fine (default 256) before refining.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import CertificateError, ContractError, NotJordanBlockError, NotNilpotentError
from .linalg import (
    DEFAULT_TOL,
    as_matrix,
    frobenius,
    nilpotency_order,
    operator_norm,
    phase_normalize,
    schur_strict_upper,
)
from .toeplitz import shift_matrix

__all__ = [
    "RadiusReport",
    "HdlhVerdict",
    "numerical_radius",
    "numerical_range_boundary",
    "hdlh_check",
    "jordan_block_similarity",
]


@dataclass(frozen=True)
class RadiusReport:
    """Numerical radius together with a witness angle and unit vector."""

    radius: float
    attaining_angle: float
    attaining_vector: np.ndarray


@dataclass(frozen=True)
class HdlhVerdict:
    """Outcome of the nilpotent numerical-radius bound test.

    order is the nilpotency order d, bound is cos(pi/(d+1)), attains flags
    equality of the radius with the bound, and block_similarity (present only
    when equality holds at full size d = n) is a unitary U with U S U* = T.
    """

    order: int
    bound: float
    attains: bool
    block_similarity: np.ndarray | None


def _lam_max(M, theta):
    return float(_kernels._radius_sweep_kernel(M, np.array([theta], dtype=np.float64))[0])


def numerical_radius(A, grid=256, refine_iters=60):
    """Numerical radius w(A) = max_theta lambda_max(Re(e^{-i theta} A)).

    Ties on the coarse grid resolve toward the smaller angle.  The attaining
    vector is the top eigenvector at the winning angle, so <A v, v> has
    modulus equal to the radius up to refinement error.
    """
    M = as_matrix(A, square=True)
    if grid < 8:
        raise ContractError("grid must be at least 8")
    thetas = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    vals = _kernels._radius_sweep_kernel(M, thetas)
    i = int(np.argmax(vals))
    best_val = float(vals[i])
    best_th = float(thetas[i])

    # golden-section refinement on the bracket around the coarse winner;
    # refine_iters = 0 returns the pure grid maximum (monotone under grid doubling)
    cands = [(best_val, best_th)]
    if refine_iters > 0:
        step = 2.0 * math.pi / grid
        a, b = best_th - step, best_th + step
        invphi = (math.sqrt(5.0) - 1.0) / 2.0
        x1 = b - invphi * (b - a)
        x2 = a + invphi * (b - a)
        f1 = _lam_max(M, x1)
        f2 = _lam_max(M, x2)
        for _ in range(int(refine_iters)):
            if f1 < f2:
                a = x1
                x1, f1 = x2, f2
                x2 = a + invphi * (b - a)
                f2 = _lam_max(M, x2)
            else:
                b = x2
                x2, f2 = x1, f1
                x1 = b - invphi * (b - a)
                f1 = _lam_max(M, x1)
        cands += [(f1, x1), (f2, x2)]
    val, th = max(cands, key=lambda c: c[0])
    th = th % (2.0 * math.pi)
    H = _hermitian_part_at(M, th)
    w, V = _kernels._eigh_kernel(H, True)
    return RadiusReport(
        radius=max(float(w[-1]), val),
        attaining_angle=th,
        attaining_vector=V[:, -1].copy(),
    )


def _hermitian_part_at(M, theta):
    z = complex(math.cos(theta), -math.sin(theta))
    B = z * M
    return 0.5 * (B + B.conj().T)


def numerical_range_boundary(A, m):
    """m boundary points of the numerical range, by support-function sweep.

    Point j is <A v_j, v_j> for v_j the top eigenvector of
    Re(e^{-i theta_j} A) at theta_j = 2 pi j / m.  Every returned point lies
    in W(A) and their hull approximates W(A) from inside.
    """
    M = as_matrix(A, square=True)
    if m < 3:
        raise ContractError("need at least 3 sweep angles")
    thetas = 2.0 * math.pi * np.arange(m) / m
    return _kernels._boundary_kernel(M, thetas)


def hdlh_check(T, tol=DEFAULT_TOL, grid=256, refine_iters=60):
    """Check the radius bound w(T) <= cos(pi/(d+1)) for a nilpotent contraction.

    d is the nilpotency order.  attains is set when the radius meets the bound
    within eps_eq (this equality band is the calibration-sensitive knob of the
    whole test); at full order d = n equality certifies unitary similarity to
    the shift, and the certificate is returned.
    """
    M = as_matrix(T, square=True)
    n = M.shape[0]
    nrm = operator_norm(M)
    if nrm > 1.0 + tol.eps_eq:
        raise ContractError(f"not a contraction: norm {nrm:.6f}")
    d = nilpotency_order(M, tol)
    if d is None:
        raise NotNilpotentError(operator_norm(np.linalg.matrix_power(M, n)))
    bound = math.cos(math.pi / (d + 1))
    rep = numerical_radius(M, grid=grid, refine_iters=refine_iters)
    if rep.radius > bound + tol.eps_eq:
        raise CertificateError(
            f"radius {rep.radius:.12f} exceeds the nilpotent bound {bound:.12f}"
        )
    attains = abs(rep.radius - bound) <= tol.eps_eq
    block = None
    if attains and d == n:
        block = jordan_block_similarity(M, tol)
    return HdlhVerdict(order=d, bound=bound, attains=attains, block_similarity=block)


def jordan_block_similarity(T, tol=DEFAULT_TOL):
    """Unitary U with U S U* = T for T unitarily similar to the shift block.

    Requires ||T|| = 1 and ||T^{n-1}|| = 1 within tolerance and T nilpotent.
    The construction triangularizes T, reads the superdiagonal x_1..x_{n-1}
    (necessarily unimodular, with nothing else above the diagonal), and undoes
    the phases with the cumulative-product diagonal diag(1, x_1, x_1 x_2, ...).
    The result is unique up to a global phase, which is pinned by
    phase_normalize; the certificate is re-validated before returning.
    """
    M = as_matrix(T, square=True)
    n = M.shape[0]
    nrm = operator_norm(M)
    if nrm > 1.0 + tol.eps_eq:
        raise NotJordanBlockError("operator norm", nrm)
    if n >= 2:
        pw = operator_norm(np.linalg.matrix_power(M, n - 1))
        if pw < 1.0 - tol.eps_eq:
            raise NotJordanBlockError("norm of the (n-1)-th power", pw)

    Q, R = schur_strict_upper(M, tol)
    x = np.diag(R, 1)
    if n >= 2:
        off = R - np.diag(x, 1)
        off_max = float(np.max(np.abs(off)))
        if off_max > tol.eps_eq:
            raise NotJordanBlockError("off-superdiagonal mass", off_max)
        mod_dev = float(np.max(np.abs(np.abs(x) - 1.0)))
        if mod_dev > 4.0 * n * tol.eps_eq:
            raise NotJordanBlockError("superdiagonal modulus deviation", mod_dev)

    d = np.ones(n, dtype=np.complex128)
    for i in range(n - 1):
        d[i + 1] = d[i] * (x[i] / abs(x[i]))
    U = phase_normalize(Q @ np.diag(np.conj(d)))

    resid = frobenius(U @ shift_matrix(n) @ U.conj().T - M)
    if resid > 10.0 * tol.eps_residual:
        raise CertificateError(f"similarity certificate residual {resid:.3e}")
    return U
