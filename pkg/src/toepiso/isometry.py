"""Linear maps on the shift algebra and the decision procedures for them.

A linear map phi on the algebra is stored by its images on the basis
S^0, ..., S^{n-1}.  The central operation is :func:`factor_isometry`, which
either produces two unitaries U, V with phi(A) = U A V on the whole algebra
(hence certifies that phi is an isometry, indeed a complete one) or returns a
:class:`Rejection` carrying the stage at which the attempt failed, the
offending matrix, and the measured defect.  Certification is by factorization,
never by norm sampling: the sampling checks in this module exist only as
independent cross-checks of an issued certificate.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import CertificateError, ContractError, ShapeError
from .linalg import (
    DEFAULT_TOL,
    as_matrix,
    frobenius,
    is_unitary,
    nilpotency_defect,
    nullspace_basis,
    operator_norm,
    range_basis,
    rank_eps,
    subspace_contained,
    svd_values,
)
from .numrange import jordan_block_similarity
from .sampling import random_upper_toeplitz, rng_from
from .toeplitz import UpperToeplitz, ToeplitzFull, embed, filtration_index, shift_matrix, utoe_mul

__all__ = [
    "LinearMapA",
    "SystemMapT",
    "FactorCert",
    "Rejection",
    "MultOracle",
    "MultWitness",
    "MultClass",
    "apply_map",
    "synthesize_isometry",
    "synthesize_system_isometry",
    "factor_isometry",
    "factor_system_isometry",
    "residual_of",
    "verify_isometry_sampled",
    "singular_preservation_check",
    "amplified_isometry_check",
    "homomorphism_check",
    "ChainReport",
    "nested_chain_check",
    "neumann_moments",
    "corner_blocks",
    "classify_multiplicative",
    "conjugation_oracle",
    "similarity_oracle",
    "coeff_twist_oracle",
    "a_twist_oracle",
    "pathological_mult_examples",
]


class LinearMapA:
    """Linear map on the algebra, given by its images of S^0, ..., S^{n-1}."""

    __slots__ = ("n", "images")

    def __init__(self, images):
        mats = tuple(as_matrix(im, square=True).copy() for im in images)
        if not mats:
            raise ShapeError("need at least one basis image")
        n = mats[0].shape[0]
        if len(mats) != n or any(m.shape[0] != n for m in mats):
            raise ShapeError("need exactly n images of size n x n")
        for m in mats:
            m.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "images", mats)

    def __setattr__(self, name, value):
        raise AttributeError("LinearMapA is immutable")

    @classmethod
    def identity(cls, n):
        S = shift_matrix(n)
        return cls([np.linalg.matrix_power(S, k) for k in range(n)])

    @classmethod
    def transpose_map(cls, n):
        S = shift_matrix(n)
        return cls([np.linalg.matrix_power(S, k).T for k in range(n)])

    def apply(self, A):
        """phi(sum a_k S^k) = sum a_k images[k]."""
        if A.n != self.n:
            raise ShapeError("size mismatch")
        out = np.zeros((self.n, self.n), dtype=np.complex128)
        for k in range(self.n):
            out += A.coeffs[k] * self.images[k]
        return out


def apply_map(phi, A):
    """Function form of :meth:`LinearMapA.apply`."""
    return phi.apply(A)


class SystemMapT:
    """Linear map on the full Toeplitz system, by images of S^k and (S*)^k."""

    __slots__ = ("n", "upper_images", "lower_images")

    def __init__(self, upper_images, lower_images):
        up = tuple(as_matrix(im, square=True).copy() for im in upper_images)
        lo = tuple(as_matrix(im, square=True).copy() for im in lower_images)
        if not up:
            raise ShapeError("need at least one upper image")
        n = up[0].shape[0]
        if len(up) != n or len(lo) != n - 1:
            raise ShapeError("need n upper images and n-1 lower images")
        if any(m.shape[0] != n for m in up + lo):
            raise ShapeError("all images must be n x n")
        for m in up + lo:
            m.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "upper_images", up)
        object.__setattr__(self, "lower_images", lo)

    def __setattr__(self, name, value):
        raise AttributeError("SystemMapT is immutable")

    def restriction(self):
        """The induced map on the upper-triangular algebra."""
        return LinearMapA(self.upper_images)

    def apply(self, T):
        """Value on a full Toeplitz matrix, by linearity over the diagonals."""
        if not isinstance(T, ToeplitzFull) or T.n != self.n:
            raise ShapeError("size mismatch")
        out = np.zeros((self.n, self.n), dtype=np.complex128)
        for k in range(self.n):
            out += T.diagonal(k) * self.upper_images[k]
        for k in range(1, self.n):
            out += T.diagonal(-k) * self.lower_images[k - 1]
        return out


@dataclass(frozen=True)
class FactorCert:
    """Certificate phi(A) = U A V, with the recomputable max Frobenius residual."""

    U: np.ndarray
    V: np.ndarray
    residual: float
    phase_normalized: bool = True


@dataclass(frozen=True)
class Rejection:
    """Witness that a map failed certification: stage, quantity, defect, matrix."""

    stage: int
    reason: str
    defect: float
    offending: np.ndarray | None = None


def synthesize_isometry(U, V, tol=DEFAULT_TOL):
    """The map A -> U A V for unitary U, V (always an isometry)."""
    U = as_matrix(U, square=True)
    V = as_matrix(V, square=True)
    cu, cv = is_unitary(U, tol), is_unitary(V, tol)
    if not cu.ok:
        raise ContractError(f"left factor is not unitary (defect {cu.defect:.3e})")
    if not cv.ok:
        raise ContractError(f"right factor is not unitary (defect {cv.defect:.3e})")
    n = U.shape[0]
    S = shift_matrix(n)
    Sk = np.eye(n, dtype=np.complex128)
    images = []
    for _ in range(n):
        images.append(U @ Sk @ V)
        Sk = Sk @ S
    return LinearMapA(images)


def synthesize_system_isometry(U, V, tol=DEFAULT_TOL):
    """The map T -> U T V on the full Toeplitz system."""
    phi = synthesize_isometry(U, V, tol)
    n = phi.n
    St = shift_matrix(n).conj().T
    P = np.eye(n, dtype=np.complex128)
    lower = []
    for _ in range(1, n):
        P = P @ St
        lower.append(U @ P @ V)
    return SystemMapT(phi.images, lower)


def residual_of(phi, U, V):
    """max_k || phi(S^k) - U S^k V ||_F, the quantity a certificate reports."""
    n = phi.n
    S = shift_matrix(n)
    Sk = np.eye(n, dtype=np.complex128)
    worst = 0.0
    for k in range(n):
        worst = max(worst, frobenius(phi.images[k] - U @ Sk @ V))
        Sk = Sk @ S
    return worst


def _phase_pin(U, V):
    # Rotate the pair so U is phase-normalized; the product U S^k V is untouched.
    col = U[:, 0]
    nz = np.flatnonzero(np.abs(col) > 1e-10)
    if nz.size == 0:
        return U, V
    ph = col[nz[0]] / abs(col[nz[0]])
    return U * np.conj(ph), V * ph


def factor_isometry(phi, tol=DEFAULT_TOL):
    """Factor phi as A -> U A V, or reject with a checkable witness.

    Stages:
      1. W0 = phi(I) must be unitary.
      2. Unitalize: psi_k = phi(S^k) W0*.
      3. T = psi_1 must be nilpotent with ||T|| = 1 and ||T^{n-1}|| = 1.
      4. Recover U with U S U* = T.
      5. U* psi_k U must equal S^k for every k.
      6. Return (U, V = U* W0), phases pinned, residual recomputed.

    Success implies phi(A) = U A V on the basis, hence everywhere by
    linearity, hence phi is a (complete) isometry; conversely every isometry
    passes, so this is a decision procedure up to the declared tolerances.
    """
    n = phi.n
    S = shift_matrix(n)
    W0 = phi.images[0]
    uni = is_unitary(W0, tol)
    if not uni.ok:
        return Rejection(1, "image of the identity is not unitary", uni.defect, W0)

    psi = [im @ W0.conj().T for im in phi.images]

    if n == 1:
        U = np.eye(1, dtype=np.complex128)
        V = W0.copy()
        U, V = _phase_pin(U, V)
        return FactorCert(U, V, residual_of(phi, U, V))

    T = psi[1]
    nrm = operator_norm(T)
    if abs(nrm - 1.0) > tol.eps_eq:
        return Rejection(3, "norm of the shift image is not 1", abs(nrm - 1.0), T)
    pw = operator_norm(np.linalg.matrix_power(T, n - 1))
    if pw < 1.0 - tol.eps_eq:
        return Rejection(3, "norm of the (n-1)-th power of the shift image is not 1", 1.0 - pw, T)
    nd = nilpotency_defect(T)
    if nd > tol.eps_residual:
        return Rejection(3, "shift image is not nilpotent", nd, T)

    try:
        U = jordan_block_similarity(T, tol)
    except ContractError as exc:
        return Rejection(4, str(exc), getattr(exc, "value", getattr(exc, "power_norm", 0.0)), T)

    Sk = np.eye(n, dtype=np.complex128)
    for k in range(n):
        defect = frobenius(U.conj().T @ psi[k] @ U - Sk)
        if defect > tol.eps_residual:
            return Rejection(5, f"basis image {k} deviates after normalization", defect, psi[k])
        Sk = Sk @ S

    V = U.conj().T @ W0
    U, V = _phase_pin(U, V)
    residual = residual_of(phi, U, V)
    if residual > 10.0 * tol.eps_residual:
        raise CertificateError(f"accepted certificate has residual {residual:.3e}")
    for W in (U, V):
        chk = is_unitary(W, tol)
        if not chk.ok:
            raise CertificateError(f"certificate factor unitarity defect {chk.defect:.3e}")
    return FactorCert(U, V, residual)


def factor_system_isometry(sys_map, tol=DEFAULT_TOL):
    """Factor a map on the full Toeplitz system as T -> U T V.

    The restriction to the upper-triangular algebra is factored first; the
    lower images must then agree with U (S*)^k V, which for a genuine isometry
    of the system is forced by hermiticity preservation.
    """
    result = factor_isometry(sys_map.restriction(), tol)
    if isinstance(result, Rejection):
        return result
    n = sys_map.n
    St = shift_matrix(n).conj().T
    P = np.eye(n, dtype=np.complex128)
    residual = result.residual
    for k in range(1, n):
        P = P @ St
        defect = frobenius(sys_map.lower_images[k - 1] - result.U @ P @ result.V)
        if defect > tol.eps_residual:
            return Rejection(
                7,
                f"adjoint image {k} is inconsistent with the algebra factorization",
                defect,
                sys_map.lower_images[k - 1],
            )
        residual = max(residual, defect)
    return FactorCert(result.U, result.V, residual)


def verify_isometry_sampled(phi, trials, seed):
    """Max |  ||phi(A)|| - ||A||  | over seeded Gaussian algebra elements."""
    if trials < 1:
        raise ContractError("need at least one trial")
    rng = rng_from(seed)
    worst = 0.0
    for _ in range(trials):
        A = random_upper_toeplitz(phi.n, rng)
        worst = max(worst, abs(operator_norm(phi.apply(A)) - operator_norm(embed(A))))
    return worst


def singular_preservation_check(phi, trials, seed):
    """Max entrywise gap between the singular values of A and of phi(A)."""
    if trials < 1:
        raise ContractError("need at least one trial")
    rng = rng_from(seed)
    worst = 0.0
    for _ in range(trials):
        A = random_upper_toeplitz(phi.n, rng)
        gap = np.max(np.abs(svd_values(embed(A)) - svd_values(phi.apply(A))))
        worst = max(worst, float(gap))
    return worst


def amplified_isometry_check(phi, k, trials, seed):
    """Norm deviation of the amplification of phi on k x k block matrices."""
    if k < 1:
        raise ContractError("amplification order must be positive")
    if trials < 1:
        raise ContractError("need at least one trial")
    rng = rng_from(seed)
    worst = 0.0
    for _ in range(trials):
        blocks = [[random_upper_toeplitz(phi.n, rng) for _ in range(k)] for _ in range(k)]
        big_in = np.block([[embed(b) for b in row] for row in blocks])
        big_out = np.block([[phi.apply(b) for b in row] for row in blocks])
        worst = max(worst, abs(operator_norm(big_out) - operator_norm(big_in)))
    return worst


def homomorphism_check(phi, trials, seed, tol=DEFAULT_TOL):
    """Max ||phi(AB) - phi(A) phi(B)||_F over sampled pairs; phi must be unital."""
    if trials < 1:
        raise ContractError("need at least one trial")
    dev = frobenius(phi.images[0] - np.eye(phi.n))
    if dev > tol.eps_residual:
        raise ContractError(f"map is not unital (defect {dev:.3e})")
    rng = rng_from(seed)
    worst = 0.0
    for _ in range(trials):
        A = random_upper_toeplitz(phi.n, rng)
        B = random_upper_toeplitz(phi.n, rng)
        worst = max(worst, frobenius(phi.apply(utoe_mul(A, B)) - phi.apply(A) @ phi.apply(B)))
    return worst


@dataclass(frozen=True)
class ChainReport:
    """Nesting verdict for the kernels and ranges of phi(S), phi(S^2), ...

    ranks[k-1] is the eps-rank of phi(S^k); the containment and strictness
    tuples are indexed by the step k-1 -> k for k = 2..n-1 (empty for n <= 2).
    """

    ranks: tuple
    kernel_contained: tuple
    range_contained: tuple
    strict: tuple

    @property
    def all_contained(self):
        return all(self.kernel_contained) and all(self.range_contained)

    @property
    def all_strict(self):
        return all(self.strict)


def nested_chain_check(phi, tol=DEFAULT_TOL):
    """Check ker phi(S^{k-1}) in ker phi(S^k) and the reversed range chain."""
    n = phi.n
    kernels = [nullspace_basis(phi.images[k], tol) for k in range(1, n)]
    ranges = [range_basis(phi.images[k], tol) for k in range(1, n)]
    ranks = tuple(rank_eps(phi.images[k], tol) for k in range(1, n))
    ker_ok = []
    ran_ok = []
    strict = []
    for k in range(2, n):
        ker_ok.append(subspace_contained(kernels[k - 2], kernels[k - 1], tol))
        ran_ok.append(subspace_contained(ranges[k - 1], ranges[k - 2], tol))
        strict.append(ranks[k - 1] < ranks[k - 2])
    return ChainReport(ranks, tuple(ker_ok), tuple(ran_ok), tuple(strict))


def neumann_moments(A, x, y):
    """The moments y^T A^k x for k = 0..dim(A); computed by iteration, no inverse."""
    M = as_matrix(A, square=True)
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    y = np.asarray(y, dtype=np.complex128).reshape(-1)
    if x.size != M.shape[0] or y.size != M.shape[0]:
        raise ShapeError("vector lengths must match the matrix size")
    out = []
    z = x
    for _ in range(M.shape[0] + 1):
        out.append(complex(np.dot(y, z)))
        z = M @ z
    return out


def corner_blocks(T):
    """Split an n x n matrix as [[x, A], [alpha, y^T]]: returns (A, x, y, alpha)."""
    M = as_matrix(T, square=True)
    if M.shape[0] < 2:
        raise ShapeError("need size at least 2")
    return M[:-1, 1:], M[:-1, 0].copy(), M[-1, 1:].copy(), complex(M[-1, 0])


class MultOracle:
    """Evaluation handle for a (possibly nonlinear) multiplicative map.

    Multiplicative maps are not determined by finitely many images, so the
    classifier works against this evaluation contract.  Construction probes
    the zero element once (a multiplicative norm-preserving map must kill it).
    """

    __slots__ = ("n", "_eval")

    def __init__(self, n, eval_fn: Callable[[UpperToeplitz], np.ndarray]):
        if n < 1:
            raise ContractError("size must be positive")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "_eval", eval_fn)
        probe = self.eval(UpperToeplitz.zero(n))
        if frobenius(probe) > 1e-12:
            raise ContractError("oracle does not vanish at zero")

    def __setattr__(self, name, value):
        raise AttributeError("MultOracle is immutable")

    def eval(self, A):
        if A.n != self.n:
            raise ShapeError("size mismatch")
        return as_matrix(self._eval(A), square=True)


@dataclass(frozen=True)
class MultWitness:
    """A concrete input with expected and observed values, independently checkable."""

    input: UpperToeplitz
    expected: np.ndarray
    observed: np.ndarray
    defect: float
    note: str


@dataclass(frozen=True)
class MultClass:
    """Classification verdict: a unitary (possibly conjugate) similarity, or rejected."""

    kind: str  # "linear_similarity" | "conjugate_similarity" | "rejected"
    U: np.ndarray | None = None
    witness: MultWitness | None = None


def conjugation_oracle(n):
    """A -> conj(A) (entrywise conjugation, i.e. conjugated coefficients)."""
    return MultOracle(n, lambda A: embed(A.conjugate()))


def similarity_oracle(U0, tol=DEFAULT_TOL):
    """A -> U0 A U0* for a fixed unitary U0."""
    U0 = as_matrix(U0, square=True)
    chk = is_unitary(U0, tol)
    if not chk.ok:
        raise ContractError(f"similarity matrix is not unitary (defect {chk.defect:.3e})")
    return MultOracle(U0.shape[0], lambda A: U0 @ embed(A) @ U0.conj().T)


def coeff_twist_oracle(n, m):
    """The leading-phase twist: A -> conj(u) u^m A with u the phase of the leading coefficient.

    Realizes the circle homomorphism z -> z^m; multiplicative and norm
    preserving for every integer m, but only homogeneous for m = 1.
    """

    def _eval(A):
        r = filtration_index(A)
        if r == A.n:
            return np.zeros((A.n, A.n), dtype=np.complex128)
        ar = A.coeffs[r]
        u = ar / abs(ar)
        return (np.conj(u) * u**m) * embed(A)

    return MultOracle(n, _eval)


def a_twist_oracle(n, a):
    """The grading twist A = sum_{i>=r} c_i S^i -> sum a^{i-r} c_i S^i, |a| = 1."""
    a = complex(a)
    if abs(abs(a) - 1.0) > 1e-12:
        raise ContractError("twist parameter must have modulus 1")

    def _eval(A):
        r = filtration_index(A)
        if r == A.n:
            return np.zeros((A.n, A.n), dtype=np.complex128)
        c = A.coeffs.copy()
        for i in range(r, A.n):
            c[i] = a ** (i - r) * c[i]
        return embed(UpperToeplitz(c))

    return MultOracle(n, _eval)


def pathological_mult_examples(kind, n, m=2, a=-1.0):
    """Dispatcher over the two built-in multiplicative-but-wild oracle families."""
    if kind == "coeff_twist":
        return coeff_twist_oracle(n, m)
    if kind == "a_twist":
        return a_twist_oracle(n, a)
    raise ContractError(f"unknown oracle family {kind!r}")


def classify_multiplicative(oracle, tol=DEFAULT_TOL, trials=20, seed=0):
    """Decide whether a continuous multiplicative norm-preserving map is
    A -> U A U* or A -> U conj(A) U*, or reject with a witness.

    The shift image fixes U (up to phase); an i*I probe separates the linear
    from the conjugate form; sampled inputs confirm.  "Rejected" means
    inconsistent with both forms at the sampled points -- with finitely many
    evaluations it can never prove a map discontinuous.
    """
    n = oracle.n
    Sel = UpperToeplitz.shift_power(n, 1)
    T = oracle.eval(Sel)
    nrm = operator_norm(T)
    if abs(nrm - 1.0) > tol.eps_eq:
        return MultClass(
            "rejected",
            witness=MultWitness(Sel, embed(Sel), T, abs(nrm - 1.0), "shift image norm is not 1"),
        )
    if n >= 2:
        pw = operator_norm(np.linalg.matrix_power(T, n - 1))
        if abs(pw - 1.0) > tol.eps_eq:
            return MultClass(
                "rejected",
                witness=MultWitness(
                    Sel, embed(Sel), T, abs(pw - 1.0), "shift image power norm is not 1"
                ),
            )
    nd = nilpotency_defect(T)
    if nd > tol.eps_residual:
        return MultClass(
            "rejected",
            witness=MultWitness(Sel, embed(Sel), T, nd, "shift image is not nilpotent"),
        )
    try:
        U = jordan_block_similarity(T, tol)
    except ContractError as exc:
        return MultClass(
            "rejected", witness=MultWitness(Sel, embed(Sel), T, float("nan"), str(exc))
        )

    probe = UpperToeplitz.identity(n) * 1j
    raw = oracle.eval(probe)
    P = U.conj().T @ raw @ U
    eye = np.eye(n)
    d_lin = frobenius(P - 1j * eye)
    d_conj = frobenius(P + 1j * eye)
    if d_lin <= tol.eps_residual:
        conj_form = False
    elif d_conj <= tol.eps_residual:
        conj_form = True
    else:
        return MultClass(
            "rejected",
            witness=MultWitness(
                probe,
                U @ (1j * eye) @ U.conj().T,
                raw,
                min(d_lin, d_conj),
                "imaginary-unit probe matches neither form",
            ),
        )

    rng = rng_from(seed)
    for _ in range(max(1, trials)):
        A = random_upper_toeplitz(n, rng)
        expected_model = embed(A.conjugate()) if conj_form else embed(A)
        raw = oracle.eval(A)
        defect = frobenius(U.conj().T @ raw @ U - expected_model)
        if defect > tol.eps_residual:
            return MultClass(
                "rejected",
                witness=MultWitness(
                    A,
                    U @ expected_model @ U.conj().T,
                    raw,
                    defect,
                    "sampled input deviates from the tentative form",
                ),
            )
    return MultClass("conjugate_similarity" if conj_form else "linear_similarity", U=U)
