"""Jacobi-rotation numeric kernels shared by the whole package.

The hot loops (one-sided Jacobi SVD, cyclic Hermitian Jacobi eigensolver, and
the numerical-range angle sweeps) are written in a numba-compatible subset of
numpy so a single source serves both execution paths.  When numba is
importable they are compiled with ``@njit(cache=True)``; setting the
environment variable ``TOEPISO_NUMBA=0`` selects the uncompiled pure-numpy
path instead, and ``TOEPISO_NUMBA=1`` makes numba mandatory.

One-sided Jacobi is used for singular values on purpose: it is self-contained,
has no eigenvalue-ordering ambiguity, and delivers high relative accuracy on
the well-conditioned desk-scale matrices (n <= 16 or so) this package targets.
"""

import math
import os

import numpy as np

__all__ = ["NUMBA_ENABLED", "backend_name"]

# Relative column-orthogonality target for SVD sweeps.  Must sit above the
# rounding noise floor (~m * eps) or the sweeps never settle.
_EPS_ORTH = 1.4e-14
# Off-diagonal threshold for Hermitian sweeps, relative to ||H||_F.
_EPS_OFF = 4.0e-15
_MAX_SWEEPS = 60


def _resolve_backend():
    flag = os.environ.get("TOEPISO_NUMBA", "").strip().lower()
    if flag in ("0", "false", "no", "off"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        if flag in ("1", "true", "yes", "on"):
            raise ImportError("TOEPISO_NUMBA=1 but numba is not installed") from None
        return False
    return True


NUMBA_ENABLED = _resolve_backend()

if NUMBA_ENABLED:
    from numba import njit

    def _jit(fn):
        return njit(cache=True)(fn)
else:

    def _jit(fn):
        return fn


def backend_name():
    """Name of the active kernel backend: ``"numba"`` or ``"numpy"``."""
    return "numba" if NUMBA_ENABLED else "numpy"


@_jit
def _svd_kernel(A, want_uv):
    """One-sided Jacobi SVD of an m x n complex matrix with m >= n.

    Returns (U, s, Vh) with A = U @ diag(s) @ Vh up to rounding, s sorted
    descending.  When want_uv is False only s is meaningful (U, Vh are left
    as zero placeholders and the rotation accumulation is skipped).
    """
    m, n = A.shape
    W = A.copy()
    V = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        V[i, i] = 1.0 + 0.0j

    for _sweep in range(_MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                a = 0.0
                b = 0.0
                h = 0.0 + 0.0j
                for i in range(m):
                    wp = W[i, p]
                    wq = W[i, q]
                    a += wp.real * wp.real + wp.imag * wp.imag
                    b += wq.real * wq.real + wq.imag * wq.imag
                    h += wp.conjugate() * wq
                ab = math.sqrt(a) * math.sqrt(b)
                ah = abs(h)
                if ab == 0.0 or ah <= _EPS_ORTH * ab:
                    continue
                rotated = True
                ph = h / ah
                tau = (b - a) / (2.0 * ah)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                pc = ph.conjugate()
                for i in range(m):
                    wp = W[i, p]
                    wq = W[i, q]
                    W[i, p] = c * wp - s * (pc * wq)
                    W[i, q] = s * wp + c * (pc * wq)
                if want_uv:
                    for i in range(n):
                        vp = V[i, p]
                        vq = V[i, q]
                        V[i, p] = c * vp - s * (pc * vq)
                        V[i, q] = s * vp + c * (pc * vq)
        if not rotated:
            break

    sig = np.empty(n, dtype=np.float64)
    for j in range(n):
        acc = 0.0
        for i in range(m):
            w = W[i, j]
            acc += w.real * w.real + w.imag * w.imag
        sig[j] = math.sqrt(acc)

    # stable insertion sort, descending
    perm = np.empty(n, dtype=np.int64)
    for j in range(n):
        perm[j] = j
    for j in range(1, n):
        key = perm[j]
        kv = sig[key]
        i = j - 1
        while i >= 0 and sig[perm[i]] < kv:
            perm[i + 1] = perm[i]
            i -= 1
        perm[i + 1] = key

    s_out = np.empty(n, dtype=np.float64)
    for j in range(n):
        s_out[j] = sig[perm[j]]

    U = np.zeros((m, m), dtype=np.complex128)
    Vh = np.zeros((n, n), dtype=np.complex128)
    if not want_uv:
        return U, s_out, Vh

    for jj in range(n):
        j = perm[jj]
        for i in range(n):
            Vh[jj, i] = V[i, j].conjugate()

    smax = s_out[0]
    cut = smax * 1e-13
    filled = np.zeros(m, dtype=np.bool_)
    for jj in range(n):
        if s_out[jj] > cut:
            j = perm[jj]
            inv = 1.0 / s_out[jj]
            for i in range(m):
                U[i, jj] = W[i, j] * inv
            filled[jj] = True

    # Complete U to a unitary: for each empty slot pick the standard basis
    # vector farthest from the span of the filled columns, orthogonalize
    # twice, normalize.  Deterministic (first maximum wins).
    v = np.empty(m, dtype=np.complex128)
    for jj in range(m):
        if filled[jj]:
            continue
        best_k = 0
        best_r = -1.0
        for k in range(m):
            proj = 0.0
            for cc in range(m):
                if filled[cc]:
                    u = U[k, cc]
                    proj += u.real * u.real + u.imag * u.imag
            r = 1.0 - proj
            if r > best_r:
                best_r = r
                best_k = k
        for i in range(m):
            v[i] = 0.0
        v[best_k] = 1.0
        for _pass in range(2):
            for cc in range(m):
                if filled[cc]:
                    dot = 0.0 + 0.0j
                    for i in range(m):
                        dot += U[i, cc].conjugate() * v[i]
                    for i in range(m):
                        v[i] -= dot * U[i, cc]
        nv = 0.0
        for i in range(m):
            nv += v[i].real * v[i].real + v[i].imag * v[i].imag
        inv = 1.0 / math.sqrt(nv)
        for i in range(m):
            U[i, jj] = v[i] * inv
        filled[jj] = True

    return U, s_out, Vh


@_jit
def _eigh_kernel(H, want_v):
    """Cyclic Jacobi eigensolver for the Hermitian part of H.

    Returns (w, V) with w ascending; columns of V are eigenvectors of
    (H + H*)/2.  When want_v is False the rotations are not accumulated.
    """
    n = H.shape[0]
    A = np.empty((n, n), dtype=np.complex128)
    fro = 0.0
    for i in range(n):
        for j in range(n):
            z = 0.5 * (H[i, j] + H[j, i].conjugate())
            A[i, j] = z
            fro += z.real * z.real + z.imag * z.imag
    fro = math.sqrt(fro)

    V = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        V[i, i] = 1.0 + 0.0j

    if fro > 0.0:
        thresh = _EPS_OFF * fro
        for _sweep in range(_MAX_SWEEPS):
            rotated = False
            for p in range(n - 1):
                for q in range(p + 1, n):
                    h = A[p, q]
                    ah = abs(h)
                    if ah <= thresh:
                        continue
                    rotated = True
                    a = A[p, p].real
                    b = A[q, q].real
                    ph = h / ah
                    tau = (b - a) / (2.0 * ah)
                    if tau >= 0.0:
                        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                    c = 1.0 / math.sqrt(1.0 + t * t)
                    s = c * t
                    pc = ph.conjugate()
                    # A <- A R (columns p, q), then A <- R* A (rows p, q)
                    for i in range(n):
                        ap = A[i, p]
                        aq = A[i, q]
                        A[i, p] = c * ap - s * (pc * aq)
                        A[i, q] = s * ap + c * (pc * aq)
                    for i in range(n):
                        ap = A[p, i]
                        aq = A[q, i]
                        A[p, i] = c * ap - s * (ph * aq)
                        A[q, i] = s * ap + c * (ph * aq)
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    if want_v:
                        for i in range(n):
                            vp = V[i, p]
                            vq = V[i, q]
                            V[i, p] = c * vp - s * (pc * vq)
                            V[i, q] = s * vp + c * (pc * vq)
            if not rotated:
                break

    w = np.empty(n, dtype=np.float64)
    for i in range(n):
        w[i] = A[i, i].real

    # stable insertion sort, ascending
    perm = np.empty(n, dtype=np.int64)
    for j in range(n):
        perm[j] = j
    for j in range(1, n):
        key = perm[j]
        kv = w[key]
        i = j - 1
        while i >= 0 and w[perm[i]] > kv:
            perm[i + 1] = perm[i]
            i -= 1
        perm[i + 1] = key

    w_out = np.empty(n, dtype=np.float64)
    V_out = np.empty((n, n), dtype=np.complex128)
    for j in range(n):
        w_out[j] = w[perm[j]]
        for i in range(n):
            V_out[i, j] = V[i, perm[j]]
    return w_out, V_out


@_jit
def _radius_sweep_kernel(A, thetas):
    """Largest eigenvalue of Re(e^{-i theta} A) at each sampled angle."""
    n = A.shape[0]
    m = thetas.shape[0]
    out = np.empty(m, dtype=np.float64)
    H = np.empty((n, n), dtype=np.complex128)
    for t in range(m):
        th = thetas[t]
        z = complex(math.cos(th), -math.sin(th))
        for i in range(n):
            for j in range(n):
                H[i, j] = 0.5 * (z * A[i, j] + (z * A[j, i]).conjugate())
        w, _ = _eigh_kernel(H, False)
        out[t] = w[n - 1]
    return out


@_jit
def _boundary_kernel(A, thetas):
    """Boundary points <A v, v> with v the top eigenvector of Re(e^{-i theta} A)."""
    n = A.shape[0]
    m = thetas.shape[0]
    pts = np.empty(m, dtype=np.complex128)
    H = np.empty((n, n), dtype=np.complex128)
    for t in range(m):
        th = thetas[t]
        z = complex(math.cos(th), -math.sin(th))
        for i in range(n):
            for j in range(n):
                H[i, j] = 0.5 * (z * A[i, j] + (z * A[j, i]).conjugate())
        _, V = _eigh_kernel(H, True)
        acc = 0.0 + 0.0j
        for i in range(n):
            av = 0.0 + 0.0j
            for j in range(n):
                av += A[i, j] * V[j, n - 1]
            acc += V[i, n - 1].conjugate() * av
        pts[t] = acc
    return pts
