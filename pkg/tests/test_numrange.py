"""Numerical radius/range sweeps, the nilpotent bound, Jordan-block recovery."""

import numpy as np
import pytest

import toepiso as tp
from toepiso.errors import ContractError, NotJordanBlockError


def S(n):
    return tp.shift_matrix(n)


def test_radius_of_shift_small():
    assert abs(tp.numerical_radius(S(2)).radius - 0.5) <= 1e-10
    assert abs(tp.numerical_radius(S(3)).radius - np.sqrt(2) / 2) <= 1e-10


def test_radius_of_identity():
    rep = tp.numerical_radius(np.eye(3))
    assert abs(rep.radius - 1) <= 1e-12


def test_radius_report_invariants():
    rng = tp.rng_from(0)
    A = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    rep = tp.numerical_radius(A)
    v = rep.attaining_vector
    assert abs(np.linalg.norm(v) - 1) <= 1e-10
    assert abs(abs(np.conj(v) @ (A @ v)) - rep.radius) <= 1e-8


def test_radius_unitary_invariance():
    rng = tp.rng_from(1)
    for _ in range(5):
        n = int(rng.integers(2, 7))
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        U = tp.haar_unitary(n, rng)
        assert abs(tp.numerical_radius(U @ A @ U.conj().T).radius - tp.numerical_radius(A).radius) <= 1e-8


def test_radius_subadditive_and_norm_sandwich():
    rng = tp.rng_from(2)
    for _ in range(5):
        n = int(rng.integers(2, 7))
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        wa, wb = tp.numerical_radius(A).radius, tp.numerical_radius(B).radius
        assert tp.numerical_radius(A + B).radius <= wa + wb + 1e-8
        nrm = tp.operator_norm(A)
        assert wa <= nrm + 1e-8
        assert nrm <= 2 * wa + 1e-8


def test_radius_monotone_in_grid():
    rng = tp.rng_from(3)
    A = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    # nested doubling grids without refinement
    v64 = tp.numerical_radius(A, grid=64, refine_iters=0).radius
    v128 = tp.numerical_radius(A, grid=128, refine_iters=0).radius
    v256 = tp.numerical_radius(A, grid=256, refine_iters=0).radius
    assert v64 <= v128 + 1e-14
    assert v128 <= v256 + 1e-14


def test_radius_rejects_tiny_grid():
    with pytest.raises(ContractError):
        tp.numerical_radius(np.eye(2), grid=4)


def test_boundary_of_identity_and_normal_matrix():
    pts = tp.numerical_range_boundary(np.eye(3), 12)
    assert np.max(np.abs(pts - 1)) <= 1e-12
    pts = tp.numerical_range_boundary(np.diag([0.0, 1.0]), 32)
    assert np.max(np.abs(pts.imag)) <= 1e-10
    assert np.all(pts.real >= -1e-10) and np.all(pts.real <= 1 + 1e-10)


def test_boundary_of_shift_is_half_circle_radius():
    # <S v, v> = conj(v1) v2 has modulus at most |v1||v2| <= 1/2, attained
    pts = tp.numerical_range_boundary(S(2), 64)
    assert np.max(np.abs(pts)) <= 0.5 + 1e-8
    assert abs(np.max(np.abs(pts)) - 0.5) <= 1e-8


def test_hdlh_shift_attains():
    for n in (2, 3, 5):
        v = tp.hdlh_check(S(n))
        assert v.order == n
        assert abs(v.bound - np.cos(np.pi / (n + 1))) <= 1e-15
        assert v.attains
        U = v.block_similarity
        assert U is not None
        assert np.linalg.norm(U @ S(n) @ U.conj().T - S(n)) <= 1e-8


def test_hdlh_scaled_shift_does_not_attain():
    n = 4
    v = tp.hdlh_check(S(n) / 2)
    assert v.order == n
    assert not v.attains
    assert v.block_similarity is None


def test_hdlh_direct_summand():
    n = 4
    T = np.zeros((n + 1, n + 1), dtype=complex)
    T[:n, :n] = S(n)
    v = tp.hdlh_check(T)
    assert v.order == n
    assert v.attains
    assert v.block_similarity is None  # attained below full size: no certificate


def test_hdlh_contract_errors():
    with pytest.raises(ContractError):
        tp.hdlh_check(2 * S(3))  # not a contraction
    with pytest.raises(ContractError):
        tp.hdlh_check(np.eye(3))  # not nilpotent


def test_jordan_similarity_identity_case():
    U = tp.jordan_block_similarity(S(4))
    assert np.allclose(U, np.eye(4), atol=1e-12)


def test_jordan_similarity_of_adjoint_is_reversal():
    n = 3
    J = np.fliplr(np.eye(n)).astype(complex)
    U = tp.jordan_block_similarity(S(n).conj().T)
    assert np.allclose(U, J, atol=1e-12)  # J S J = S^T, phases pinned


def test_jordan_similarity_diagonal_twist():
    rng = tp.rng_from(8)
    for n in (2, 4, 6):
        D = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, n)))
        T = D @ S(n) @ D.conj().T
        U = tp.jordan_block_similarity(T)
        assert np.linalg.norm(U @ S(n) @ U.conj().T - T) <= 1e-10
        # uniqueness up to phase: align against the synthesizing twist
        ip = np.trace(D.conj().T @ U)
        ph = ip / abs(ip)
        assert np.linalg.norm(U - ph * D) <= 1e-8


def test_jordan_similarity_deterministic():
    rng = tp.rng_from(9)
    W = tp.haar_unitary(5, rng)
    T = W @ S(5) @ W.conj().T
    U1 = tp.jordan_block_similarity(T)
    U2 = tp.jordan_block_similarity(T)
    assert np.array_equal(U1, U2)


def test_jordan_similarity_preconditions():
    with pytest.raises(NotJordanBlockError) as exc:
        tp.jordan_block_similarity(S(5) / 2)  # (n-1)-th power norm too small
    assert "power" in str(exc.value)
    with pytest.raises(NotJordanBlockError):
        tp.jordan_block_similarity(2 * S(5))  # norm too large
    # unimodular superdiagonal but extra mass above it; needs a wide equality
    # band because any strict-upper perturbation also inflates the norm
    T = S(4).copy()
    T[0, 2] = 1.6e-6
    with pytest.raises(NotJordanBlockError) as exc:
        tp.jordan_block_similarity(T, tp.Tol(eps_eq=1e-6))
    assert "mass" in str(exc.value)
