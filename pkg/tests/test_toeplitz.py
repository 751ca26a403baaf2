"""Coefficient-exact algebra operations and the corner norm formula."""

import numpy as np
import pytest

import toepiso as tp
from toepiso.errors import ContractError, ShapeError
from toepiso.toeplitz import ToeplitzFull, UpperToeplitz


GOLDEN = (1.0 + np.sqrt(5.0)) / 2.0


def test_shift_matrix_small():
    assert np.array_equal(tp.shift_matrix(2), np.array([[0, 1], [0, 0]], dtype=complex))
    assert np.array_equal(tp.shift_matrix(1), np.zeros((1, 1), dtype=complex))


def test_shift_nilpotency_order():
    n = 5
    S = tp.shift_matrix(n)
    assert np.any(np.linalg.matrix_power(S, n - 1) != 0)
    assert np.all(np.linalg.matrix_power(S, n) == 0)


def test_embed_examples():
    n = 4
    assert np.array_equal(tp.embed(UpperToeplitz.identity(n)), np.eye(n))
    assert np.array_equal(tp.embed(UpperToeplitz.shift_power(n)), tp.shift_matrix(n))
    M = tp.embed(UpperToeplitz([1, 2, 3]))
    assert np.array_equal(M, np.array([[1, 2, 3], [0, 1, 2], [0, 0, 1]], dtype=complex))


def test_embed_commutes_with_shift_exactly():
    rng = tp.rng_from(1)
    A = tp.random_upper_toeplitz(6, rng)
    S = tp.shift_matrix(6)
    M = tp.embed(A)
    assert np.array_equal(M @ S, S @ M)


def test_utoe_mul_examples():
    n = 5
    A = tp.random_upper_toeplitz(n, tp.rng_from(2))
    assert UpperToeplitz.identity(n) * A == A
    assert UpperToeplitz.shift_power(n, 1) * UpperToeplitz.shift_power(n, n - 1) == UpperToeplitz.zero(n)
    # (1 + t)(1 - t) = 1 - t^2 by hand
    assert UpperToeplitz([1, 1, 0]) * UpperToeplitz([1, -1, 0]) == UpperToeplitz([1, 0, -1])


def test_utoe_mul_is_embedding_homomorphism():
    rng = tp.rng_from(3)
    for _ in range(20):
        n = int(rng.integers(1, 8))
        A = UpperToeplitz(rng.integers(-5, 6, n).astype(float))
        B = UpperToeplitz(rng.integers(-5, 6, n).astype(float))
        assert np.array_equal(tp.embed(A * B), tp.embed(A) @ tp.embed(B))


def test_utoe_mul_size_mismatch():
    with pytest.raises(ShapeError):
        tp.utoe_mul(UpperToeplitz([1, 0]), UpperToeplitz([1, 0, 0]))


def test_corner_norm_examples():
    assert abs(tp.corner_norm(1, 1, 7) - GOLDEN) <= 1e-15
    assert abs(tp.corner_norm(0, 3 - 4j, 4) - 5) <= 1e-15
    assert abs(tp.corner_norm(2j, 0, 3) - 2) <= 1e-15
    with pytest.raises(ContractError):
        tp.corner_norm(1, 1, 1)


@pytest.mark.parametrize("n", range(2, 7))
def test_corner_norm_matches_operator_norm(n):
    rng = tp.rng_from(50 + n)
    Snm1 = np.linalg.matrix_power(tp.shift_matrix(n), n - 1)
    for _ in range(50):
        a = complex(rng.standard_normal(), rng.standard_normal())
        b = complex(rng.standard_normal(), rng.standard_normal())
        M = a * np.eye(n) + b * Snm1
        assert abs(tp.corner_norm(a, b, n) - tp.operator_norm(M)) <= 1e-12


def test_filtration_examples():
    n = 5
    assert tp.filtration_index(UpperToeplitz.shift_power(n, 2)) == 2
    assert tp.filtration_index(UpperToeplitz.identity(n) + UpperToeplitz.shift_power(n)) == 0
    assert tp.filtration_index(UpperToeplitz.zero(n)) == n


def test_filtration_multiplicative():
    rng = tp.rng_from(4)
    for _ in range(40):
        n = int(rng.integers(2, 9))
        ra, rb = int(rng.integers(0, n)), int(rng.integers(0, n))
        ca = np.zeros(n, dtype=complex)
        cb = np.zeros(n, dtype=complex)
        ca[ra:] = rng.integers(1, 4, n - ra)
        cb[rb:] = rng.integers(1, 4, n - rb)
        A, B = UpperToeplitz(ca), UpperToeplitz(cb)
        r_ab = tp.filtration_index(A * B)
        assert r_ab >= min(n, ra + rb)
        if ra + rb < n:
            assert r_ab == ra + rb  # leading coefficients positive, no cancellation


def test_commutant_examples():
    n = 4
    A = tp.random_upper_toeplitz(n, tp.rng_from(5))
    chk = tp.in_commutant_of_S(tp.embed(A))
    assert chk.ok and chk.defect == 0
    assert not tp.in_commutant_of_S(tp.shift_matrix(n).conj().T).ok
    assert tp.in_commutant_of_S(np.eye(n)).ok


def test_commutant_iff_toeplitz():
    rng = tp.rng_from(6)
    n = 5
    M = tp.embed(tp.random_upper_toeplitz(n, rng))
    proj = tp.toeplitz_projection(M)
    assert np.linalg.norm(tp.embed(proj) - M) <= 1e-12
    # perturb off the algebra: commutation must fail
    E = np.zeros((n, n), dtype=complex)
    E[2, 0] = 1e-3
    assert not tp.in_commutant_of_S(M + E).ok


def test_full_toeplitz_embedding_and_parts():
    T = ToeplitzFull([5, 4, 1, 2, 3])  # n = 3: diagonals -2, -1, 0, +1, +2
    M = tp.embed_full(T)
    expected = np.array([[1, 2, 3], [4, 1, 2], [5, 4, 1]], dtype=complex)
    assert np.array_equal(M, expected)
    X, Y = T.upper_part(), T.lower_part()
    assert np.allclose(tp.embed(X) + tp.embed(Y).conj().T, M)
    assert ToeplitzFull.from_parts(X, Y) == T


def test_full_toeplitz_rejects_even_diags():
    with pytest.raises(ShapeError):
        ToeplitzFull([1, 2])
