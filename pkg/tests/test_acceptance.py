"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s``.  Every criterion is
property-based at desk scale with fixed seeds; tolerances are pinned in the
assertions and never recalibrated at runtime.
"""

import numpy as np
import pytest

import toepiso as tp
from toepiso.isometry import FactorCert, Rejection

CORPUS_SEED = 20250809
ROUNDTRIP_COUNT = 200


def _report(num, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"criterion {num:>2} [{name}]: {status}{suffix}")
    assert ok, f"criterion {num} [{name}] failed {suffix}"


def _align_phase(W, W0):
    ip = np.trace(W0.conj().T @ W)
    return ip / abs(ip)


@pytest.fixture(scope="module")
def roundtrip_corpus():
    """200 seeded Haar pairs over n = 2..8, factored once and reused."""
    rng = tp.rng_from(CORPUS_SEED)
    corpus = []
    for i in range(ROUNDTRIP_COUNT):
        n = 2 + i % 7
        U0 = tp.haar_unitary(n, rng)
        V0 = tp.haar_unitary(n, rng)
        phi = tp.synthesize_isometry(U0, V0)
        corpus.append((n, U0, V0, phi, tp.factor_isometry(phi)))
    return corpus


def test_criterion_01_roundtrip(roundtrip_corpus):
    worst_resid = 0.0
    worst_rec = 0.0
    for n, U0, V0, phi, cert in roundtrip_corpus:
        assert isinstance(cert, FactorCert), f"round trip rejected at n={n}"
        ph = _align_phase(cert.U, U0)
        worst_resid = max(worst_resid, cert.residual)
        worst_rec = max(
            worst_rec,
            np.linalg.norm(cert.U - ph * U0),
            np.linalg.norm(cert.V - np.conj(ph) * V0),
        )
    ok = worst_resid <= 1e-8 and worst_rec <= 1e-8
    _report(1, "U A V round trip, 200 Haar pairs, n=2..8", ok,
            f"max residual {worst_resid:.2e}, max recovery error {worst_rec:.2e}")


def test_criterion_02_singular_values(roundtrip_corpus):
    worst = 0.0
    for i, (n, _, _, phi, cert) in enumerate(roundtrip_corpus):
        assert isinstance(cert, FactorCert)
        worst = max(worst, tp.singular_preservation_check(phi, 100, seed=1000 + i))
    _report(2, "singular values preserved by accepted maps", worst <= 1e-9,
            f"max deviation {worst:.2e} over 100 samples x {ROUNDTRIP_COUNT} maps")


def test_criterion_03_detection():
    rng = tp.rng_from(CORPUS_SEED + 1)
    hits = 0
    for trial in range(100):
        n = 2 + trial % 7
        phi = tp.synthesize_isometry(tp.haar_unitary(n, rng), tp.haar_unitary(n, rng))
        images = [im.copy() for im in phi.images]
        j = trial % n
        images[j] = images[j] + 1e-2 * tp.random_direction((n, n), rng)
        res = tp.factor_isometry(tp.LinearMapA(images))
        if isinstance(res, Rejection) or res.residual > 1e-4:
            hits += 1
    _report(3, "1e-2 perturbations detected", hits == 100, f"{hits}/100 trials")


def test_criterion_04_corner_norm():
    golden = (1.0 + np.sqrt(5.0)) / 2.0
    err_golden = abs(tp.corner_norm(1, 1, 5) - golden)
    worst = 0.0
    rng = tp.rng_from(CORPUS_SEED + 2)
    for n in range(2, 11):
        Snm1 = np.linalg.matrix_power(tp.shift_matrix(n), n - 1)
        eye = np.eye(n)
        for _ in range(1000):
            a = complex(rng.standard_normal(), rng.standard_normal())
            b = complex(rng.standard_normal(), rng.standard_normal())
            gap = abs(tp.corner_norm(a, b, n) - tp.operator_norm(a * eye + b * Snm1))
            worst = max(worst, gap)
    ok = worst <= 1e-12 and err_golden <= 1e-12
    _report(4, "closed-form corner norm, 1000 draws x n=2..10", ok,
            f"max |formula - svd| {worst:.2e}, golden-ratio error {err_golden:.2e}")


def test_criterion_05_radius_bound():
    worst = 0.0
    certs_ok = True
    for n in range(2, 13):
        S = tp.shift_matrix(n)
        worst = max(worst, abs(tp.numerical_radius(S).radius - np.cos(np.pi / (n + 1))))
        verdict = tp.hdlh_check(S)
        U = verdict.block_similarity
        good = (
            verdict.attains
            and verdict.order == n
            and U is not None
            and np.linalg.norm(U @ S @ U.conj().T - S) <= 1e-8
        )
        certs_ok = certs_ok and good
    ok = worst <= 1e-6 and certs_ok
    _report(5, "radius of the shift meets cos(pi/(n+1)), n=2..12", ok,
            f"max radius error {worst:.2e}, equality certificates {'ok' if certs_ok else 'BAD'}")


def test_criterion_06_transpose_map():
    worst_resid = 0.0
    worst_pair = 0.0
    worst_amp = 0.0
    for n in range(2, 9):
        J = np.fliplr(np.eye(n))
        phi = tp.LinearMapA.transpose_map(n)
        cert = tp.factor_isometry(phi)
        assert isinstance(cert, FactorCert), f"transpose map rejected at n={n}"
        ph = _align_phase(cert.U, J)
        worst_resid = max(worst_resid, cert.residual)
        worst_pair = max(
            worst_pair,
            np.linalg.norm(cert.U - ph * J),
            np.linalg.norm(cert.V - np.conj(ph) * J),
        )
        for k in (2, 3):
            worst_amp = max(worst_amp, tp.amplified_isometry_check(phi, k, 25, seed=50 + n))
    ok = worst_resid <= 1e-10 and worst_pair <= 1e-10 and worst_amp <= 1e-8
    _report(6, "transpose map factors as (J, J), completely isometric", ok,
            f"residual {worst_resid:.2e}, factor error {worst_pair:.2e}, amplified {worst_amp:.2e}")


def test_criterion_07_homomorphism(roundtrip_corpus):
    worst = 0.0
    for i, (n, _, _, phi, cert) in enumerate(roundtrip_corpus):
        assert isinstance(cert, FactorCert)
        W0 = phi.images[0]
        unital = tp.LinearMapA([im @ W0.conj().T for im in phi.images])
        worst = max(worst, tp.homomorphism_check(unital, 50, seed=2000 + i))
    _report(7, "unitalized accepted maps are homomorphisms", worst <= 1e-9,
            f"max multiplicativity defect {worst:.2e} over 50 pairs x {ROUNDTRIP_COUNT} maps")


def test_criterion_08_nested_chains(roundtrip_corpus):
    all_ok = True
    for n, _, _, phi, cert in roundtrip_corpus:
        assert isinstance(cert, FactorCert)
        rep = tp.nested_chain_check(phi)
        all_ok = all_ok and rep.all_contained and rep.all_strict
    _report(8, "kernel/range chains nested and strict", all_ok)


def test_criterion_09_symbolic_claim():
    census_ok = all(tp.pure_power_check(n).ok for n in (2, 3, 4))
    exact_ok = True
    float_gap = 0.0
    rng = tp.rng_from(CORPUS_SEED + 3)
    for n in (2, 3, 4):
        rs = tp.sym_char_coeffs(n)
        for _ in range(20):
            pt = [int(v) for v in rng.integers(-3, 4, n)]
            A = tp.embed(tp.UpperToeplitz([float(v) for v in pt]))
            numeric = list(tp.char_gram_poly(A).coeffs)
            numeric += [0.0] * (n + 1 - len(numeric))
            for k in range(n + 1):
                exact = rs[k].evaluate(pt)
                exact_ok = exact_ok and exact.denominator == 1
                float_gap = max(float_gap, abs(numeric[k] - float(exact)))
                exact_ok = exact_ok and (round(numeric[k]) == exact)
    ok = census_ok and exact_ok
    _report(9, "pure-power census exact for n=2..4; symbolic = numeric at 20 points", ok,
            f"census {'ok' if census_ok else 'BAD'}, rationalized match "
            f"{'exact' if exact_ok else 'BAD'}, float gap {float_gap:.2e}")


def test_criterion_10_resultant_separation():
    accepted_worst = 0.0
    doubling_best = np.inf
    rng = tp.rng_from(CORPUS_SEED + 4)
    for n in range(2, 6):
        phi = tp.synthesize_isometry(tp.haar_unitary(n, rng), tp.haar_unitary(n, rng))
        accepted_worst = max(accepted_worst, tp.resultant_isometry_test(phi, 25, seed=300 + n))
        doubled = tp.LinearMapA(
            [2 * im for im in tp.LinearMapA.identity(n).images]
        )
        doubling_best = min(doubling_best, tp.resultant_isometry_test(doubled, 25, seed=400 + n))
    ok = accepted_worst <= 1e-6 and doubling_best >= 1e-2
    _report(10, "resultant statistic separates isometries from the doubling map", ok,
            f"accepted max {accepted_worst:.2e} <= 1e-6, doubling min {doubling_best:.2e} >= 1e-2")


def test_criterion_11_multiplicative_classifier():
    conj_ok = True
    sim_ok = True
    rng = tp.rng_from(CORPUS_SEED + 5)
    for n in (2, 4, 6):
        res = tp.classify_multiplicative(tp.conjugation_oracle(n), seed=7)
        ph = _align_phase(res.U, np.eye(n)) if res.U is not None else 1.0
        conj_ok = conj_ok and res.kind == "conjugate_similarity"
        conj_ok = conj_ok and np.linalg.norm(res.U - ph * np.eye(n)) <= 1e-8

        U0 = tp.haar_unitary(n, rng)
        res = tp.classify_multiplicative(tp.similarity_oracle(U0), seed=7)
        sim_ok = sim_ok and res.kind == "linear_similarity"
        if res.U is not None:
            ph = _align_phase(res.U, U0)
            sim_ok = sim_ok and np.linalg.norm(res.U - ph * U0) <= 1e-8
        else:
            sim_ok = False

    oracle = tp.coeff_twist_oracle(4, 2)
    res = tp.classify_multiplicative(oracle, seed=7)
    path_ok = res.kind == "rejected" and res.witness is not None
    if path_ok:
        w = res.witness
        again = oracle.eval(w.input)
        path_ok = np.array_equal(again, w.observed)
        path_ok = path_ok and np.linalg.norm(w.observed - w.expected) > 1e-6
    ok = conj_ok and sim_ok and path_ok
    _report(11, "classifier: conjugation, Haar similarity, square-twist rejection", ok,
            f"conj {'ok' if conj_ok else 'BAD'}, similarity {'ok' if sim_ok else 'BAD'}, "
            f"pathological witness {'verified' if path_ok else 'BAD'}")


def test_criterion_12_system_maps():
    rng = tp.rng_from(CORPUS_SEED + 6)
    worst = 0.0
    rejects_ok = True
    for i in range(50):
        n = 2 + i % 7
        U0 = tp.haar_unitary(n, rng)
        V0 = tp.haar_unitary(n, rng)
        sysmap = tp.synthesize_system_isometry(U0, V0)
        cert = tp.factor_system_isometry(sysmap)
        assert isinstance(cert, FactorCert), f"system round trip rejected at n={n}"
        worst = max(worst, cert.residual)
        if i % 7 == 0 and n >= 2:
            lower = [im.copy() for im in sysmap.lower_images]
            lower[0] = np.zeros((n, n))
            rej = tp.factor_system_isometry(tp.SystemMapT(sysmap.upper_images, lower))
            rejects_ok = rejects_ok and isinstance(rej, Rejection) and rej.stage == 7
    ok = worst <= 1e-8 and rejects_ok
    _report(12, "system maps round trip; adjoint-inconsistent maps rejected", ok,
            f"max residual {worst:.2e}, rejections {'ok' if rejects_ok else 'BAD'}")
