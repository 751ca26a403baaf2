"""Command-line front end: JSON in, a single JSON report out.

Matrices travel as ``{"n": k, "entries": [{"re":…, "im":…} × k²]}`` (row
major); maps as ``{"n": k, "images": [entries × k]}`` with images[k] the value
on the k-th shift power.  Every run prints one report document on stdout::

    {"command": …, "verdict": "ok"|"rejected"|"error", "payload": …,
     "seed": …, "tolerances": {…}}

and exits 0 for ok, 2 for a mathematically valid rejection, 1 for operational
errors (bad JSON, bad dimensions, bad flags).  All randomness is driven by
``--seed``; reports are byte-identical for identical inputs.  Logs go to
stderr only.
"""

import argparse
import json
import sys

import numpy as np

from . import exactpoly, isometry, numrange, sampling
from .errors import ToepisoError
from .linalg import Tol, is_unitary, operator_norm
from .toeplitz import UpperToeplitz

__all__ = ["main"]


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; exit code 2 is reserved for "rejected"
    def error(self, message):
        raise _CliError(message)


def _complex_to_json(z):
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


def _matrix_to_json(M):
    return [_complex_to_json(z) for z in np.asarray(M).ravel()]


def _vector_to_json(v):
    return [_complex_to_json(z) for z in np.asarray(v).ravel()]


def _entries_from_json(obj, n, what):
    if not isinstance(obj, list) or len(obj) != n * n:
        raise _CliError(f"{what}: expected {n * n} entries")
    out = np.empty(n * n, dtype=np.complex128)
    for i, e in enumerate(obj):
        try:
            out[i] = complex(float(e["re"]), float(e["im"]))
        except (TypeError, KeyError, ValueError):
            raise _CliError(f"{what}: entry {i} is not a {{re, im}} pair") from None
    if not np.all(np.isfinite(out)):
        raise _CliError(f"{what}: entries must be finite")
    return out.reshape(n, n)


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise _CliError(
            f"parse error in {path} at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None


def _load_matrix(path):
    obj = _load_json(path)
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise _CliError(f"{path}: expected an object with fields n, entries")
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise _CliError(f"{path}: n must be a positive integer")
    return _entries_from_json(obj["entries"], n, path)


def _load_map(path):
    obj = _load_json(path)
    if not isinstance(obj, dict) or "n" not in obj or "images" not in obj:
        raise _CliError(f"{path}: expected an object with fields n, images")
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise _CliError(f"{path}: n must be a positive integer")
    images = obj["images"]
    if not isinstance(images, list) or len(images) != n:
        raise _CliError(f"{path}: expected {n} images")
    return isometry.LinearMapA(
        [_entries_from_json(im, n, f"{path} image {k}") for k, im in enumerate(images)]
    )


def _map_to_json(phi):
    return {"n": phi.n, "images": [_matrix_to_json(im) for im in phi.images]}


def _add_common(sub):
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--eps-rank", type=float, default=Tol().eps_rank)
    sub.add_argument("--eps-residual", type=float, default=Tol().eps_residual)
    sub.add_argument("--eps-eq", type=float, default=Tol().eps_eq)


def _tol_of(args):
    return Tol(eps_rank=args.eps_rank, eps_residual=args.eps_residual, eps_eq=args.eps_eq)


def _build_parser():
    p = _Parser(prog="toepiso", description=__doc__.splitlines()[0])
    subs = p.add_subparsers(dest="command", required=True)

    s = subs.add_parser("norm", help="operator norm of a matrix")
    s.add_argument("matrix")
    _add_common(s)

    s = subs.add_parser("factor", help="factor a map as A -> U A V or reject")
    s.add_argument("map")
    _add_common(s)

    s = subs.add_parser("verify", help="sampled cross-checks of a map")
    s.add_argument("map")
    s.add_argument("--trials", type=int, default=50)
    _add_common(s)

    s = subs.add_parser("classify-mult", help="classify a multiplicative oracle")
    s.add_argument("--family", required=True, choices=["conj", "sim", "coeff-twist", "a-twist"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, default=2, help="power for coeff-twist")
    s.add_argument("--angle", type=float, default=np.pi, help="phase angle for a-twist")
    s.add_argument("--trials", type=int, default=20)
    _add_common(s)

    s = subs.add_parser("numrange", help="numerical range boundary and radius")
    s.add_argument("matrix")
    s.add_argument("--points", type=int, default=64)
    s.add_argument("--grid", type=int, default=256)
    s.add_argument("--refine-iters", type=int, default=60)
    _add_common(s)

    s = subs.add_parser("resultant-test", help="normalized Gram-resultant statistic")
    s.add_argument("map")
    s.add_argument("--samples", type=int, default=25)
    _add_common(s)

    s = subs.add_parser("claim1", help="exact pure-power census of Gram char coefficients")
    s.add_argument("--n", type=int, required=True)
    _add_common(s)

    s = subs.add_parser("synth", help="generate a random U A V map file")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", default=None)
    _add_common(s)

    return p


def _rejection_payload(rej):
    return {
        "stage": rej.stage,
        "reason": rej.reason,
        "defect": rej.defect,
        "offending": None if rej.offending is None else _matrix_to_json(rej.offending),
    }


def _cmd_norm(args, tol):
    M = _load_matrix(args.matrix)
    return "ok", {"operator_norm": operator_norm(M)}


def _cmd_factor(args, tol):
    phi = _load_map(args.map)
    result = isometry.factor_isometry(phi, tol)
    if isinstance(result, isometry.Rejection):
        return "rejected", _rejection_payload(result)
    # re-validate the certificate before emission
    recomputed = isometry.residual_of(phi, result.U, result.V)
    if abs(recomputed - result.residual) > 1e-12:
        raise _CliError("certificate residual failed re-validation")
    for W in (result.U, result.V):
        if not is_unitary(W, tol).ok:
            raise _CliError("certificate factor failed the unitarity re-check")
    return "ok", {
        "U": _matrix_to_json(result.U),
        "V": _matrix_to_json(result.V),
        "residual": result.residual,
        "phase_normalized": result.phase_normalized,
    }


def _cmd_verify(args, tol):
    phi = _load_map(args.map)
    chain = isometry.nested_chain_check(phi, tol)
    payload = {
        "norm_deviation": isometry.verify_isometry_sampled(phi, args.trials, args.seed),
        "singular_deviation": isometry.singular_preservation_check(phi, args.trials, args.seed),
        "amplified_deviation": {
            "k2": isometry.amplified_isometry_check(phi, 2, args.trials, args.seed),
            "k3": isometry.amplified_isometry_check(phi, 3, args.trials, args.seed),
        },
        "chain": {
            "ranks": list(chain.ranks),
            "kernel_contained": list(chain.kernel_contained),
            "range_contained": list(chain.range_contained),
            "strict": list(chain.strict),
            "all_contained": chain.all_contained,
            "all_strict": chain.all_strict,
        },
    }
    return "ok", payload


def _cmd_classify_mult(args, tol):
    rng = sampling.rng_from(args.seed)
    if args.family == "conj":
        oracle = isometry.conjugation_oracle(args.n)
    elif args.family == "sim":
        oracle = isometry.similarity_oracle(sampling.haar_unitary(args.n, rng), tol)
    elif args.family == "coeff-twist":
        oracle = isometry.coeff_twist_oracle(args.n, args.m)
    else:
        oracle = isometry.a_twist_oracle(args.n, np.exp(1j * args.angle))
    verdict = isometry.classify_multiplicative(oracle, tol, trials=args.trials, seed=args.seed)
    payload = {"kind": verdict.kind}
    if verdict.U is not None:
        payload["U"] = _matrix_to_json(verdict.U)
    if verdict.witness is not None:
        w = verdict.witness
        payload["witness"] = {
            "input_coeffs": _vector_to_json(w.input.coeffs),
            "expected": _matrix_to_json(w.expected),
            "observed": _matrix_to_json(w.observed),
            "defect": w.defect,
            "note": w.note,
        }
    return ("rejected" if verdict.kind == "rejected" else "ok"), payload


def _cmd_numrange(args, tol):
    M = _load_matrix(args.matrix)
    pts = numrange.numerical_range_boundary(M, args.points)
    rep = numrange.numerical_radius(M, grid=args.grid, refine_iters=args.refine_iters)
    return "ok", {
        "boundary": _vector_to_json(pts),
        "radius": rep.radius,
        "attaining_angle": rep.attaining_angle,
        "attaining_vector": _vector_to_json(rep.attaining_vector),
    }


def _cmd_resultant_test(args, tol):
    phi = _load_map(args.map)
    value = exactpoly.resultant_isometry_test(phi, args.samples, args.seed)
    return "ok", {"max_relative_resultant": value, "samples": args.samples}


def _cmd_claim1(args, tol):
    report = exactpoly.pure_power_check(args.n)
    payload = {
        "n": report.n,
        "ok": report.ok,
        "rows": [
            {
                "k": r.k,
                "expected": [list(t) for t in r.expected],
                "found": [list(t) for t in r.found],
                "ok": r.ok,
            }
            for r in report.rows
        ],
    }
    return ("ok" if report.ok else "rejected"), payload


def _cmd_synth(args, tol):
    rng = sampling.rng_from(args.seed)
    U = sampling.haar_unitary(args.n, rng)
    V = sampling.haar_unitary(args.n, rng)
    phi = isometry.synthesize_isometry(U, V, tol)
    mapfile = _map_to_json(phi)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(mapfile, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return "ok", mapfile


_COMMANDS = {
    "norm": _cmd_norm,
    "factor": _cmd_factor,
    "verify": _cmd_verify,
    "classify-mult": _cmd_classify_mult,
    "numrange": _cmd_numrange,
    "resultant-test": _cmd_resultant_test,
    "claim1": _cmd_claim1,
    "synth": _cmd_synth,
}


def _emit(command, verdict, payload, seed, tol):
    report = {
        "command": command,
        "verdict": verdict,
        "payload": payload,
        "seed": seed,
        "tolerances": {
            "eps_rank": tol.eps_rank,
            "eps_residual": tol.eps_residual,
            "eps_eq": tol.eps_eq,
        },
    }
    print(json.dumps(report, indent=2, sort_keys=True))


def main(argv=None):
    parser = _build_parser()
    command = None
    seed = 0
    tol = Tol()
    try:
        args = parser.parse_args(argv)
        command = args.command
        seed = args.seed
        tol = _tol_of(args)
        verdict, payload = _COMMANDS[command](args, tol)
        _emit(command, verdict, payload, seed, tol)
        return 0 if verdict == "ok" else 2
    except (_CliError, ToepisoError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit(command or "toepiso", "error", {"message": str(exc)}, seed, tol)
        return 1


if __name__ == "__main__":
    sys.exit(main())
