"""Command-line front end: norm computation and inclusion/equivalence checks.

Machine-readable JSON on stdout (stable key order, byte-identical across
reruns and thread counts); errors as {"error": ...} on stderr.

Exit codes: 0 success / all checks passed, 1 parameter function failed the
admissibility check, 2 invalid flags or parameters, 3 a requested check
failed (verdict still emitted).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

import numpy as np

from .core import Exponents, Sequence, lp_norm
from .inclusion import (
    characteristic_bounds_check,
    equivalence_test,
    make_characteristic,
    power_decay_sequence,
    strict_inclusion_example,
    weak_example_check,
)
from .norms import (
    gen_morrey_norm,
    gen_weak_norm,
    morrey_norm,
    quasi_triangle_check,
    weak_morrey_norm,
)
from .phi import GpMembershipError, HorizonExceededError, PhiFunction, phi_from_json

MAX_HALF_LENGTH = 10**7


class ParameterError(ValueError):
    """Invalid CLI parameters (exit code 2)."""


def _emit(obj, pretty: bool) -> None:
    if pretty:
        print(json.dumps(obj, sort_keys=True, indent=2))
    else:
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _fail(message: str, code: int) -> int:
    print(json.dumps({"error": message}), file=sys.stderr)
    return code


def load_sequence_file(path: str) -> Sequence:
    """Parse a sequence description file (explicit / power_decay / indicator)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParameterError(f"cannot read sequence file {path}: {exc}") from exc
    return sequence_from_dict(doc)


def sequence_from_dict(doc: dict) -> Sequence:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParameterError('sequence file must be a JSON object with a "kind" field')
    kind = doc["kind"]
    try:
        if kind == "explicit":
            vals = doc["values"]
            if not isinstance(vals, list):
                raise ParameterError('"values" must be a list')
            arr = [float(v) for v in vals]
            if not all(np.isfinite(arr)):
                raise ParameterError("explicit values must be finite reals")
            return Sequence.of(arr, offset=int(doc.get("offset", 0)))
        if kind == "power_decay":
            half_length = int(doc["half_length"])
            if half_length < 0:
                raise ParameterError("half_length must be >= 0")
            if half_length > MAX_HALF_LENGTH:
                raise ParameterError(f"half_length capped at {MAX_HALF_LENGTH}")
            exponent = float(doc["exponent"])
            if exponent <= 0:
                raise ParameterError("exponent must be > 0")
            return power_decay_sequence(exponent, half_length)
        if kind == "indicator":
            n0 = int(doc["N0"])
            if n0 < 0:
                raise ParameterError("N0 must be >= 0")
            return make_characteristic(int(doc["m0"]), n0)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"bad sequence file: {exc}") from exc
    raise ParameterError(f"unknown sequence kind {kind!r}")


def parse_phi_spec(spec: str) -> PhiFunction:
    """power:Q | logpert:Q:B | file:PATH"""
    try:
        if spec.startswith("power:"):
            return PhiFunction.power(float(spec.split(":", 1)[1]))
        if spec.startswith("logpert:"):
            _, q, beta = spec.split(":")
            return PhiFunction.log_perturbed(float(q), float(beta))
        if spec.startswith("file:"):
            path = spec.split(":", 1)[1]
            with open(path, "r", encoding="utf-8") as fh:
                return phi_from_json(fh.read())
    except ParameterError:
        raise
    except (OSError, ValueError) as exc:
        raise ParameterError(f"bad phi spec {spec!r}: {exc}") from exc
    raise ParameterError(f"unknown phi spec {spec!r} (expected power:Q | logpert:Q:B | file:PATH)")


def _resolve_threads(args) -> int:
    threads = args.threads
    if threads is None:
        env = os.environ.get("MORREY_THREADS")
        threads = int(env) if env else 1
    if threads < 1:
        raise ParameterError(f"--threads must be >= 1, got {threads}")
    return threads


def _random_family(count: int, seed: int) -> list[Sequence]:
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        length = int(rng.integers(1, 65))
        offset = int(rng.integers(-32, 33))
        if i % 2 == 0:
            vals = rng.choice([-1.0, 1.0], size=length)
        else:
            vals = rng.standard_cauchy(size=length)
            peak = np.max(np.abs(vals))
            if peak > 0:
                vals = vals / peak
        out.append(Sequence.of(vals, offset=offset))
    return out


def cmd_norm(args) -> int:
    threads = _resolve_threads(args)
    x = load_sequence_file(args.input)
    p = args.p
    if p is None or p < 1:
        raise ParameterError("--p must be given and >= 1")
    if args.norm in ("lpq", "wlpq"):
        if args.q is None:
            raise ParameterError(f"--q is required for --norm {args.norm}")
        if not (p <= args.q):
            raise ParameterError(f"need p <= q, got p={p}, q={args.q}")
        e = Exponents(p, args.q)
        report = (
            morrey_norm(x, e, threads=threads)
            if args.norm == "lpq"
            else weak_morrey_norm(x, e, threads=threads)
        )
    else:
        if args.phi is None:
            raise ParameterError(f"--phi is required for --norm {args.norm}")
        phi = parse_phi_spec(args.phi)
        report = (
            gen_morrey_norm(x, p, phi, threads=threads)
            if args.norm == "lp-phi"
            else gen_weak_norm(x, p, phi, threads=threads)
        )
    _emit(report.to_dict(), args.pretty)
    return 0


_RTOL = 1e-9


def _check_lp_subset(args) -> tuple[bool, dict]:
    e = Exponents(args.p, args.q)
    results = []
    for i, x in enumerate(_random_family(args.count, args.seed)):
        lhs = morrey_norm(x, e).value
        rhs = lp_norm(x, e.p)
        results.append({"index": i, "morrey": lhs, "lp": rhs, "ok": lhs <= rhs * (1 + _RTOL)})
    return all(r["ok"] for r in results), {"cases": results}


def _check_p_mono(args, weak: bool) -> tuple[bool, dict]:
    if args.p1 > args.p2:
        raise ParameterError("need p1 <= p2")
    e1 = Exponents(args.p1, args.q)
    e2 = Exponents(args.p2, args.q)
    fn = weak_morrey_norm if weak else morrey_norm
    results = []
    for i, x in enumerate(_random_family(args.count, args.seed)):
        lo = fn(x, e1).value
        hi = fn(x, e2).value
        results.append({"index": i, "lower_p": lo, "higher_p": hi, "ok": lo <= hi * (1 + _RTOL)})
    return all(r["ok"] for r in results), {"cases": results}


def _check_strong_weak(args) -> tuple[bool, dict]:
    e = Exponents(args.p, args.q)
    results = []
    for i, x in enumerate(_random_family(args.count, args.seed)):
        weak = weak_morrey_norm(x, e).value
        strong = morrey_norm(x, e).value
        results.append({"index": i, "weak": weak, "strong": strong, "ok": weak <= strong * (1 + _RTOL)})
    return all(r["ok"] for r in results), {"cases": results}


def _check_char_bounds(args) -> tuple[bool, dict]:
    phi = parse_phi_spec(args.phi)
    results = []
    for m0 in (-5, 0, 5):
        for n0 in range(args.n0_max + 1):
            for weak in (False, True):
                cb = characteristic_bounds_check(
                    phi, args.p, m0, n0, weak=weak, horizon=args.horizon
                )
                results.append(
                    {
                        "m0": m0,
                        "N0": n0,
                        "weak": weak,
                        "lower": cb.lower,
                        "value": cb.value,
                        "upper": cb.upper,
                        "ok": cb.ok,
                    }
                )
    return all(r["ok"] for r in results), {"cases": results}


def _check_strict_example(args) -> tuple[bool, dict]:
    if not (1 <= args.p < args.q):
        raise ParameterError("need 1 <= p < q")
    if args.half_length > MAX_HALF_LENGTH:
        raise ParameterError(f"half_length capped at {MAX_HALF_LENGTH}")
    ex = strict_inclusion_example(args.p, args.q, args.half_length)
    ok = ex.morrey_report.value <= ex.morrey_bound * (1 + _RTOL)
    return ok, {
        "morrey_norm": ex.morrey_report.value,
        "bound": ex.morrey_bound,
        "lp_partial_sum": ex.lp_partial_sum,
        "ok": ok,
    }


def _check_weak_example(args) -> tuple[bool, dict]:
    if args.half_length > MAX_HALF_LENGTH:
        raise ParameterError(f"half_length capped at {MAX_HALF_LENGTH}")
    res = weak_example_check(args.p, args.half_length)
    return res.ok, {"value": res.value, "bound": 3.0, "ok": res.ok}


def _check_quasi_triangle(args) -> tuple[bool, dict]:
    e = Exponents(args.p, args.q)
    family = _random_family(2 * args.count, args.seed)
    results = []
    for i in range(args.count):
        x, y = family[2 * i], family[2 * i + 1]
        r = quasi_triangle_check(x, y, e)
        results.append({"index": i, "lhs": r.lhs, "rhs": r.rhs, "ok": r.ok})
    return all(r["ok"] for r in results), {"cases": results}


def cmd_check_inclusion(args) -> int:
    which = args.which
    if which == "lp-subset":
        passed, detail = _check_lp_subset(args)
    elif which == "p-mono":
        passed, detail = _check_p_mono(args, weak=False)
    elif which == "weak-mono":
        passed, detail = _check_p_mono(args, weak=True)
    elif which == "strong-weak":
        passed, detail = _check_strong_weak(args)
    elif which == "char-bounds":
        passed, detail = _check_char_bounds(args)
    elif which == "strict-example":
        passed, detail = _check_strict_example(args)
    elif which == "weak-example":
        passed, detail = _check_weak_example(args)
    elif which == "quasi-triangle":
        passed, detail = _check_quasi_triangle(args)
    else:  # pragma: no cover - argparse choices guard this
        raise ParameterError(f"unknown check {which!r}")
    _emit({"which": which, "passed": passed, **detail}, args.pretty)
    return 0 if passed else 3


def cmd_check_equivalence(args) -> int:
    if args.p1 > args.p2:
        raise ParameterError("need p1 <= p2")
    phi1 = parse_phi_spec(args.phi1)
    phi2 = parse_phi_spec(args.phi2)
    verdict = equivalence_test(args.p1, phi1, args.p2, phi2, t_max=args.horizon)
    passed = verdict.consistent and verdict.dominates
    _emit({"passed": passed, **verdict.to_dict()}, args.pretty)
    return 0 if passed else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morrey", description="Window-supremum sequence norms and inclusion checks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("norm", help="compute a norm of a sequence file")
    p_norm.add_argument("--input", required=True, help="sequence description JSON file")
    p_norm.add_argument("--norm", required=True, choices=["lpq", "wlpq", "lp-phi", "wlp-phi"])
    p_norm.add_argument("--p", type=float, required=True)
    p_norm.add_argument("--q", type=float)
    p_norm.add_argument("--phi", help="power:Q | logpert:Q:B | file:PATH")
    p_norm.add_argument("--pretty", action="store_true")
    p_norm.add_argument("--threads", type=int, default=None)
    p_norm.set_defaults(func=cmd_norm)

    p_check = sub.add_parser("check", help="run an inclusion or equivalence check")
    check_sub = p_check.add_subparsers(dest="check_command", required=True)

    p_inc = check_sub.add_parser("inclusion")
    p_inc.add_argument(
        "--which",
        required=True,
        choices=[
            "lp-subset",
            "p-mono",
            "weak-mono",
            "strong-weak",
            "char-bounds",
            "strict-example",
            "weak-example",
            "quasi-triangle",
        ],
    )
    p_inc.add_argument("--p", type=float, default=1.0)
    p_inc.add_argument("--q", type=float, default=2.0)
    p_inc.add_argument("--p1", type=float, default=1.0)
    p_inc.add_argument("--p2", type=float, default=2.0)
    p_inc.add_argument("--phi", help="power:Q | logpert:Q:B | file:PATH")
    p_inc.add_argument("--half-length", type=int, default=10_000)
    p_inc.add_argument("--n0-max", type=int, default=20)
    p_inc.add_argument("--horizon", type=int, default=201)
    p_inc.add_argument("--count", type=int, default=50)
    p_inc.add_argument("--seed", type=int, default=20230317)
    p_inc.add_argument("--pretty", action="store_true")
    p_inc.add_argument("--threads", type=int, default=None)
    p_inc.set_defaults(func=cmd_check_inclusion)

    p_eq = check_sub.add_parser("equivalence")
    p_eq.add_argument("--p1", type=float, required=True)
    p_eq.add_argument("--phi1", required=True)
    p_eq.add_argument("--p2", type=float, required=True)
    p_eq.add_argument("--phi2", required=True)
    p_eq.add_argument("--horizon", type=int, default=201)
    p_eq.add_argument("--pretty", action="store_true")
    p_eq.add_argument("--threads", type=int, default=None)
    p_eq.set_defaults(func=cmd_check_equivalence)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GpMembershipError as exc:
        return _fail(str(exc), 1)
    except (ParameterError, HorizonExceededError, ValueError) as exc:
        return _fail(str(exc), 2)


if __name__ == "__main__":
    sys.exit(main())
