"""Command-line front end.

Every subcommand reads a JSON matrix file ``{"n": int, "rows": [[...], ...]}``
and prints one JSON report to stdout; CSV traces go to files.  Reports are
deterministic given (input, flags, seed), so identical invocations are
byte-identical.  Exit codes: 0 success (including not_Q and undefined
verdicts), 2 parse error, 3 enumeration cap, 4 dimension misuse, 5 internal
numeric failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from . import bench
from .ave import degree, solve_all
from .compare import coincidence_report
from .errors import (
    AveLabError,
    CapExceededError,
    DimensionError,
    NumericError,
    ParseError,
)
from .homotopy import circle_trace, degree_profile, properness_breakpoints, winding_number
from .lcp import ave_to_lcp, p_matrix_check, q_check
from .linalg import DEFAULT_MAX_N, Tolerances
from .signatures import Signature
from .spectrum import aligning_spectrum, is_degenerate, rho_a, rho_sign_real, simplicity

REPORT_SCHEMA = "ave-lab/1"

_TOL_FLAGS = ("residual", "im", "nonneg", "boundary", "dedupe", "sing")


def _plain(obj):
    """Recursively convert results into JSON-serializable plain data."""
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, Signature):
        return str(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return _plain(dataclasses.asdict(obj))
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def load_matrix(path: str) -> np.ndarray:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict) or "n" not in raw or "rows" not in raw:
        raise ParseError(f'{path} must be an object with keys "n" and "rows"')
    n, rows = raw["n"], raw["rows"]
    if not isinstance(n, int) or n < 1:
        raise ParseError(f'"n" must be a positive integer, got {n!r}')
    try:
        M = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"rows are not numeric: {exc}") from exc
    if M.shape != (n, n):
        raise ParseError(f"expected {n}x{n} rows, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ParseError("matrix entries must be finite")
    return M


def _parse_floats(text: str, what: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ParseError(f"cannot parse {what} {text!r}: {exc}") from exc


def _tolerances(args) -> Tolerances:
    kwargs = {}
    for name in _TOL_FLAGS:
        value = getattr(args, f"tol_{name}")
        if value is not None:
            kwargs[f"tol_{name}"] = value
    try:
        return Tolerances(**kwargs)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _max_n(args) -> int:
    if args.max_n > DEFAULT_MAX_N and not args.ack_exponential:
        raise ParseError(
            f"--max-n {args.max_n} exceeds the default cap {DEFAULT_MAX_N}; "
            "pass --ack-exponential to confirm the 2**n cost"
        )
    return args.max_n


def _report(args, inputs: dict, results, warnings: list[str]) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "command": args.command,
        "inputs": _plain(inputs),
        "tolerances": _plain(dataclasses.asdict(_tolerances(args))),
        "seed": args.seed,
        "results": _plain(results),
        "warnings": list(warnings),
    }


def _emit(report: dict) -> int:
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def cmd_spectrum(args) -> int:
    A = load_matrix(args.matrix)
    tol, cap = _tolerances(args), _max_n(args)
    spec = aligning_spectrum(A, tol, max_n=cap)
    results = {
        "rho_a": rho_a(A, tol, max_n=cap),
        "rho_sign_real": rho_sign_real(A, tol, max_n=cap),
        "degenerate": is_degenerate(A, tol, max_n=cap),
        "aligning_spectrum": [
            {
                "value": p.value,
                "signature": str(p.signature),
                "eigvec": p.eigvec,
                "aligning_vector": p.aligning_vector,
                "interior": p.interior,
                "simple_ev": p.simple_ev,
            }
            for p in spec.pairs
        ],
        "simplicity": simplicity(A, tol, max_n=cap),
    }
    return _emit(_report(args, {"matrix": A, "n": A.shape[0]}, results, list(spec.warnings)))


def cmd_solve(args) -> int:
    A = load_matrix(args.matrix)
    tol, cap = _tolerances(args), _max_n(args)
    b = _parse_floats(args.rhs, "--rhs")
    if len(b) != A.shape[0]:
        raise ParseError(f"--rhs needs {A.shape[0]} components, got {len(b)}")
    report = solve_all(A, b, tol, max_n=cap)
    warnings = list(report.warnings)
    if report.continuum_orthants:
        warnings.append(
            "solution continuum detected in orthant(s) "
            + ", ".join(str(s) for s in report.continuum_orthants)
            + "; enumeration is incomplete there"
        )
    results = {
        "solutions": [
            {
                "z": s.z,
                "signatures": [str(x) for x in s.signatures],
                "on_boundary": s.on_boundary,
                "orientation": s.orientation,
            }
            for s in report.solutions
        ],
        "b_regular": report.b_regular,
        "singular_orthants": [str(s) for s in report.singular_orthants],
        "continuum_orthants": [str(s) for s in report.continuum_orthants],
    }
    return _emit(_report(args, {"matrix": A, "n": A.shape[0], "rhs": b}, results, warnings))


def cmd_degree(args) -> int:
    A = load_matrix(args.matrix)
    tol, cap = _tolerances(args), _max_n(args)
    report = degree(A, tol, seed=args.seed, trials=args.trials, max_n=cap)
    return _emit(
        _report(args, {"matrix": A, "n": A.shape[0], "trials": args.trials}, report, [])
    )


def cmd_trace(args) -> int:
    A = load_matrix(args.matrix)
    tol = _tolerances(args)
    if A.shape[0] != 2:
        raise DimensionError(f"trace needs a 2x2 matrix, got n={A.shape[0]}")
    ts = _parse_floats(args.t, "--t")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    entries = []
    for t in ts:
        trace = circle_trace(A, t, m=args.samples, tol=tol)
        path = outdir / f"trace_t{t:g}.csv"
        lines = ["theta,x1,x2,fx1,fx2"]
        for theta, point, image in zip(trace.thetas, trace.points, trace.images):
            lines.append(
                ",".join(repr(float(v)) for v in (theta, point[0], point[1], image[0], image[1]))
            )
        path.write_text("\n".join(lines) + "\n")
        entries.append(
            {
                "t": t,
                "csv": str(path),
                "samples": args.samples,
                "winding": winding_number(trace, tol),
            }
        )
    results = {"traces": entries}
    inputs = {"matrix": A, "n": 2, "t": ts, "samples": args.samples, "out": str(outdir)}
    return _emit(_report(args, inputs, results, []))


def cmd_qcheck(args) -> int:
    tol, cap = _tolerances(args), _max_n(args)
    warnings: list[str] = []
    if args.from_ave:
        if not args.sigma:
            raise ParseError("--from-ave needs --sigma")
        A = load_matrix(args.from_ave)
        try:
            sig = Signature.from_string(args.sigma)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        if sig.n != A.shape[0]:
            raise ParseError(f"--sigma length {sig.n} does not match n={A.shape[0]}")
        inst = ave_to_lcp(A, sig, np.zeros(A.shape[0]), tol)
        M = inst.M
        inputs = {"from_ave": A, "sigma": str(sig), "n": A.shape[0]}
    elif args.matrix:
        M = load_matrix(args.matrix)
        inputs = {"matrix": M, "n": M.shape[0]}
    else:
        raise ParseError("qcheck needs a matrix file or --from-ave/--sigma")
    report = q_check(M, tol, seed=args.seed, samples=args.samples, max_n=cap)
    warnings.extend(report.warnings)
    results = {
        "M": M,
        "verdict": report.verdict,
        "method": report.method,
        "counterexample_q": report.counterexample_q,
        "samples": report.samples,
        "failures": report.failures,
        "p_matrix": p_matrix_check(M, tol, max_n=cap),
    }
    return _emit(_report(args, inputs, results, warnings))


def cmd_compare(args) -> int:
    A = load_matrix(args.matrix)
    tol, cap = _tolerances(args), _max_n(args)
    report = coincidence_report(A, tol, seed=args.seed, restarts=args.restarts, max_n=cap)
    return _emit(_report(args, {"matrix": A, "n": A.shape[0]}, report, []))


def cmd_homotopy(args) -> int:
    A = load_matrix(args.matrix)
    tol, cap = _tolerances(args), _max_n(args)
    bp = properness_breakpoints(A, tol, max_n=cap)
    if args.t:
        ts = _parse_floats(args.t, "--t")
    elif not bp.breakpoints:
        ts = [0.4, 1.0, 2.5]
    else:
        points = list(bp.breakpoints)
        ts = [points[0] / 2.0]
        ts += [0.5 * (a + b) for a, b in zip(points, points[1:])]
        ts.append(2.0 * points[-1])
    profile = degree_profile(A, ts, tol, seed=args.seed, max_n=cap)
    results = {
        "breakpoints": list(bp.breakpoints),
        "has_zero_aligning_value": bp.has_zero_aligning_value,
        "profile": [[t, d] for t, d in profile],
    }
    return _emit(_report(args, {"matrix": A, "n": A.shape[0], "t": ts}, results, []))


def cmd_suite(args) -> int:
    tol = _tolerances(args)
    try:
        results = bench.run_suite(args.name, seed=args.seed, tol=tol)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return _emit(_report(args, {"suite": args.name}, results, []))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42, help="RNG seed (default 42)")
    common.add_argument(
        "--max-n", type=int, default=DEFAULT_MAX_N,
        help="signature enumeration cap; raising it needs --ack-exponential",
    )
    common.add_argument(
        "--ack-exponential", action="store_true",
        help="acknowledge the 2**n cost when raising --max-n",
    )
    for name in _TOL_FLAGS:
        common.add_argument(f"--tol-{name}", type=float, default=None, dest=f"tol_{name}")

    parser = argparse.ArgumentParser(
        prog="ave-lab",
        description="Numerical laboratory for the absolute value equation z - A|z| = b",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="aligning spectrum and both radii")
    p.add_argument("matrix")
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("solve", parents=[common], help="all solutions of z - A|z| = b")
    p.add_argument("matrix")
    p.add_argument("--rhs", required=True, help="comma-separated right-hand side")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("degree", parents=[common], help="mapping degree by preimage counting")
    p.add_argument("matrix")
    p.add_argument("--trials", type=int, default=7)
    p.set_defaults(fn=cmd_degree)

    p = sub.add_parser("trace", parents=[common], help="unit-circle image CSVs (n=2 only)")
    p.add_argument("matrix")
    p.add_argument("--t", required=True, help="comma-separated homotopy parameters")
    p.add_argument("--samples", type=int, default=360)
    p.add_argument("--out", required=True, help="output directory for CSV files")
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("qcheck", parents=[common], help="Q-matrix check")
    p.add_argument("matrix", nargs="?", default=None)
    p.add_argument("--from-ave", default=None, help="matrix file for (I-SA)^-1(I+SA)")
    p.add_argument("--sigma", default=None, help="signature pattern like ++- for --from-ave")
    p.add_argument("--samples", type=int, default=500)
    p.set_defaults(fn=cmd_qcheck)

    p = sub.add_parser("compare", parents=[common], help="radii vs max-min functionals")
    p.add_argument("matrix")
    p.add_argument("--restarts", type=int, default=64)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("homotopy", parents=[common], help="properness breakpoints and degree profile")
    p.add_argument("matrix")
    p.add_argument("--t", default=None, help="comma-separated homotopy parameters")
    p.set_defaults(fn=cmd_homotopy)

    p = sub.add_parser("suite", parents=[common], help="run a property suite")
    p.add_argument("name", choices=bench.SUITE_NAMES)
    p.set_defaults(fn=cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (NumericError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except AveLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
