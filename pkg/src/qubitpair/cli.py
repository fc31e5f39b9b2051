"""Command-line interface.

Subcommands:
    steady       stationary density matrix at one (alpha, J, lambda) point
    evolve       closed-system marker/concurrence traces, or open-system propagation
    concurrence  stationary concurrence at one parameter point
    scan         (alpha, J) grid scan of C0, Cfb, lambda_opt, delta
    validate     run the built-in validation suite

Exit codes: 0 success, 2 usage or configuration error, 3 numerical failure
(degenerate steady state, tolerance breach).  Artifacts are deterministic:
identical configuration produces byte-identical output.  Values are written
with 12 significant digits, enough to round-trip every documented tolerance.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from .concurrence import concurrence, concurrence_pure
from .errors import ContractViolationError, DomainError, NumericsError
from .hamiltonian import (
    ModelParams,
    evolve_closed,
    marker_variance,
    marker_variance_numeric,
)
from .lindblad import analytic_steady_state, liouvillian_fb, propagate, steady_state
from .optimize import OptimizationConfig, scan_grid
from .validation import run_checks

USAGE_ERROR = 2
NUMERICAL_ERROR = 3

SCAN_HEADER = ["alpha", "J", "C0", "Cfb", "lambda_opt", "delta"]

_DEFAULTS = {
    "alpha": 0.0,
    "J": 0.0,
    "lam": 0.0,
    "tau": 3.0,
    "t_final": 10.0,
    "dt": 0.01,
    "samples": 200,
    "mode": "closed",
    "format": "csv",
    "alpha_range": "0.05:2:40",
    "J_range": "0.05:5:40",
    "lambda_bounds": "-8:8",
    "coarse_points": 161,
    "refine_tol": 1e-6,
    "jobs": 0,
    "analytic": False,
    "output": None,
}

_FLOAT_KEYS = {"alpha", "J", "lam", "tau", "t_final", "dt", "refine_tol"}
_INT_KEYS = {"samples", "coarse_points", "jobs"}
_BOOL_KEYS = {"analytic"}


class ConfigError(ValueError):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _parse_range(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"range must look like MIN:MAX:N, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad range {text!r}: {exc}") from None
    if count < 1:
        raise ConfigError(f"range count must be >= 1, got {count}")
    if lo > hi:
        raise ConfigError(f"range min {lo} exceeds max {hi}")
    return np.linspace(lo, hi, count)


def _parse_bounds(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigError(f"bounds must look like MIN:MAX, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ConfigError(f"bad bounds {text!r}: {exc}") from None
    return lo, hi


def _load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
                key, value = line.split("=", 1)
                values[key.strip()] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return values


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset options from the config file, then from built-in defaults."""
    file_values = _load_config_file(args.config) if getattr(args, "config", None) else {}
    alias = {"lambda": "lam"}
    for raw_key, raw_value in file_values.items():
        key = alias.get(raw_key, raw_key).replace("-", "_")
        if key not in _DEFAULTS:
            raise ConfigError(f"unknown config key {raw_key!r}")
        if getattr(args, key, None) is not None:
            continue  # explicit flags win
        if key in _FLOAT_KEYS:
            setattr(args, key, float(raw_value))
        elif key in _INT_KEYS:
            setattr(args, key, int(raw_value))
        elif key in _BOOL_KEYS:
            setattr(args, key, raw_value.lower() in ("1", "true", "yes", "on"))
        else:
            setattr(args, key, raw_value)
    for key, default in _DEFAULTS.items():
        if getattr(args, key, None) is None:
            setattr(args, key, default)
    if args.format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {args.format!r}")
    return args


def _write_artifact(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _csv_lines(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _matrix_fields(matrix: np.ndarray) -> dict[str, list[list[float]]]:
    return {
        "re": [[float(x) for x in row] for row in matrix.real],
        "im": [[float(x) for x in row] for row in matrix.imag],
    }


def cmd_steady(args: argparse.Namespace) -> int:
    p = ModelParams(alpha=args.alpha, J=args.J, lam=args.lam)
    if args.analytic and p.lam != 0.0:
        raise ConfigError("--analytic compares against the no-feedback closed form; use lambda = 0")
    rho = steady_state(liouvillian_fb(p))

    if args.format == "json":
        payload: dict = {
            "alpha": p.alpha,
            "J": p.J,
            "lambda": p.lam,
            "steady": _matrix_fields(rho),
        }
        if args.analytic:
            reference = analytic_steady_state(p)
            payload["analytic"] = _matrix_fields(reference)
            payload["max_deviation"] = float(np.abs(rho - reference).max())
        _write_artifact(json.dumps(payload, indent=2) + "\n", args.output)
        return 0

    rows = []
    for i in range(4):
        for j in range(4):
            rows.append(["steady", str(i), str(j), _fmt(rho[i, j].real), _fmt(rho[i, j].imag)])
    if args.analytic:
        reference = analytic_steady_state(p)
        for i in range(4):
            for j in range(4):
                rows.append(
                    ["analytic", str(i), str(j), _fmt(reference[i, j].real), _fmt(reference[i, j].imag)]
                )
        rows.append(["deviation", "0", "0", _fmt(np.abs(rho - reference).max()), "0"])
    _write_artifact(_csv_lines(["matrix", "row", "col", "re", "im"], rows), args.output)
    return 0


def cmd_concurrence(args: argparse.Namespace) -> int:
    p = ModelParams(alpha=args.alpha, J=args.J, lam=args.lam)
    result = concurrence(steady_state(liouvillian_fb(p)))
    if args.format == "json":
        payload = {
            "alpha": p.alpha,
            "J": p.J,
            "lambda": p.lam,
            "concurrence": result.value,
            "xi": [float(x) for x in result.xi],
        }
        _write_artifact(json.dumps(payload, indent=2) + "\n", args.output)
        return 0
    rows = [[_fmt(p.alpha), _fmt(p.J), _fmt(p.lam), _fmt(result.value)]]
    _write_artifact(_csv_lines(["alpha", "J", "lambda", "concurrence"], rows), args.output)
    return 0


def cmd_evolve(args: argparse.Namespace) -> int:
    if args.mode not in ("closed", "open"):
        raise ConfigError(f"mode must be closed or open, got {args.mode!r}")
    p = ModelParams(alpha=args.alpha, J=args.J, lam=args.lam)

    if args.mode == "closed":
        if p.J <= 0.0 or p.alpha == 0.0:
            raise DomainError(
                "closed-mode evolution needs J > 0 and alpha != 0 (the closed forms are "
                "singular at eta = 0)"
            )
        taus = np.linspace(0.0, args.tau, args.samples)
        records = []
        for tau in taus:
            psi = evolve_closed(p, tau)
            records.append(
                {
                    "tau": float(tau),
                    "variance_analytic": marker_variance(p, tau),
                    "variance_numeric": marker_variance_numeric(p, tau),
                    "concurrence": concurrence_pure(psi),
                }
            )
        header = ["tau", "variance_analytic", "variance_numeric", "concurrence"]
    else:
        generator = liouvillian_fb(p)
        rho = np.zeros((4, 4), dtype=complex)
        rho[3, 3] = 1.0  # start from the ground pair
        times = np.linspace(0.0, args.t_final, args.samples)
        records = []
        previous = 0.0
        for t in times:
            if t > previous:
                rho = propagate(rho, generator, t - previous, args.dt)
                previous = t
            records.append(
                {
                    "t": float(t),
                    "trace": float(np.trace(rho).real),
                    "min_eigenvalue": float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min()),
                    "concurrence": concurrence(rho).value,
                }
            )
        header = ["t", "trace", "min_eigenvalue", "concurrence"]

    if args.format == "json":
        _write_artifact(json.dumps(records, indent=2) + "\n", args.output)
    else:
        rows = [[_fmt(record[key]) for key in header] for record in records]
        _write_artifact(_csv_lines(header, rows), args.output)
    return 0


def cmd_scan(args: argparse.Namespace) -> int:
    alphas = _parse_range(args.alpha_range)
    Js = _parse_range(args.J_range)
    lo, hi = _parse_bounds(args.lambda_bounds)
    cfg = OptimizationConfig(
        lambda_min=lo,
        lambda_max=hi,
        coarse_points=args.coarse_points,
        refine_tol=args.refine_tol,
    )
    workers = args.jobs if args.jobs > 0 else None
    records = scan_grid(alphas, Js, cfg, workers=workers)

    failed = [r for r in records if r.error is not None]
    with_error_column = bool(failed)
    header = SCAN_HEADER + (["error"] if with_error_column else [])

    if args.format == "json":
        payload = []
        for r in records:
            item = {
                "alpha": r.alpha,
                "J": r.J,
                "C0": r.C0,
                "Cfb": r.Cfb,
                "lambda_opt": r.lambda_opt,
                "delta": r.delta,
            }
            if with_error_column:
                item["error"] = r.error or ""
            payload.append(item)
        _write_artifact(json.dumps(payload, indent=2) + "\n", args.output)
    else:
        rows = []
        for r in records:
            row = [_fmt(r.alpha), _fmt(r.J), _fmt(r.C0), _fmt(r.Cfb), _fmt(r.lambda_opt), _fmt(r.delta)]
            if with_error_column:
                message = (r.error or "").replace('"', "'")
                row.append(f'"{message}"' if "," in message else message)
            rows.append(row)
        _write_artifact(_csv_lines(header, rows), args.output)

    if failed:
        print(f"scan: {len(failed)} of {len(records)} points failed", file=sys.stderr)
        return NUMERICAL_ERROR
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    results = run_checks()
    width = max(len(r.name) for r in results)
    all_passed = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        all_passed &= r.passed
        print(f"{r.name:<{width}}  deviation {r.deviation:.3e}  threshold {r.threshold:.1e}  {status}")
    print(f"{'all checks passed' if all_passed else 'VALIDATION FAILED'} ({len(results)} checks)")
    return 0 if all_passed else NUMERICAL_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubitpair",
        description=(
            "Steady states, concurrence, and feedback-optimized entanglement for a "
            "driven, dissipative pair of two-level atoms."
        ),
        epilog="Exit codes: 0 success, 2 usage/config error, 3 numerical failure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp: argparse.ArgumentParser, *, point: bool) -> None:
        if point:
            sp.add_argument("--alpha", type=float, default=None, help="driving strength")
            sp.add_argument("--J", type=float, default=None, help="zz coupling strength")
            sp.add_argument("--lambda", dest="lam", type=float, default=None, help="feedback strength")
        sp.add_argument("--output", default=None, help="artifact path (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        sp.add_argument("--config", default=None, help="flat key=value config file; flags win")

    sp = sub.add_parser("steady", help="stationary density matrix at one parameter point")
    add_common(sp, point=True)
    sp.add_argument(
        "--analytic",
        action="store_const",
        const=True,
        default=None,
        help="also write the closed-form no-feedback steady state and the max deviation",
    )
    sp.set_defaults(handler=cmd_steady)

    sp = sub.add_parser("concurrence", help="stationary concurrence at one parameter point")
    add_common(sp, point=True)
    sp.set_defaults(handler=cmd_concurrence)

    sp = sub.add_parser("evolve", help="time evolution traces")
    add_common(sp, point=True)
    sp.add_argument("--mode", choices=("closed", "open"), default=None)
    sp.add_argument("--tau", type=float, default=None, help="closed mode: final scaled time J*t")
    sp.add_argument("--t-final", dest="t_final", type=float, default=None, help="open mode: final time")
    sp.add_argument("--dt", type=float, default=None, help="open mode: integrator step")
    sp.add_argument("--samples", type=int, default=None, help="number of output rows")
    sp.set_defaults(handler=cmd_evolve)

    sp = sub.add_parser("scan", help="grid scan of C0, Cfb, lambda_opt, delta")
    sp.add_argument("--alpha-range", dest="alpha_range", default=None, help="MIN:MAX:N")
    sp.add_argument("--J-range", dest="J_range", default=None, help="MIN:MAX:N")
    sp.add_argument("--lambda-bounds", dest="lambda_bounds", default=None, help="MIN:MAX")
    sp.add_argument("--coarse-points", dest="coarse_points", type=int, default=None)
    sp.add_argument("--refine-tol", dest="refine_tol", type=float, default=None)
    sp.add_argument("--jobs", type=int, default=None, help="worker processes (0 = all CPUs)")
    add_common(sp, point=False)
    sp.set_defaults(handler=cmd_scan)

    sp = sub.add_parser("validate", help="run the built-in validation suite")
    add_common(sp, point=False)
    sp.set_defaults(handler=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _resolve(args)
        return args.handler(args)
    except (ConfigError, ContractViolationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except NumericsError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
