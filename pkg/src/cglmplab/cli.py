"""Command-line surface: violation tables, witness scans, noise thresholds,
embedded-CHSH comparison, see-saw optimization, classical bounds.

Exit codes: 0 success, 2 argument error, 3 domain outcome (for example no
violation, hence no threshold), 4 internal numerical failure. Numbers are
printed with 12 significant digits and commands are deterministic given
their flags (and seed), so re-runs produce byte-identical files. Set
CGLMPLAB_THREADS=<n> to parallelize table rows and scan grids.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .bell_functional import cglmp_functional, chsh_functional, lv_bound
from .errors import NoViolationError, NotBlockDiagonalError
from .quantum_model import canonical_settings
from .resistance import (
    NoiseModel,
    chsh_embed_resistance,
    chsh_embed_resistance_numeric,
    compare_measures,
    threshold,
)
from .seesaw import OptimizerConfig, optimize_violation
from .spectra import canonical_operator, max_violation, violation_report
from .tensor_core import max_entangled, schmidt_state
from .witness import scan_decomposition, witness_from, write_scan_csv

THREAD_ENV = "CGLMPLAB_THREADS"


@dataclass
class RunManifest:
    """Record of one CLI run: inputs, written files, timing, version."""

    command: str
    parameters: dict
    outputs: list = field(default_factory=list)
    wall_time_s: float = 0.0
    library_version: str = __version__


def _thread_map():
    """Sequential map, or a thread-pool map when CGLMPLAB_THREADS > 1."""
    try:
        n = int(os.environ.get(THREAD_ENV, "1"))
    except ValueError:
        n = 1
    if n > 1:
        pool = ThreadPoolExecutor(max_workers=n)
        return lambda fn, xs: list(pool.map(fn, xs))
    return lambda fn, xs: list(map(fn, xs))


def _sig12(x: float) -> float:
    return float(f"{x:.12g}")


def _dump_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out_path: str | None, manifest: RunManifest) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        manifest.outputs.append(out_path)
    else:
        sys.stdout.write(text)


def _finish(args, manifest: RunManifest, started: float) -> int:
    manifest.wall_time_s = time.perf_counter() - started
    path = getattr(args, "manifest", None)
    if path:
        params = {
            k: v
            for k, v in vars(args).items()
            if k not in ("func", "manifest") and v is not None
        }
        payload = {
            "command": manifest.command,
            "parameters": params,
            "outputs": manifest.outputs,
            "wall_time_s": manifest.wall_time_s,
            "library_version": manifest.library_version,
        }
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(_dump_json(payload))
    return 0


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


# ---------------------------------------------------------------------------
# subcommands


def cmd_table1(args) -> int:
    started = time.perf_counter()
    if not 3 <= args.d_min <= args.d_max:
        return _fail(f"need 3 <= d-min <= d-max, got ({args.d_min}, {args.d_max})", 2)
    manifest = RunManifest("table1", {})
    rows = _thread_map()(violation_report, range(args.d_min, args.d_max + 1))
    if args.format == "csv":
        lines = ["d,violation_psi,violation_max,difference_percent"]
        lines += [
            f"{r.d},{r.value_max_entangled:.12g},{r.value_operator_max:.12g},"
            f"{r.difference_percent:.12g}"
            for r in rows
        ]
        text = "\n".join(lines) + "\n"
    else:
        text = _dump_json(
            [
                {
                    "d": r.d,
                    "violation_psi": _sig12(r.value_max_entangled),
                    "violation_max": _sig12(r.value_operator_max),
                    "difference_percent": _sig12(r.difference_percent),
                    "gamma": None if r.gamma is None else _sig12(r.gamma),
                }
                for r in rows
            ]
        )
    _emit(text, args.out, manifest)
    return _finish(args, manifest, started)


def cmd_witness_scan(args) -> int:
    started = time.perf_counter()
    if args.d < 2:
        return _fail(f"need d >= 2, got {args.d}", 2)
    if not args.k_min < args.k_max or args.steps < 2:
        return _fail("need k-min < k-max and steps >= 2", 2)
    manifest = RunManifest("witness-scan", {})
    w = witness_from(canonical_operator(args.d), 2.0)
    scan = scan_decomposition(w, args.k_min, args.k_max, args.steps, map_fn=_thread_map())
    write_scan_csv(scan, args.out)
    manifest.outputs.append(args.out)
    if scan.feasible_interval is None:
        print("feasible interval: none")
    else:
        lo, hi = scan.feasible_interval
        print(f"feasible interval: [{lo:.12g}, {hi:.12g}]")
    return _finish(args, manifest, started)


def _parse_state(spec: str, d: int):
    if spec == "psi":
        return max_entangled(d)
    if spec == "mv":
        return max_violation(canonical_operator(d))[1]
    if spec.startswith("schmidt:"):
        coeffs = [float(tok) for tok in spec[len("schmidt:"):].split(",")]
        if len(coeffs) != d:
            raise ValueError(f"schmidt state needs {d} coefficients, got {len(coeffs)}")
        return schmidt_state(coeffs)
    raise ValueError(f"unknown state spec {spec!r}")


def cmd_resistance(args) -> int:
    started = time.perf_counter()
    if args.d < 2:
        return _fail(f"need d >= 2, got {args.d}", 2)
    try:
        phi = _parse_state(args.state, args.d)
    except ValueError as exc:
        return _fail(str(exc), 2)
    manifest = RunManifest("resistance", {})
    f = cglmp_functional(args.d)
    s = canonical_settings(args.d)
    if args.all_models:
        reports = compare_measures(phi, f, s)
    else:
        reports = (threshold(phi, f, s, NoiseModel(args.noise)),)
    payload = {
        "d": args.d,
        "state": args.state,
        "functional": "cglmp",
        "reports": [
            {
                "model": r.model.value,
                "lambda_star": _sig12(r.lambda_star),
                "signal_value": _sig12(r.signal_value),
                "noise_value": _sig12(r.noise_value),
                "clipped": r.clipped,
            }
            for r in reports
        ],
    }
    _emit(_dump_json(payload), args.out, manifest)
    return _finish(args, manifest, started)


def cmd_chsh_embed(args) -> int:
    started = time.perf_counter()
    if args.d_max < 2:
        return _fail(f"need d-max >= 2, got {args.d_max}", 2)
    manifest = RunManifest("chsh-embed", {})
    lines = ["d,closed_form,numeric,abs_difference"]
    for d in range(2, args.d_max + 1):
        cf = chsh_embed_resistance(d)
        nm = chsh_embed_resistance_numeric(d)
        lines.append(f"{d},{cf:.12g},{nm:.12g},{abs(cf - nm):.12g}")
    _emit("\n".join(lines) + "\n", args.out, manifest)
    return _finish(args, manifest, started)


def cmd_optimize(args) -> int:
    started = time.perf_counter()
    if args.d < 2:
        return _fail(f"need d >= 2, got {args.d}", 2)
    if args.restarts < 1:
        return _fail(f"need restarts >= 1, got {args.restarts}", 2)
    manifest = RunManifest("optimize", {})
    f = cglmp_functional(args.d) if args.functional == "cglmp" else chsh_functional(args.d)
    cfg = OptimizerConfig(
        restarts=args.restarts,
        max_iterations=args.max_iterations,
        tolerance=args.tolerance,
        seed=args.seed,
    )
    result = optimize_violation(f, args.d, cfg)

    def cmatrix(m):
        return {
            "real": [[_sig12(x) for x in row] for row in m.real],
            "imag": [[_sig12(x) for x in row] for row in m.imag],
        }

    amps = result.best_state.amplitudes
    payload = {
        "functional": args.functional,
        "d": args.d,
        "restarts": args.restarts,
        "seed": args.seed,
        "best_value": _sig12(result.best_value),
        "iterations_used": result.iterations_used,
        "converged": result.converged,
        "best_state": {
            "real": [_sig12(x) for x in amps.real],
            "imag": [_sig12(x) for x in amps.imag],
        },
        "best_settings": {
            "party_a": [cmatrix(u.entries) for u in result.best_settings.party_a],
            "party_b": [cmatrix(u.entries) for u in result.best_settings.party_b],
        },
    }
    _emit(_dump_json(payload), args.out, manifest)
    return _finish(args, manifest, started)


def cmd_lv_bound(args) -> int:
    started = time.perf_counter()
    if args.d < 2:
        return _fail(f"need d >= 2, got {args.d}", 2)
    manifest = RunManifest("lv-bound", {})
    f = cglmp_functional(args.d) if args.functional == "cglmp" else chsh_functional(args.d)
    bound = lv_bound(f)
    n = f.n_outcomes
    payload = {
        "functional": args.functional,
        "d": args.d,
        "n_outcomes": n,
        "lv_bound": _sig12(bound),
        "claimed_bound": _sig12(f.claimed_lv_bound),
        "strategies_per_party": n ** f.n_settings,
        "joint_strategies": n ** (2 * f.n_settings),
    }
    _emit(_dump_json(payload), args.out, manifest)
    return _finish(args, manifest, started)


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cglmplab",
        description="Numerical laboratory for CGLMP Bell inequalities on two qudits.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(required=True)

    p = sub.add_parser("table1", help="violation table over a range of dimensions")
    p.add_argument("--d-min", type=int, default=3)
    p.add_argument("--d-max", type=int, default=8)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    p.add_argument("--manifest", default=None, help="write a run manifest JSON here")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("witness-scan", help="decomposability scan of the canonical witness")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k-min", type=float, default=0.0)
    p.add_argument("--k-max", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=301)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_witness_scan)

    p = sub.add_parser("resistance", help="noise thresholds for a state at canonical settings")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--state", default="psi", help="psi | mv | schmidt:c1,c2,...")
    p.add_argument("--noise", choices=[m.value for m in NoiseModel], default="white")
    p.add_argument("--all-models", action="store_true")
    p.add_argument("--out", default=None)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_resistance)

    p = sub.add_parser("chsh-embed", help="embedded-CHSH resistance: closed form vs numeric")
    p.add_argument("--d-max", type=int, default=10)
    p.add_argument("--out", default=None)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_chsh_embed)

    p = sub.add_parser("optimize", help="see-saw search for the maximal violation")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--functional", choices=("cglmp", "chsh"), default="cglmp")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iterations", type=int, default=50)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--out", default=None)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("lv-bound", help="classical bound by deterministic enumeration")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--functional", choices=("cglmp", "chsh"), default="cglmp")
    p.add_argument("--out", default=None)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_lv_bound)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoViolationError as exc:
        return _fail(f"no violation: {exc}", 3)
    except NotBlockDiagonalError as exc:
        return _fail(f"numerical failure: {exc}", 4)
    except np.linalg.LinAlgError as exc:
        return _fail(f"numerical failure: {exc}", 4)
    except ValueError as exc:
        return _fail(str(exc), 2)


if __name__ == "__main__":
    sys.exit(main())
