"""Command-line front end.

Subcommands: ``analytic`` (closed-form constants), ``table`` (quadrature
tables over ensemble sizes), ``simulate`` (Monte Carlo runs), ``density``
(density dumps for plotting) and ``validate`` (self-check suite).  Exit
codes: 0 success, 1 failed check or runtime failure, 2 usage error.

Output precision is 12 significant digits for analytic/quadrature values
and 6 for Monte Carlo (anything past the standard error is noise).  CSV
is RFC 4180 (CRLF, UTF-8, ``.`` decimal point); every file output embeds
or sits next to a manifest that fully determines re-execution, and
``--manifest`` replays one.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from datetime import datetime, timezone
from typing import Iterable, Sequence

from . import __version__, analytic, checks, montecarlo, quadrature
from .process_sim import EnsembleSpec
from .quadrature import QuadSpec, QuadratureError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _sig12(x: float) -> str:
    # '#' keeps trailing zeros, so 12 significant digits always show.
    return f"{x:#.12g}"


def _mc6(x: float) -> float:
    return float(f"{x:.6g}")


def _ensure_finite(values: Iterable[float]) -> None:
    for v in values:
        if not math.isfinite(v):
            raise RuntimeError("non-finite value reached the output stage")


def _manifest(command: str, parameters: dict, seed: int) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _load_manifest(path: str, command: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    if manifest.get("command") != command:
        raise ValueError(
            f"manifest was recorded for {manifest.get('command')!r}, not {command!r}")
    return manifest


def _write_csv(path: str | None, header: Sequence[str],
               rows: Iterable[Sequence], manifest: dict) -> None:
    if path is None:
        writer = csv.writer(sys.stdout, lineterminator="\r\n")
        writer.writerow(header)
        writer.writerows(rows)
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(header)
        writer.writerows(rows)
    with open(path + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_json(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_analytic(args: argparse.Namespace) -> int:
    cat = analytic.catalog()
    unknown = [name for name in args.names if name not in cat]
    if unknown:
        valid = ", ".join(sorted(cat))
        print(f"unknown constant(s): {', '.join(unknown)}; valid names: {valid}",
              file=sys.stderr)
        return EXIT_USAGE
    width = max(len(n) for n in args.names)
    ewidth = max(len(cat[n].expression) for n in args.names)
    for name in args.names:
        entry = cat[name]
        _ensure_finite([entry.value])
        print(f"{name:<{width}}  {entry.expression:<{ewidth}}  {_sig12(entry.value)}")
    return EXIT_OK


def _cmd_table(args: argparse.Namespace) -> int:
    if args.manifest:
        manifest = _load_manifest(args.manifest, "table")
        params = manifest["parameters"]
    else:
        params = {"m": args.m, "n": args.n, "functional": args.functional,
                  "tol": args.tol}
    m_max, n_max = params["m"], params["n"]
    if not (1 <= m_max <= 6 and 1 <= n_max <= 6):
        print("table requires 1 <= m, n <= 6", file=sys.stderr)
        return EXIT_USAGE
    compute = (quadrature.expected_perimeter_mn if params["functional"] == "perimeter"
               else quadrature.expected_area_mn)
    spec = QuadSpec(tol=params["tol"])
    rows = []
    failures = 0
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            try:
                res = compute(m, n, spec)
                value, bound = res.value, res.error_bound
            except QuadratureError as err:
                value, bound = err.estimate, err.error_bound
                failures += 1
                print(f"quadrature did not converge for (m={m}, n={n}); "
                      f"reporting best estimate", file=sys.stderr)
            _ensure_finite([value])
            rows.append((m, n, _sig12(value), f"{bound:.3g}"))
    manifest = _manifest("table", params, seed=0)
    _write_csv(args.output, ("m", "n", "value", "err_bound"), rows, manifest)
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    if args.manifest:
        manifest_in = _load_manifest(args.manifest, "simulate")
        params = dict(manifest_in["parameters"])
        seed = int(manifest_in["seed"])
    else:
        params = {"m": args.m, "n": args.n, "steps": args.steps, "reps": args.reps,
                  "functional": args.functional, "workers": args.workers,
                  "ci_level": args.ci_level}
        seed = args.seed
    spec = EnsembleSpec(params["m"], params["n"], params["steps"], seed)
    reps = params["reps"]
    workers = params["workers"]
    manifest = _manifest("simulate", params, seed=spec.master_seed)

    if params["functional"] in ("perimeter", "area"):
        column = 0 if params["functional"] == "perimeter" else 1
        values = montecarlo.hull_functional_samples(spec, reps, workers)
        est = montecarlo.Estimate.from_values(values[:, column], spec,
                                              params["ci_level"])
        payload = {
            "functional": params["functional"],
            "mean": _mc6(est.mean),
            "std_error": _mc6(est.std_error),
            "ci_low": _mc6(est.ci_low),
            "ci_high": _mc6(est.ci_high),
            "ci_level": params["ci_level"],
            "reps": reps,
            "manifest": manifest,
        }
        _ensure_finite([payload["mean"], payload["std_error"],
                        payload["ci_low"], payload["ci_high"]])
        if args.samples_csv:
            rows = ((i, _sig12(v)) for i, v in enumerate(values[:, column]))
            _write_csv(args.samples_csv, ("replicate", params["functional"]),
                       rows, manifest)
    elif params["functional"] == "density-of-T":
        samples = montecarlo.argmax_samples(spec, reps, workers)
        report = montecarlo.ks_test(samples.times, analytic.argmax_time_cdf)
        _, (frac_bm, frac_bb) = montecarlo.sample_argmax_times(
            spec, reps, samples=samples)
        payload = {
            "functional": "density-of-T",
            "ks_statistic": _mc6(report.ks_statistic),
            "p_value_asymptotic": _mc6(report.p_value_asymptotic),
            "winner_fraction_bm": _mc6(frac_bm),
            "winner_fraction_bb": _mc6(frac_bb),
            "reps": reps,
            "manifest": manifest,
        }
        _ensure_finite([payload["ks_statistic"], payload["p_value_asymptotic"],
                        payload["winner_fraction_bm"]])
        if args.samples_csv:
            rows = ((i, _sig12(t), "BM" if bm else "BB")
                    for i, (t, bm) in enumerate(zip(samples.times,
                                                    samples.winner_is_bm)))
            _write_csv(args.samples_csv, ("replicate", "time", "winner"),
                       rows, manifest)
    else:
        print(f"unknown functional {params['functional']!r}", file=sys.stderr)
        return EXIT_USAGE
    _write_json(args.output, payload)
    return EXIT_OK


def _cmd_density(args: argparse.Namespace) -> int:
    if args.manifest:
        manifest_in = _load_manifest(args.manifest, "density")
        params = dict(manifest_in["parameters"])
    else:
        params = {"which": args.which, "points": args.points, "x_max": args.x_max}
    which = params["which"]
    points = params["points"]
    if points < 2:
        print("density requires at least 2 grid points", file=sys.stderr)
        return EXIT_USAGE
    rows = []
    if which == "T":
        header = ("t", "pdf")
        for i in range(points):
            t = (i + 1) / (points + 1)
            v = analytic.pdf_argmax_time(t)
            _ensure_finite([v])
            rows.append((_sig12(t), _sig12(v)))
    elif which == "M":
        header = ("x", "pdf")
        for i in range(points):
            x = i * params["x_max"] / (points - 1)
            v = analytic.pdf_combined_max(x)
            _ensure_finite([v])
            rows.append((_sig12(x), _sig12(v)))
    else:
        header = ("x", "t", "pdf")
        for i in range(points):
            x = (i + 1) * params["x_max"] / points
            for j in range(points):
                t = (j + 1) / (points + 1)
                v = analytic.joint_pdf_combined(x, t)
                _ensure_finite([v])
                rows.append((_sig12(x), _sig12(t), _sig12(v)))
    manifest = _manifest("density", params, seed=0)
    _write_csv(args.output, header, rows, manifest)
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    results = checks.fast_checks()
    if args.level == "full":
        results += checks.full_checks(
            workers=args.workers, mc_reps=args.mc_reps, mc_steps=args.mc_steps,
            ks_reps=args.ks_reps, ks_steps=args.ks_steps, seed=args.seed)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        if not r.passed:
            failed += 1
        rel = "achieved >= target" if r.kind == "ge" else f"tol={r.tol:.3g}"
        print(f"{status} {r.name}: target={_sig12(r.target)} "
              f"achieved={_sig12(r.achieved)} {rel}")
    total = len(results)
    print(f"{total - failed}/{total} checks passed")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brownhull",
        description="Expected perimeter and area of convex hulls of planar "
                    "Brownian motions and bridges, by closed form, quadrature "
                    "and Monte Carlo.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analytic", help="print closed-form constants")
    p.add_argument("names", nargs="+", help="catalog constant names")
    p.set_defaults(handler=_cmd_analytic)

    p = sub.add_parser("table", help="quadrature table over ensemble sizes")
    p.add_argument("--m", type=int, default=2, help="largest BM count (rows 1..m)")
    p.add_argument("--n", type=int, default=2, help="largest BB count (rows 1..n)")
    p.add_argument("--functional", choices=("perimeter", "area"), default="perimeter")
    p.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance")
    p.add_argument("--output", help="CSV destination (stdout when omitted)")
    p.add_argument("--manifest", help="replay parameters from a manifest JSON")
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser("simulate", help="Monte Carlo estimate over replicated ensembles")
    p.add_argument("--m", type=int, default=1, help="number of Brownian motions")
    p.add_argument("--n", type=int, default=1, help="number of Brownian bridges")
    p.add_argument("--steps", type=int, default=8192, help="grid intervals per path")
    p.add_argument("--reps", type=int, default=50_000, help="number of replicates")
    p.add_argument("--seed", type=int, default=0, help="64-bit master seed")
    p.add_argument("--functional", choices=("perimeter", "area", "density-of-T"),
                   default="perimeter")
    p.add_argument("--workers", type=int, default=1,
                   help="worker threads; never changes the numbers")
    p.add_argument("--ci-level", type=float, default=0.99, dest="ci_level")
    p.add_argument("--output", help="JSON destination (stdout when omitted)")
    p.add_argument("--samples-csv", dest="samples_csv",
                   help="also stream per-replicate values to this CSV")
    p.add_argument("--manifest", help="replay a prior run from its manifest JSON")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("density", help="dump density grids as CSV")
    p.add_argument("--which", choices=("T", "M", "joint"), required=True)
    p.add_argument("--points", type=int, default=512)
    p.add_argument("--x-max", type=float, default=4.0, dest="x_max")
    p.add_argument("--output", help="CSV destination (stdout when omitted)")
    p.add_argument("--manifest", help="replay parameters from a manifest JSON")
    p.set_defaults(handler=_cmd_density)

    p = sub.add_parser("validate", help="run the self-check suite")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--mc-reps", type=int, default=50_000, dest="mc_reps")
    p.add_argument("--mc-steps", type=int, default=8192, dest="mc_steps")
    p.add_argument("--ks-reps", type=int, default=100_000, dest="ks_reps")
    p.add_argument("--ks-steps", type=int, default=4096, dest="ks_steps")
    p.set_defaults(handler=_cmd_validate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (OSError, ValueError, RuntimeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
