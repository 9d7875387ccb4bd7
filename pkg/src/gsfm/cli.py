"""Command-line driver: every experiment as a subcommand writing CSV.

Output files start with '# key=value' metadata lines echoing every
parameter, so a file identifies the exact command that produced it and
reruns are byte-identical.  --json swaps the format for a single JSON
document with the same content.  Exit codes: 0 success, 2 invalid
parameters, 3 output failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import anneal, fourier, spectrum
from .ffgsp import (
    build_generator,
    commuting_partition,
    pauli_decompose,
    trotterized_ff,
    word_count_scaling,
)
from .groundtruth import exact_ground_state, magnetization_curve
from .hamiltonians import IsingParams, ScheduleParams, ising_dense
from .statevec import plus_state

FIG2B_SETTINGS = ((10.0, 100), (100.0, 1000), (1000.0, 10000))
FIG4_SETTINGS = ((100.0, 100), (100.0, 1000), (1000.0, 100), (1000.0, 1000))

DEFAULT_MS_LIST = "1,2,4,8,16,32,64"


class CLIParamError(Exception):
    """Invalid parameter combination detected after argparse."""


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (np.floating, np.integer)):
        value = value.item()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _progress(message: str) -> None:
    print(message, file=sys.stderr)


def _suffixed(path: str, suffix: str) -> str:
    stem, ext = os.path.splitext(path)
    return f"{stem}{suffix}{ext}"


def _write(path: str, metadata: dict, columns: list, rows: list, as_json: bool):
    if as_json:
        doc = {
            "metadata": {k: v for k, v in metadata.items()},
            "columns": columns,
            "rows": [list(r) for r in rows],
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1, default=_fmt)
            fh.write("\n")
    else:
        with open(path, "w") as fh:
            for key, value in metadata.items():
                fh.write(f"# {key}={_fmt(value)}\n")
            fh.write(",".join(columns) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
    _progress(f"wrote {path}")


def _grid(args) -> np.ndarray:
    if not args.x_max > args.x_min:
        raise CLIParamError(
            f"x window reversed or empty: [{args.x_min}, {args.x_max}]"
        )
    if args.points < 2:
        raise CLIParamError(f"points must be >= 2, got {args.points}")
    return np.linspace(args.x_min, args.x_max, args.points)


def _t_suffix(t: float, m: int) -> str:
    t_part = str(int(t)) if float(t).is_integer() else repr(float(t))
    return f"_T{t_part}_M{m}"


def _cmd_magnetization(args) -> None:
    xs = _grid(args)
    rows = magnetization_curve(args.n, xs, h=args.h)
    metadata = {
        "command": "magnetization",
        "n": args.n,
        "h": args.h,
        "x_min": args.x_min,
        "x_max": args.x_max,
        "points": args.points,
    }
    _write(args.out, metadata, ["x", "mag_abs_per_site"], rows.tolist(), args.json)


def _fidelity_rows(scan: anneal.FidelityScan, n: int) -> list:
    rows = []
    for x, f, fa in zip(scan.xs, scan.full_fidelity, scan.approx_fidelity):
        # Conventional total-variation normalization for comparison:
        # same distance, denominator 2 instead of 2**n.
        fa_div2 = 1.0 - (1.0 - fa) * (1 << (n - 1))
        rows.append((float(x), float(f), float(fa), float(fa_div2)))
    return rows


def _cmd_fidelity_scan(args) -> None:
    xs = _grid(args)
    settings = FIG2B_SETTINGS if args.preset == "fig2b" else ((args.t, args.m),)
    multi = len(settings) > 1
    for t_total, steps in settings:
        _progress(f"fidelity scan T={t_total} M={steps} ({xs.size} points)")
        scan = anneal.fidelity_scan(
            args.n,
            ScheduleParams(t_total, steps),
            xs,
            reference=args.reference,
            h=args.h,
            splitting=args.splitting,
        )
        metadata = {
            "command": "fidelity-scan",
            "n": args.n,
            "h": args.h,
            "t": t_total,
            "m": steps,
            "reference": args.reference,
            "splitting": args.splitting,
            "x_min": args.x_min,
            "x_max": args.x_max,
            "points": args.points,
        }
        out = _suffixed(args.out, _t_suffix(t_total, steps)) if multi else args.out
        _write(
            out,
            metadata,
            ["x", "F", "F_approx", "F_approx_div2"],
            _fidelity_rows(scan, args.n),
            args.json,
        )


def _cmd_infidelity(args) -> None:
    t_list = [float(t) for t in args.t_list.split(",") if t]
    if not t_list:
        raise CLIParamError("empty --t-list")
    params = IsingParams(args.n, args.x, args.h)
    _progress(f"infidelity sweep over {len(t_list)} T values, rule {args.m}")
    rows = anneal.infidelity_vs_T(params, t_list, args.m, splitting=args.splitting)
    metadata = {
        "command": "infidelity-vs-t",
        "n": args.n,
        "h": args.h,
        "x": args.x,
        "m_rule": args.m,
        "splitting": args.splitting,
        "t_list": args.t_list,
    }
    _write(
        args.out, metadata, ["T", "M", "infid", "infid_approx"], rows, args.json
    )


def _cmd_basis(args) -> None:
    xs = _grid(args)
    _progress(f"basis functions T={args.t} M={args.m} ({xs.size} points)")
    phi = anneal.basis_functions(args.n, ScheduleParams(args.t, args.m), xs, h=args.h)
    columns = ["x"] + [f"phi_{j}" for j in range(phi.shape[0])]
    rows = [
        tuple([float(x)] + [float(v) for v in phi[:, i]]) for i, x in enumerate(xs)
    ]
    metadata = {
        "command": "basis",
        "n": args.n,
        "h": args.h,
        "t": args.t,
        "m": args.m,
        "x_min": args.x_min,
        "x_max": args.x_max,
        "points": args.points,
    }
    _write(args.out, metadata, columns, rows, args.json)


def _cmd_spectrum(args) -> None:
    if args.kind == "gsp":
        steps = 5 if args.m is None else args.m
        if steps < 1:
            raise CLIParamError(f"m must be >= 1, got {steps}")
        ev = spectrum.ising_eigenvalue_set(args.n)
        unweighted = spectrum.mode_spectrum(ev, steps, weighted=False)
        weighted = spectrum.mode_spectrum(ev, steps, weighted=True)
    else:
        if args.m is not None:
            raise CLIParamError("tower spectrum has no step count; drop --m")
        steps = 1
        ev, unweighted, _ = spectrum.tower_spectrum(args.n)
        weighted = spectrum.SpectrumHistogram(
            dict(zip(ev.values, ev.multiplicities)), 1, True
        )
    if args.gap:
        unweighted = spectrum.gap_spectrum(unweighted)
        weighted = spectrum.gap_spectrum(weighted)
    freqs = sorted(set(unweighted.counts) | set(weighted.counts))
    rows = [
        (f, unweighted.counts.get(f, 0), weighted.counts.get(f, 0)) for f in freqs
    ]
    metadata = {
        "command": "spectrum",
        "kind": args.kind,
        "n": args.n,
        "m": steps,
        "weighted": args.weighted,
        "gap": args.gap,
    }
    _write(
        args.out,
        metadata,
        ["freq", "count_unweighted", "count_weighted"],
        rows,
        args.json,
    )


def _cmd_scaling(args) -> None:
    if args.n_max < 1:
        raise CLIParamError(f"n-max must be >= 1, got {args.n_max}")
    rows = spectrum.degree_scaling(
        range(1, args.n_max + 1), args.gap_model, args.c
    )
    metadata = {
        "command": "scaling",
        "gap_model": args.gap_model,
        "c": args.c,
        "n_max": args.n_max,
    }
    _write(
        args.out,
        metadata,
        ["n", "rotation_degree", "gsp_degree"],
        rows,
        args.json,
    )


def _window_arg(raw: str) -> tuple:
    lo, sep, hi = raw.partition(":")
    if not sep:
        raise CLIParamError(f"window must be 'lo:hi', got {raw!r}")
    try:
        window = (float(lo), float(hi))
    except ValueError as exc:
        raise CLIParamError(f"window must be numeric, got {raw!r}") from exc
    if not window[1] > window[0]:
        raise CLIParamError(f"window reversed or empty: {raw!r}")
    return window


def _cmd_coefficients(args) -> None:
    if args.preset == "fig4":
        settings = FIG4_SETTINGS
    else:
        if args.t is None or args.m is None:
            raise CLIParamError("either --preset fig4 or both --t and --m")
        settings = ((args.t, args.m),)
    windows = (
        (fourier.DEFAULT_WINDOW, fourier.PHASE_WINDOW)
        if args.window is None
        else (_window_arg(args.window),)
    )
    multi = len(settings) > 1
    for t_total, steps in settings:
        _progress(
            f"coefficients T={t_total} M={steps} "
            f"({args.points} points x {len(windows)} windows)"
        )
        rows = fourier.coefficient_report(
            [(t_total, steps)],
            n=args.n,
            h=args.h,
            points=args.points,
            windows=windows,
        )
        flat = [
            (
                r["T"],
                r["M"],
                f"{r['window'][0]!r}:{r['window'][1]!r}",
                r["k"],
                r["abs_c"],
                r["re_c"],
                r["im_c"],
            )
            for r in rows
        ]
        metadata = {
            "command": "coefficients",
            "n": args.n,
            "h": args.h,
            "t": t_total,
            "m": steps,
            "points": args.points,
            "windows": ";".join(f"{w[0]!r}:{w[1]!r}" for w in windows),
        }
        out = _suffixed(args.out, _t_suffix(t_total, steps)) if multi else args.out
        _write(
            out,
            metadata,
            ["T", "M", "window", "k", "abs_c", "re_c", "im_c"],
            flat,
            args.json,
        )


def _cmd_ffgsp(args) -> None:
    try:
        ms_values = [int(v) for v in args.ms_list.split(",") if v]
    except ValueError as exc:
        raise CLIParamError(f"bad --ms-list {args.ms_list!r}") from exc
    if not ms_values:
        raise CLIParamError("empty --ms-list")
    rules = ("general", "qubitwise") if args.rule == "both" else (args.rule,)

    params = IsingParams(args.n, args.x, args.h)
    ground = exact_ground_state(ising_dense(params)).state
    gen = build_generator(plus_state(args.n), ground)
    terms = pauli_decompose(gen)
    partitions = {rule: commuting_partition(terms, rule) for rule in rules}

    metadata = {
        "command": "ffgsp",
        "n": args.n,
        "h": args.h,
        "x": args.x,
        "rule": args.rule,
        "ms_list": args.ms_list,
        "prune_threshold": 1e-12,
    }
    word_rows = [
        (args.n, args.x, t.word, t.coefficient.real, t.coefficient.imag)
        for t in terms
    ]
    _write(
        args.out,
        metadata,
        ["N", "x", "word", "re_phi", "im_phi"],
        word_rows,
        args.json,
    )

    group_rows = [
        (args.n, args.x, rule, p.num_groups, p.num_words)
        for rule, p in partitions.items()
    ]
    _write(
        _suffixed(args.out, "_groups"),
        metadata,
        ["N", "x", "rule", "num_groups", "num_words"],
        group_rows,
        args.json,
    )

    trotter_rule = rules[0]
    _progress(f"trotterizing with {trotter_rule} groups, M_S up to {max(ms_values)}")
    trotter = trotterized_ff(gen, partitions[trotter_rule], ms_values)
    trotter_rows = [(ms, fid) for ms, fid, _ in trotter]
    _write(
        _suffixed(args.out, "_trotter"),
        {**metadata, "trotter_rule": trotter_rule},
        ["ms", "fidelity"],
        trotter_rows,
        args.json,
    )


def _add_common(sub, *, n_default=4):
    sub.add_argument("--n", type=int, default=n_default)
    sub.add_argument("--h", type=float, default=0.2)
    sub.add_argument("--out", required=True)
    sub.add_argument("--json", action="store_true")


def _add_grid(sub):
    sub.add_argument("--x-min", type=float, default=0.0)
    sub.add_argument("--x-max", type=float, default=4.0)
    sub.add_argument("--points", type=int, default=201)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsfm",
        description="Annealing feature-map experiments; results go to CSV "
        "(or JSON with --json).  GSFM_THREADS caps sweep parallelism.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("magnetization", help="ground-state |magnetization| curve")
    _add_common(p)
    _add_grid(p)
    p.set_defaults(handler=_cmd_magnetization)

    p = sub.add_parser("fidelity-scan", help="prepared-state fidelity across x")
    _add_common(p)
    _add_grid(p)
    p.add_argument("--t", type=float, default=10.0)
    p.add_argument("--m", type=int, default=100)
    p.add_argument("--reference", choices=("exact", "ite"), default="exact")
    p.add_argument(
        "--splitting", choices=anneal.SPLITTINGS, default="strang_split"
    )
    p.add_argument("--preset", choices=("fig2b",))
    p.set_defaults(handler=_cmd_fidelity_scan)

    p = sub.add_parser("infidelity-vs-t", help="infidelity against total time")
    _add_common(p)
    p.add_argument("--x", type=float, default=1.9)
    p.add_argument("--t-list", default="10,20,50,100,200,500,1000")
    p.add_argument("--m", default="fixed:100", help="step rule fixed:K or prop:c")
    p.add_argument(
        "--splitting", choices=anneal.SPLITTINGS, default="strang_split"
    )
    p.set_defaults(handler=_cmd_infidelity)

    p = sub.add_parser("basis", help="basis-state occupation curves")
    _add_common(p)
    _add_grid(p)
    p.add_argument("--t", type=float, default=1000.0)
    p.add_argument("--m", type=int, default=10000)
    p.set_defaults(handler=_cmd_basis)

    p = sub.add_parser("spectrum", help="mode or gap frequency histogram")
    _add_common(p)
    p.add_argument("--kind", choices=("gsp", "tower"), default="gsp")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--gap", action="store_true")
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("scaling", help="degree scaling against qubit count")
    p.add_argument("--gap-model", choices=spectrum.GAP_MODELS, required=True)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_scaling)

    p = sub.add_parser("coefficients", help="Fourier coefficients of the model")
    _add_common(p)
    p.add_argument("--preset", choices=("fig4",))
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--window", default=None, help="x window as lo:hi")
    p.add_argument("--points", type=int, default=fourier.DEFAULT_POINTS)
    p.set_defaults(handler=_cmd_coefficients)

    p = sub.add_parser("ffgsp", help="fast-forwarded preparation analysis")
    _add_common(p, n_default=2)
    p.add_argument("--x", type=float, default=1.0)
    p.add_argument(
        "--rule", choices=("general", "qubitwise", "both"), default="both"
    )
    p.add_argument("--ms-list", default=DEFAULT_MS_LIST)
    p.set_defaults(handler=_cmd_ffgsp)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.handler(args)
    except (CLIParamError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


def entrypoint() -> None:
    raise SystemExit(main())
