"""Command-line front end: `dirtycast {bounds|figure|simulate|verify}`.

All output is deterministic for fixed flags and seed; `--threads` (or the
DIRTYCAST_THREADS environment variable) only changes how Monte Carlo trials
are batched, never the results.  Exit codes: 0 success, 1 failed verify
check, 2 invalid flags, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__, binary, correlated, figures, gaussian, verify
from .core import db_to_linear
from .simulate import SchemeRun, simulate_scheme


def _fmt(x: float) -> str:
    return format(float(x), ".9g")


def _resolve_db_pair(parser, linear, in_db, name, default=None):
    if linear is not None and in_db is not None:
        parser.error(f"specify only one of --{name} and --{name}-db")
    if linear is None and in_db is None:
        if default is None:
            parser.error(f"one of --{name} or --{name}-db is required")
        return default
    value = linear if linear is not None else db_to_linear(in_db)
    if value < 0:
        parser.error(f"--{name} must be nonnegative")
    return value


def _print_table(rows):
    width = max(len(r[0]) for r in rows)
    for method, kind, value in rows:
        print(f"{method:<{width}}  {kind:<5}  {_fmt(value)}")


def _cmd_bounds(parser, args) -> int:
    modes = [m for m in ("binary", "gaussian", "correlated") if getattr(args, m)]
    if len(modes) != 1:
        parser.error("choose exactly one of --binary, --gaussian, --correlated")
    mode = modes[0]
    rows = []
    if mode == "binary":
        if args.q is None:
            parser.error("--binary requires --q")
        try:
            spec = binary.BinaryChannelSpec.iid(args.q, k=args.k, noise_q=args.noise_q)
        except ValueError as exc:
            parser.error(str(exc))
        if args.k == 2 and spec.noiseless:
            b = binary.capacity_two_user(spec)
            rows.append((b.method, b.kind, b.value))
        if args.k == 2 and not spec.noiseless:
            lo, hi = binary.noisy_two_user_bounds(spec)
            rows.append((lo.method, lo.kind, lo.value))
            rows.append((hi.method, hi.kind, hi.value))
        if args.k > 2:
            if not spec.noiseless:
                parser.error("K > 2 bounds are noiseless only")
            try:
                hi = binary.upper_bound_k(spec)
                lo = binary.lower_bound_k(spec)
            except ValueError as exc:
                parser.error(str(exc))
            rows.append((hi.method, hi.kind, hi.value))
            rows.append((lo.method, lo.kind, lo.value))
        ts = binary.rate_timeshare(args.k)
        si = binary.rate_ignore_side_info(spec)
        rows.append((ts.method, ts.kind, ts.value))
        rows.append((si.method, si.kind, si.value))
        print(f"binary multicast, K={args.k}, q={_fmt(args.q)}" +
              (f", noise_q={_fmt(args.noise_q)}" if args.noise_q is not None else ""))
    elif mode == "gaussian":
        p = _resolve_db_pair(parser, args.snr, args.snr_db, "snr")
        q = _resolve_db_pair(parser, args.inr, args.inr_db, "inr")
        print(f"gaussian multicast, K={args.k}, P={_fmt(p)}, Q={_fmt(q)}")
        for b in (
            gaussian.upper_envelope(p, q),
            gaussian.upper_i(p, q),
            gaussian.upper_ii(p, q),
            gaussian.lower_bound(p, q),
            gaussian.rate_timeshare(p),
            gaussian.rate_interference_as_noise(p, q),
        ):
            rows.append((b.method, b.kind, b.value))
        rows.append(("trivial-awgn", "upper", gaussian.awgn_capacity(p)))
        if args.k > 2:
            b = gaussian.upper_k(p, q, args.k)
            rows.append((b.method, b.kind, b.value))
    else:
        p = _resolve_db_pair(parser, args.snr, args.snr_db, "snr")
        if args.qd is None:
            parser.error("--correlated requires --qd")
        q1 = args.q1 if args.q1 is not None else args.qd / 4.0
        q2 = args.q2 if args.q2 is not None else q1
        try:
            spec = correlated.CorrelatedSpec(p, q1, q2, args.qd)
        except ValueError as exc:
            parser.error(str(exc))
        print(f"correlated multicast, P={_fmt(p)}, Q1={_fmt(q1)}, Q2={_fmt(q2)}, Qd={_fmt(args.qd)}")
        for b in (
            correlated.upper_correlated(spec),
            correlated.lower_beta(p, args.qd),
            gaussian.rate_timeshare(p),
        ):
            rows.append((b.method, b.kind, b.value))
    _print_table(rows)
    return 0


def _cmd_figure(parser, args) -> int:
    out = args.out if args.out is not None else f"{args.name}.csv"
    try:
        header, rows = figures.figure_table(args.name)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        figures.write_csv(out, header, rows)
        if args.svg is not None:
            figures.write_svg(args.svg, header, rows, title=args.name)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(f"{args.name}: wrote {len(rows)} rows to {out}" +
          (f" and {args.svg}" if args.svg is not None else ""))
    return 0


def _cmd_simulate(parser, args) -> int:
    threads = args.threads
    if threads is None:
        try:
            threads = int(os.environ.get("DIRTYCAST_THREADS", "1"))
        except ValueError:
            parser.error("DIRTYCAST_THREADS must be an integer")
    if threads < 1:
        parser.error("--threads must be >= 1")
    try:
        spec = binary.BinaryChannelSpec.iid(args.q, noise_q=args.noise_q)
    except ValueError as exc:
        parser.error(str(exc))
    rate = None if args.mi_only else args.rate
    if rate is None and not args.mi_only:
        parser.error("--rate is required unless --mi-only is given")
    trials = args.trials if args.trials is not None else (1 if args.mi_only else 1000)
    try:
        run = SchemeRun(
            n=args.n, rate=rate, trials=trials, seed=args.seed, codebook=args.codebook
        )
    except ValueError as exc:
        parser.error(str(exc))
    report = simulate_scheme(spec, run, threads=threads)

    lines = [
        f"scheme simulation: q={_fmt(args.q)}, n={report.n}, trials={report.trials}, "
        f"seed={args.seed}",
        f"interfered-half crossover: {_fmt(report.empirical_crossover)} "
        f"(expected {_fmt(binary.xor_convolve(spec.xor_probability, spec.noise_q or 0.0))}, "
        f"{report.interfered_samples} samples)",
        f"plug-in MI estimate: {_fmt(report.empirical_mi_per_symbol)} bits/use "
        f"(single-letter value {_fmt(report.predicted_mi_per_symbol)})",
    ]
    if report.frame_error_rate is not None:
        lines.insert(1, f"codebook: {report.codewords} codewords ({run.codebook})")
        lines.append(
            f"frame error rate: user1 {_fmt(report.fer_user1)}, user2 {_fmt(report.fer_user2)}, "
            f"union {_fmt(report.frame_error_rate)}"
        )
    text = "\n".join(lines)
    print(text)
    if args.csv is not None:
        pairs = [
            ("empirical_crossover", report.empirical_crossover),
            ("interfered_samples", report.interfered_samples),
            ("empirical_mi_per_symbol", report.empirical_mi_per_symbol),
            ("predicted_mi_per_symbol", report.predicted_mi_per_symbol),
        ]
        if report.frame_error_rate is not None:
            pairs += [
                ("fer_user1", report.fer_user1),
                ("fer_user2", report.fer_user2),
                ("fer_union", report.frame_error_rate),
            ]
        try:
            with open(args.csv, "w", encoding="ascii", newline="\n") as fh:
                fh.write("metric,value\n")
                for k, v in pairs:
                    fh.write(f"{k},{_fmt(v)}\n")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 3
    return 0


def _cmd_verify(_parser, _args) -> int:
    results = verify.run_checks()
    failed = 0
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        failed += 0 if res.passed else 1
        print(f"{tag}  {res.name}: {res.detail}")
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirtycast",
        description="Capacity bounds and scheme simulation for multicast "
        "channels with transmitter-known additive interference.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="print every applicable bound at one operating point")
    b.add_argument("--binary", action="store_true")
    b.add_argument("--gaussian", action="store_true")
    b.add_argument("--correlated", action="store_true")
    b.add_argument("--q", type=float, help="binary interference probability")
    b.add_argument("--k", type=int, default=2, help="number of receivers")
    b.add_argument("--noise-q", type=float, default=None, help="binary noise crossover")
    b.add_argument("--snr", type=float, default=None, help="SNR, linear")
    b.add_argument("--snr-db", type=float, default=None, help="SNR in dB")
    b.add_argument("--inr", type=float, default=None, help="INR, linear")
    b.add_argument("--inr-db", type=float, default=None, help="INR in dB")
    b.add_argument("--q1", type=float, default=None, help="first interference power")
    b.add_argument("--q2", type=float, default=None, help="second interference power")
    b.add_argument("--qd", type=float, default=None, help="variance of S1 - S2")

    f = sub.add_parser("figure", help="regenerate a figure sweep as CSV (optionally SVG)")
    f.add_argument("name", choices=figures.FIGURES)
    f.add_argument("--out", default=None, help="CSV path (default <name>.csv)")
    f.add_argument("--svg", default=None, help="also write a self-contained SVG plot")

    s = sub.add_parser("simulate", help="Monte Carlo run of the binary precancellation scheme")
    s.add_argument("--q", type=float, required=True, help="iid interference probability")
    s.add_argument("--noise-q", type=float, default=None)
    s.add_argument("--n", type=int, required=True, help="blocklength (even)")
    s.add_argument("--rate", type=float, default=None, help="code rate in bits/use")
    s.add_argument("--trials", type=int, default=None, help="default 1000 (1 with --mi-only)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--mi-only", action="store_true", help="skip decoding; measure crossover/MI")
    s.add_argument("--threads", type=int, default=None, help="trial batching (default $DIRTYCAST_THREADS or 1)")
    s.add_argument("--codebook", choices=("iid", "linear"), default="iid")
    s.add_argument("--csv", default=None, help="also write the report metrics as CSV")

    v = sub.add_parser("verify", help="run the full cross-verification suite")
    v.set_defaults()
    return parser


_HANDLERS = {
    "bounds": _cmd_bounds,
    "figure": _cmd_figure,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return _HANDLERS[args.command](parser, args)


def console_entry():
    raise SystemExit(main())


if __name__ == "__main__":
    console_entry()
