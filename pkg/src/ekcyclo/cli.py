"""Command-line entry points: compute, verify-table2, analyze, constants.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import sys

from . import analysis
from .admissible import constants_table, harmonic_threshold
from .store import RunConfig, StoreError, read_records, run_range, verify_reference


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ekcyclo",
        description="Euler-Kronecker / Kummer-ratio pipeline for odd primes q")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="write one CSV row per odd prime in a range")
    p.add_argument("--min", type=int, required=True, dest="q_min")
    p.add_argument("--max", type=int, required=True, dest="q_max")
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--precision", choices=("double", "dd"), default="double")
    p.add_argument("--checkpoint-every", type=int, default=1000)

    p = sub.add_parser("verify-table2", help="recompute the tabulated kappa values")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--precision", choices=("double", "dd"), default="double")

    p = sub.add_parser("analyze", help="histogram / spike / delta / envelope outputs")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--bins", type=float, default=analysis.DEFAULT_BIN_WIDTH,
                   help="bin width")
    p.add_argument("--range", dest="range_", default="-0.6:0.6", metavar="LO:HI")
    p.add_argument("--spike", metavar="M:B", help="e.g. 2:+1 or 4:-1")
    p.add_argument("--exclusive", action="store_true")
    p.add_argument("--delta-cap", type=float, default=0.08)
    p.add_argument("--out-prefix", default="ek_")

    p = sub.add_parser("constants", help="print the named constants and thresholds")
    p.add_argument("--c1-cutoff", type=int, default=10 ** 8)
    return parser


def _cmd_compute(args) -> int:
    try:
        cfg = RunConfig(q_min=args.q_min, q_max=args.q_max, out_path=args.out,
                        threads=args.threads, precision=args.precision,
                        checkpoint_every=args.checkpoint_every)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        rows = run_range(cfg)
    except (OSError, StoreError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {rows} rows to {cfg.out_path}")
    return 0


def _cmd_verify(args) -> int:
    result = verify_reference(args.tol, mode=args.precision)
    print(f"max |kappa - reference| = {result.max_deviation:.3e} at q={result.worst_q} "
          f"(tolerance {args.tol:g}, {args.precision})")
    if result.ok:
        print("verify-table2: PASS")
        return 0
    print("verify-table2: FAIL at q = " + ", ".join(map(str, result.offenders)))
    return 1


def _parse_spike(spec: str) -> tuple[int, int]:
    try:
        m_str, b_str = spec.split(":")
        m, b = int(m_str), int(b_str)
    except ValueError as exc:
        raise ValueError(f"bad --spike {spec!r}, expected M:B") from exc
    return m, b


def _cmd_analyze(args) -> int:
    try:
        records = read_records(args.in_path)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except StoreError as exc:
        print(f"error: {args.in_path}: {exc}", file=sys.stderr)
        return 2
    try:
        lo, hi = (float(v) for v in args.range_.split(":"))
    except ValueError:
        print(f"error: bad --range {args.range_!r}, expected LO:HI", file=sys.stderr)
        return 2
    prefix = args.out_prefix

    hist = analysis.histogram([r.kappa for r in records], args.bins, lo, hi)
    centers = hist.bin_centers()
    with open(prefix + "histogram.csv", "w", encoding="ascii", newline="\n") as f:
        f.write("bin_center,count,normal_overlay\n")
        def density(x: float) -> str:
            if hist.sigma in (None, 0.0):
                return "nan"
            return f"{float(hist.normal_density(x)):.17g}"
        f.write(f"{lo - 0.5 * args.bins:.17g},{hist.underflow},{density(lo - 0.5 * args.bins)}\n")
        for c, cnt in zip(centers, hist.counts):
            f.write(f"{c:.17g},{cnt},{density(float(c))}\n")
        f.write(f"{hi + 0.5 * args.bins:.17g},{hist.overflow},{density(hi + 0.5 * args.bins)}\n")

    if args.spike:
        try:
            m, b = _parse_spike(args.spike)
            report = analysis.spike_report(records, m, b, exclusive=args.exclusive)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        with open(prefix + "spikes.csv", "w", encoding="ascii", newline="\n") as f:
            f.write("m,b,exclusive,count,sample_mean,target\n")
            mean = "nan" if report.sample_mean is None else f"{report.sample_mean:.17g}"
            f.write(f"{report.m},{report.b},{int(report.exclusive)},{report.count},"
                    f"{mean},{report.target:.17g}\n")

    frac, mean_abs = analysis.delta_stats(records, args.delta_cap)
    with open(prefix + "delta.csv", "w", encoding="ascii", newline="\n") as f:
        f.write("cap,frac_within,mean_abs\n")
        f.write(f"{args.delta_cap:.17g},{frac:.17g},{mean_abs:.17g}\n")
    print(f"delta: frac(|delta| <= {args.delta_cap:g}) = {frac:.4f}, "
          f"mean |delta| = {mean_abs:.6f}")

    anomalies = analysis.envelope_check(records)
    with open(prefix + "anomalies.csv", "w", encoding="ascii", newline="\n") as f:
        f.write("q,kappa,kind\n")
        for a in anomalies:
            f.write(f"{a.q},{a.kappa:.17g},{a.kind}\n")
    print(f"envelope anomalies: {len(anomalies)}")
    return 0


def _cmd_constants(args) -> int:
    for const in constants_table(args.c1_cutoff).values():
        print(f"{const.name:12s} = {const.value:.10f}   [{const.expression}]")
    for c in (4, 6):
        n, total = harmonic_threshold(float(c))
        print(f"threshold({c}) : N = {n}, sum = {total:.9f}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "compute": _cmd_compute,
        "verify-table2": _cmd_verify,
        "analyze": _cmd_analyze,
        "constants": _cmd_constants,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
