"""Command line entry point: ``frame-erasure {bench,demo,verify}``."""
import argparse
import logging
import sys

import numpy as np

from .bench import DEMOS, BenchConfig, emit_csv, run_fixed_demo, run_random_bench, summarize
from .dual_construction import (
    canonical_dual,
    check_statements,
    reduced_dual_iterative,
    reduced_dual_matrix,
    reduced_dual_operator,
)
from .exceptions import FrameError
from .frame_core import DEFAULT_TOL, read_frame
from .instances import gaussian_instance, group_instance


def _bench(args):
    frame = None
    dim, count = args.dim, args.count
    if args.frame_file:
        frame = read_frame(args.frame_file)
        dim, count = frame.dim, frame.count
    if dim is None or count is None:
        raise SystemExit("bench: --dim and --count are required without --frame-file")
    cfg = BenchConfig(dim, count, args.erasures, args.seed, args.trials, args.tol, args.out)
    records = run_random_bench(cfg, frame)
    for rec in records:
        timings = " ".join(f"{k}={v:.4f}" for k, v in rec.timings().items())
        worst = max(rec.errors().values())
        print(f"{rec.test}: {timings} | max error {worst:.2e} | fastest: {rec.fastest()}")
    medians = summarize(records)
    print("median: " + " ".join(f"{k}={v:.4f}" for k, v in medians.items()))
    if cfg.out:
        emit_csv(records, cfg.out)
        print(f"wrote {len(records)} record(s) to {cfg.out}")
    bad = [rec.test for rec in records if not rec.within(cfg.error_bound)]
    if bad:
        print(f"error bound {cfg.error_bound:g} exceeded in: {', '.join(bad)}", file=sys.stderr)
        return 1
    return 0


def _demo(args):
    report = run_fixed_demo(args.name, args.dim, args.seed)
    print(report)
    if args.out and report.records:
        emit_csv(report.records, args.out)
    return 0 if report.passed else 1


def _verify(args):
    """Quick self-check on random instances; prints one line per check."""
    rng = np.random.default_rng(args.seed)
    results = []
    for name in ("example31", "example34"):
        results.append((f"demo {name}", run_fixed_demo(name).passed))

    worst = 0.0
    for _ in range(args.instances):
        x, z, e = gaussian_instance(rng, r_range=(5, 30), canonical=bool(rng.integers(2)))
        try:
            a = reduced_dual_matrix(x, z, e).synthesis
            b = reduced_dual_operator(x, z, e).synthesis
        except FrameError:
            continue
        trace = reduced_dual_iterative(x, z, e)
        cols = [b] + ([trace.current] if trace.finished else [])
        for other in cols:
            scale = 1.0 + np.linalg.norm(a, axis=0)
            worst = max(worst, float(np.max(np.linalg.norm(a - other, axis=0) / scale)))
    results.append((f"methods agree on {args.instances} random instances (worst {worst:.1e})", worst <= 1e-8))

    chain_ok = all(check_statements(*group_instance(rng)).chain_holds() for _ in range(args.instances))
    results.append((f"statement chain on {args.instances} structured instances", chain_ok))

    canon_ok = True
    for _ in range(args.instances // 2):
        x, _, e = gaussian_instance(rng, r_range=(5, 20))
        rep = check_statements(x, canonical_dual(x), e)
        canon_ok &= len(set(rep.flags())) == 1
    results.append(("canonical dual: all statements agree", canon_ok))

    for label, ok in results:
        print(f"[{'PASS' if ok else 'FAIL'}] {label}")
    return 0 if all(ok for _, ok in results) else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="frame-erasure", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="time the reduced-dual constructions on random frames")
    bench.add_argument("--dim", type=int, help="dimension r")
    bench.add_argument("--count", type=int, help="number of frame vectors N")
    bench.add_argument("--erasures", type=int, required=True, help="erase the first k coefficients")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--trials", type=int, default=1)
    bench.add_argument("--tol", type=float, default=DEFAULT_TOL)
    bench.add_argument("--out", help="CSV output path")
    bench.add_argument("--frame-file", help="benchmark a frame read from an FRM1 file")
    bench.set_defaults(func=_bench)

    demo = sub.add_parser("demo", help="run an explicit example")
    demo.add_argument("name", choices=DEMOS)
    demo.add_argument("--dim", type=int, default=None)
    demo.add_argument("--seed", type=int, default=0)
    demo.add_argument("--out", help="CSV output path (test9 only)")
    demo.set_defaults(func=_demo)

    verify = sub.add_parser("verify", help="self-check on examples and random instances")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--instances", type=int, default=50)
    verify.set_defaults(func=_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (FrameError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
