"""Command-line interface.

Subcommands: verify, hopf, link-entropy, sample-layout, run, sweep,
compare-engines, renyi2.  Exit codes: 0 = all executed checks passed,
1 = a check failed, 2 = usage error.  Numeric output always uses '.'
as decimal separator and carries headers.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import dense, layout, loop, stabilizer, sweep, verify
from .errors import BraidCircuitError


def _grid(text: str) -> list:
    """Parse start:stop:step (endpoints inclusive within half a step)."""
    parts = text.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"grid must be start:stop:step, got {text!r}")
    start, stop, step = (float(x) for x in parts)
    if step <= 0:
        raise argparse.ArgumentTypeError("grid step must be positive")
    n = int(np.floor((stop - start) / step + 0.5)) + 1
    return [start + i * step for i in range(max(n, 1))]


def _workers(args) -> int:
    if args.workers is not None:
        return args.workers
    env = os.environ.get("BRAIDCIRCUIT_WORKERS")
    return int(env) if env else 1


def _out(args):
    if args.out and args.out != "-":
        return open(args.out, "w")
    return sys.stdout


def _emit(fh, text):
    fh.write(text)
    if fh is not sys.stdout:
        fh.close()


def _cmd_verify(args):
    reports = verify.run_verification(args.c, tol=args.tol)
    payload = [r.to_dict() for r in reports]
    _emit(_out(args), json.dumps(payload, indent=2) + "\n")
    return 0 if all(r.passed for r in reports) else 1


def _cmd_hopf(args):
    lines = ["c,abs_dense,closed_form,phase"]
    ok = True
    for c in args.c_grid:
        res = verify.hopf_invariant(c)
        ok = ok and res.modulus_dev < args.tol
        lines.append(f"{c:.10g},{abs(res.dense):.12g},"
                     f"{res.closed_form:.12g},{np.angle(res.dense):.12g}")
    _emit(_out(args), "\n".join(lines) + "\n")
    return 0 if ok else 1


def _cmd_link_entropy(args):
    piece = {"a": "two_R", "b": "swap_R"}.get(args.piece, args.piece)
    lines = ["c,S"]
    for c in args.c_grid:
        lines.append(f"{c:.10g},{dense.link_entropy(piece, c):.12g}")
    _emit(_out(args), "\n".join(lines) + "\n")
    return 0


def _cmd_sample_layout(args):
    lay = layout.sample_layout(args.L, args.T if args.T else args.L,
                               args.p, args.q, args.r, args.seed, c=args.c)
    _emit(_out(args), lay.to_json() + "\n")
    return 0


def _cmd_run(args):
    lay = layout.load(args.layout) if args.layout else layout.sample_layout(
        args.L, args.T if args.T else args.L, args.p, args.q, args.r,
        args.seed, c=args.c)
    result = {"engine": args.engine, "L": lay.L, "T": lay.T, "c": lay.c,
              "seed": lay.seed}
    if args.engine == "loop":
        stripe = loop.stripe_from_layout(lay)
        result["S"] = loop.spanning_number(stripe)
        result["closed_loops"] = stripe.closed_loops
    elif args.engine == "stabilizer":
        result["S"] = stabilizer.run_layout(lay)
    else:
        result["S"] = dense.evolve_tfds_entropy(lay)
    _emit(_out(args), json.dumps(result, indent=2) + "\n")
    return 0


def _cmd_sweep(args):
    workers = _workers(args)
    if args.config:
        with open(args.config) as fh:
            cfg = sweep.SweepConfig.from_dict(json.load(fh))
    else:
        cfg = sweep.SweepConfig(
            engine=args.engine, L_values=tuple(int(x) for x in args.L),
            p_values=tuple(args.p), q_values=tuple(args.q),
            r_values=tuple(args.r), c=args.c, T=args.T,
            samples=args.samples, master_seed=args.seed, mode=args.mode,
            pool_size=args.pool_size, out=args.out)
    target = args.out or cfg.out
    if target is None:
        print("sweep requires an output path (--out)", file=sys.stderr)
        return 2
    summary = sweep.write_sweep(cfg, target, workers=workers)
    print(json.dumps(summary))
    return 0


def _cmd_compare_engines(args):
    lay = layout.load(args.layout)
    rows = []
    stripe = loop.stripe_from_layout(lay)
    rows.append(("loop", float(loop.spanning_number(stripe))))
    if lay.c == 1.0:
        rows.append(("stabilizer", float(stabilizer.run_layout(lay))))
    if lay.L <= dense.MAX_TFDS_QUBITS:
        rows.append(("dense", dense.evolve_tfds_entropy(lay)))
    lines = ["engine,S"] + [f"{name},{val:.10g}" for name, val in rows]
    _emit(_out(args), "\n".join(lines) + "\n")
    vals = [v for _, v in rows]
    return 0 if max(vals) - min(vals) < 1e-8 else 1


def _cmd_renyi2(args):
    lay = layout.load(args.layout)
    region = range(args.region) if args.region_start is None else \
        range(args.region_start, args.region_start + args.region)
    s2 = dense.renyi2_counting(lay, region)
    print(f"S2_bits,{s2}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="braidcircuit",
        description="Monitored brickwall circuits with R-matrix gates: "
                    "verification suites, trajectory sampling, and sweeps.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", default=None, help="output path ('-' stdout)")

    sp = sub.add_parser("verify", help="run the gate-algebra suites")
    sp.add_argument("--c", type=float, nargs="+", default=[1.0])
    sp.add_argument("--tol", type=float, default=verify.DEFAULT_TOL)
    common(sp)
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("hopf", help="closed two-loop invariant vs c")
    sp.add_argument("--c-grid", type=_grid, required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    common(sp)
    sp.set_defaults(fn=_cmd_hopf)

    sp = sub.add_parser("link-entropy", help="entropy of one link piece")
    sp.add_argument("--piece", choices=["a", "b", "two_R", "swap_R"],
                    required=True)
    sp.add_argument("--c-grid", type=_grid, required=True)
    common(sp)
    sp.set_defaults(fn=_cmd_link_entropy)

    sp = sub.add_parser("sample-layout", help="draw and print a layout")
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--T", type=int, default=None)
    sp.add_argument("--c", type=float, default=1.0)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--r", type=float, default=0.0)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(fn=_cmd_sample_layout)

    sp = sub.add_parser("run", help="one trajectory on one engine")
    sp.add_argument("--engine", choices=sweep.ENGINES, required=True)
    sp.add_argument("--layout", default=None)
    sp.add_argument("--L", type=int, default=8)
    sp.add_argument("--T", type=int, default=None)
    sp.add_argument("--c", type=float, default=1.0)
    sp.add_argument("--p", type=float, default=0.5)
    sp.add_argument("--q", type=float, default=0.5)
    sp.add_argument("--r", type=float, default=0.0)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(fn=_cmd_run)

    sp = sub.add_parser("sweep", help="grid sweep with CSV/manifest output")
    sp.add_argument("--config", default=None, help="JSON sweep config")
    sp.add_argument("--engine", choices=sweep.ENGINES, default="loop")
    sp.add_argument("--L", type=float, nargs="+", default=[64])
    sp.add_argument("--T", type=int, default=None)
    sp.add_argument("--c", type=float, default=1.0)
    sp.add_argument("--p", type=float, nargs="+", default=[0.5])
    sp.add_argument("--q", type=float, nargs="+", default=[0.5])
    sp.add_argument("--r", type=float, nargs="+", default=[0.0])
    sp.add_argument("--samples", type=int, default=1024)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=["pooled", "independent"],
                    default="pooled")
    sp.add_argument("--pool-size", type=int, default=256)
    sp.add_argument("--workers", type=int, default=None)
    common(sp)
    sp.set_defaults(fn=_cmd_sweep)

    sp = sub.add_parser("compare-engines",
                        help="same layout on every applicable engine")
    sp.add_argument("--layout", required=True)
    common(sp)
    sp.set_defaults(fn=_cmd_compare_engines)

    sp = sub.add_parser("renyi2", help="worldline-counting Renyi-2")
    sp.add_argument("--layout", required=True)
    sp.add_argument("--region", type=int, required=True,
                    help="number of contiguous region sites")
    sp.add_argument("--region-start", type=int, default=None)
    sp.set_defaults(fn=_cmd_renyi2)
    return ap


def dispatch(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except BraidCircuitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
