#!/usr/bin/env python3
"""Render mean entanglement versus system size with error bars.

Draws one curve per (p, q, r) combination found in the sweep CSV.  Useful
both for logarithmic growth (log-x axis) and for convergence toward the
single-bit value (S = 1 reference line).
"""

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

if __package__ in (None, ""):
    sys.path.insert(0, str(__import__("pathlib").Path(__file__).parent))
    from figio import InputError, read_rows
else:
    from .figio import InputError, read_rows


def group_curves(rows):
    if len({r["L"] for r in rows}) < 2:
        raise InputError("scaling plot needs at least two system sizes")
    curves = {}
    for r in rows:
        curves.setdefault((r["p"], r["q"], r["r"]), []).append(
            (r["L"], r["mean_S"], r["stderr_S"]))
    return {key: sorted(pts) for key, pts in curves.items()}


def render(in_path, out_path, log_x=False, reference_line=None, title=None):
    curves = group_curves(read_rows(in_path))
    fig, ax = plt.subplots(figsize=(5.2, 4.0))
    for (p, q, r), pts in sorted(curves.items()):
        sizes, means, errs = zip(*pts)
        ax.errorbar(sizes, means, yerr=errs, marker="o", capsize=3,
                    label=f"p={p:g}, q={q:g}, r={r:g}")
    if reference_line is not None:
        ax.axhline(reference_line, color="gray", linestyle="--",
                   linewidth=1, label=f"S = {reference_line:g}")
    if log_x:
        ax.set_xscale("log", base=2)
    ax.set_xlabel("L")
    ax.set_ylabel("mean S (bits)")
    ax.set_title(title or "Entanglement scaling")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="in_path", required=True)
    ap.add_argument("--out", dest="out_path", required=True)
    ap.add_argument("--log-x", action="store_true")
    ap.add_argument("--reference-line", type=float, default=None,
                    help="draw a horizontal dashed line at this S value")
    ap.add_argument("--title", default=None)
    args = ap.parse_args(argv)
    try:
        render(args.in_path, args.out_path, log_x=args.log_x,
               reference_line=args.reference_line, title=args.title)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
