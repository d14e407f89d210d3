#!/usr/bin/env python3
"""Render a log-scale heatmap of mean entanglement over the (p, q') plane.

Expects a sweep CSV holding a full rectangular (p, q') grid at a single
system size; ragged grids are rejected with the missing points listed.
"""

import argparse
import sys

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.colors import LogNorm  # noqa: E402

if __package__ in (None, ""):
    sys.path.insert(0, str(__import__("pathlib").Path(__file__).parent))
    from figio import InputError, read_rows
else:
    from .figio import InputError, read_rows

COLOR_FLOOR = 1e-3


def build_grid(rows):
    sizes = sorted({r["L"] for r in rows})
    if len(sizes) != 1:
        raise InputError(
            f"heatmap needs a single system size, found L = {sizes}")
    ps = sorted({r["p"] for r in rows})
    qps = sorted({r["q_prime"] for r in rows})
    grid = np.full((len(qps), len(ps)), np.nan)
    for r in rows:
        grid[qps.index(r["q_prime"]), ps.index(r["p"])] = r["mean_S"]
    if np.isnan(grid).any():
        missing = [f"(p={ps[j]:g}, q'={qps[i]:g})"
                   for i, j in zip(*np.nonzero(np.isnan(grid)))]
        raise InputError("ragged grid, missing " + ", ".join(missing))
    return np.asarray(ps), np.asarray(qps), grid


def render(in_path, out_path, title=None):
    ps, qps, grid = build_grid(read_rows(in_path))
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    shown = np.maximum(grid, COLOR_FLOOR)
    mesh = ax.pcolormesh(ps, qps, shown, shading="nearest",
                         norm=LogNorm(vmin=COLOR_FLOOR,
                                      vmax=max(shown.max(), COLOR_FLOOR * 10)),
                         cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="mean S (bits, log scale)")
    ax.set_xlabel("p")
    ax.set_ylabel("q'")
    ax.set_title(title or "Entanglement phase diagram")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--in", dest="in_path", required=True)
    ap.add_argument("--out", dest="out_path", required=True)
    ap.add_argument("--title", default=None)
    args = ap.parse_args(argv)
    try:
        render(args.in_path, args.out_path, args.title)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
