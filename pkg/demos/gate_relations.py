#!/usr/bin/env python3
"""Tour of the two-site crossing gate's algebraic identities.

Checks unitarity, braid/Yang-Baxter consistency, dual-unitarity and the
skein-style decomposition across a small parameter grid, then evaluates
the closed two-loop diagram and the entropy of the interlinked-crossing
pieces to show which features survive at the Clifford points.
"""

import numpy as np

from braidcircuit import dense, verify

GRID = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)


def main():
    print("== relation suite ==")
    reports = verify.run_verification(GRID)
    by_name = {}
    for r in reports:
        by_name.setdefault(r.name, []).append(r)
    for name, rs in by_name.items():
        worst = max(r.max_dev for r in rs)
        flag = "ok" if all(r.passed for r in rs) else "FAIL"
        print(f"  {name:<38s} max dev {worst:9.2e}  {flag}")

    print("\n== closed two-loop diagram ==")
    print(f"  {'c':>5s} {'|value|':>10s} {'phase':>8s}")
    for c in GRID:
        res = verify.hopf_invariant(c)
        print(f"  {c:5.1f} {abs(res.dense):10.6f} "
              f"{np.angle(res.dense):8.3f}")
    print("  vanishes at c = +/-1 and is maximal near c = 0: linked")
    print("  worldlines are invisible exactly at the swap-like points.")

    print("\n== entropy of closed-loop pieces ==")
    print(f"  {'c':>5s} {'two crossings':>14s} {'swap + crossing':>16s}")
    for c in (-1.0, -0.5, 0.0, 0.5, 1.0):
        print(f"  {c:5.1f} {dense.link_entropy('two_R', c):14.6f} "
              f"{dense.link_entropy('swap_R', c):16.6f}")
    print("  the pure-crossing piece is entropy-free at every Clifford")
    print("  point; replacing one crossing with a swap leaves residual")
    print("  entropy even at c = +/-1.")


if __name__ == "__main__":
    main()
