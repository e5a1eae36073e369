"""Numerically located (S, D) frontier per N, compared with the generalized ellipse."""

import argparse

import numpy as np

from tiemzi import complementarity as comp


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ratios", type=int, nargs="+", default=[1, 2, 3, 5, 10])
    ap.add_argument("--points", type=int, default=21)
    args = ap.parse_args()

    for n in args.ratios:
        curve = comp.frontier_curve(n, args.points)
        ellipse = comp.ellipse_sensitivity(curve.d, n)
        gap = ellipse - curve.s
        print(f"N={n:3d}  max(S_ellipse - S_frontier) = {gap.max():.3e}   "
              f"min = {gap.min():.3e}   frontier area = {curve.area:.6f}   "
              f"ellipse area = {comp.first_quadrant_area(n):.6f}")
        if n not in (1, 3):
            i = int(np.argmax(gap))
            print(f"        widest gap at D={curve.d[i]:.3f}: S={curve.s[i]:.6f} vs {ellipse[i]:.6f}")


if __name__ == "__main__":
    main()
