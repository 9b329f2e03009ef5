"""Rectangles of ratio sqrt 3 inscribed in an ellipse, against the closed form.

For the ellipse (a cos t, b sin t) the axis-aligned rectangle with vertex
parameter t has ratio (b/a) tan t, so the sqrt 3 rectangle sits at
t = atan(sqrt(3) a / b).
"""
import argparse
import math
import time

from inscribed.curve import ellipse, prepare
from inscribed.solver import SearchConfig, find_rectangles


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=float, default=2.0)
    ap.add_argument("--b", type=float, default=1.0)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--grid", type=int, default=48)
    args = ap.parse_args()

    model = prepare(ellipse(args.a, args.b))
    t0 = time.perf_counter()
    rects = find_rectangles(model, args.n, SearchConfig(grid=args.grid))
    elapsed = time.perf_counter() - t0
    print(f"{len(rects)} rectangles in {elapsed:.2f} s")
    for r in rects:
        print(f"k={r.k} ratio={r.ratio_measured:.12f} canonical={r.canonical_ratio:.12f} "
              f"residual={r.residual:.1e} params={[round(p, 9) for p in r.params]}")
    for k in range(1, args.n):
        target = math.tan(math.pi * k / (2 * args.n))
        t = math.atan(target * args.a / args.b)
        print(f"closed form k={k}: t={t:.12f} ratio {target:.12f}")


if __name__ == "__main__":
    main()
