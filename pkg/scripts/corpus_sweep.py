"""Sweep a seeded random corpus over several n and tabulate solver behaviour."""
import argparse
import time

from inscribed.corpus import CorpusSpec, generate_corpus, verify_corpus
from inscribed.solver import SearchConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--scale", type=float, default=0.15)
    ap.add_argument("--grid", type=int, default=48)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    curves = generate_corpus(CorpusSpec(count=args.count, seed=args.seed, scale=args.scale))
    t0 = time.perf_counter()
    cells = verify_corpus(curves, args.n, SearchConfig(grid=args.grid), jobs=args.jobs)
    elapsed = time.perf_counter() - t0

    print(f"{'curve':>5} {'n':>3} {'rects':>5} {'families':<12} {'min residual':>12}")
    for c in cells:
        res = "-" if c.min_residual is None else f"{c.min_residual:.1e}"
        print(f"{c.curve:>5} {c.n:>3} {c.count:>5} {','.join(map(str, c.families)):<12} {res:>12}")
    empty = sum(not c.nonempty for c in cells)
    print(f"{len(cells) - empty}/{len(cells)} cells nonempty, {elapsed:.1f} s")
    for n in args.n:
        row = [c for c in cells if c.n == n]
        full = sum(len(c.families) == n - 1 for c in row)
        print(f"n={n}: every family found on {full}/{len(row)} curves")


if __name__ == "__main__":
    main()
