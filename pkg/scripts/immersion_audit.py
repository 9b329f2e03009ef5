"""Smallest singular value of the mu Jacobian over the Mobius strip.

Prints the minimum of sigma_2 off a band around the diagonal for each curve,
so one can see how close mu comes to failing to be an immersion.
"""
import argparse

from inscribed.corpus import CorpusSpec, generate_corpus
from inscribed.curve import circle, ellipse, prepare
from inscribed.mobius import immersion_audit


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--grid", type=int, default=64)
    ap.add_argument("--delta", type=float, default=0.2, help="diagonal band to skip")
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    named = [("circle", prepare(circle())), ("ellipse 2x1", prepare(ellipse(2, 1)))]
    named += [(f"corpus {i}", m) for i, m in
              enumerate(generate_corpus(CorpusSpec(count=args.count, seed=args.seed)))]
    for name, model in named:
        rep = immersion_audit(model, args.n, grid_size=args.grid, delta_diag=args.delta)
        print(f"{name:<12} min sigma2 {rep.min_sigma2:.4e}  flagged {len(rep.flagged)}")


if __name__ == "__main__":
    main()
