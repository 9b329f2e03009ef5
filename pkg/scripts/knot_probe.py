"""Boundary loop windings of a curve as epsilon shrinks."""
import argparse

from inscribed.curve import load_curve, prepare, circle
from inscribed.errors import EpsilonTooLarge
from inscribed.knot import boundary_loop, torus_braid_word, winding_invariants


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--curve", help="curve JSON; unit circle if omitted")
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--eps", type=float, nargs="+", default=[0.5, 0.2, 0.1, 0.05, 0.01])
    args = ap.parse_args()

    model = load_curve(args.curve) if args.curve else prepare(circle())
    for eps in args.eps:
        try:
            w = winding_invariants(boundary_loop(model, args.n, eps * model.diameter))
            print(f"eps={eps:g}*diam windings {w}")
        except EpsilonTooLarge as exc:
            print(f"eps={eps:g}*diam too large: {exc}")
    print(torus_braid_word(args.n).name)


if __name__ == "__main__":
    main()
