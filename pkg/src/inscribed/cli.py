"""Command line: ``find``, ``verify-corpus`` and ``knot``."""
from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import asdict
from pathlib import Path

from .corpus import CorpusError, CorpusSpec, generate_corpus, verify_corpus
from .curve import circle, load_curve, prepare
from .errors import EpsilonTooLarge, InscribedError
from .knot import (batson_bound, boundary_loop, braid_word_text, torus_braid_word,
                   winding_invariants)
from .report import RunReport, dumps, svg_document
from .solver import SearchConfig, search

log = logging.getLogger("inscribed")


def _write(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _config(args) -> SearchConfig:
    kw = {}
    if getattr(args, "grid", None) is not None:
        kw["grid"] = args.grid
    if getattr(args, "tol", None) is not None:
        kw["tol_residual"] = args.tol
    return SearchConfig(**kw)


def cmd_find(args) -> int:
    try:
        model = load_curve(args.curve)
        config = _config(args)
        ks = None if args.k is None else [args.k]
        t0 = time.perf_counter()
        res = search(model, args.n, config, ks=ks)
        elapsed = time.perf_counter() - t0
    except (InscribedError, OSError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    log.info("search took %.3f s", elapsed)
    report = RunReport.build(model, args.n, config, res.rectangles, res.warnings,
                             ks=ks, wall_time=elapsed if args.timing else None)
    _write(report.dumps(), args.out)
    if args.svg:
        Path(args.svg).write_text(svg_document(model, res.rectangles))
    if not res.rectangles:
        print(f"no rectangle found (seeds per family: {res.seeds}, "
              f"failed refinements: {res.failures})", file=sys.stderr)
        return 2
    return 0


def cmd_verify_corpus(args) -> int:
    spec = CorpusSpec(count=args.count, seed=args.seed, degree=args.degree,
                      decay=args.decay, scale=args.scale)
    try:
        curves = generate_corpus(spec)
    except CorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.include_circle:
        curves = [prepare(circle())] + curves
    config = _config(args)
    n_values = list(range(args.n_min, args.n_max + 1))
    t0 = time.perf_counter()
    cells = verify_corpus(curves, n_values, config, jobs=args.jobs)
    log.info("sweep took %.1f s", time.perf_counter() - t0)

    print(f"{'curve':>5} {'n':>3} {'families':<14} {'count':>5} {'min residual':>14}",
          file=sys.stderr)
    for c in cells:
        fams = ",".join(map(str, c.families)) or "-"
        res = "-" if c.min_residual is None else f"{c.min_residual:.3e}"
        print(f"{c.curve:>5} {c.n:>3} {fams:<14} {c.count:>5} {res:>14}", file=sys.stderr)
    empty = [c for c in cells if not c.nonempty]
    summary = {
        "corpus": asdict(spec),
        "include_circle": bool(args.include_circle),
        "config": asdict(config),
        "n_values": n_values,
        "cells": [{"curve": c.curve, "n": c.n, "families": c.families, "count": c.count,
                   "min_residual": c.min_residual, "warnings": c.warnings} for c in cells],
        "empty_cells": len(empty),
    }
    if args.out:
        Path(args.out).write_text(dumps(summary))
    print(f"{len(cells) - len(empty)}/{len(cells)} cells nonempty", file=sys.stderr)
    return 0 if not empty else 2


def _largest_working_epsilon(model, n, hi, samples):
    lo = 0.0
    for _ in range(30):
        mid = (lo + hi) / 2
        try:
            boundary_loop(model, n, mid, samples)
            lo = mid
        except EpsilonTooLarge:
            hi = mid
    return lo


def cmd_knot(args) -> int:
    try:
        model = load_curve(args.curve)
        loop = boundary_loop(model, args.n, args.epsilon, args.samples)
        windings = winding_invariants(loop)
        knot = torus_braid_word(args.n)
    except EpsilonTooLarge as exc:
        model = load_curve(args.curve)
        hi = min(args.epsilon, model.diameter)
        good = _largest_working_epsilon(model, args.n, hi, args.samples)
        print(f"error: EpsilonTooLarge: {exc}; try --epsilon {good / 2:.6g}", file=sys.stderr)
        return 1
    except (InscribedError, OSError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    word = braid_word_text(knot.braid_word)
    out = {
        "n": args.n,
        "epsilon": args.epsilon,
        "windings": list(windings),
        "expected_windings": [1, 2 * args.n],
        "torus_knot": {"p": knot.p, "q": knot.q, "strands": knot.braid_strands,
                       "word_length": len(knot.braid_word)},
        "braid_word": word,
        "batson_bound": batson_bound(args.n),
        "loop": [[p[0].real, p[0].imag, p[1].real, p[1].imag] for p in loop.points],
    }
    _write(dumps(out), args.out)
    if args.braid:
        Path(args.braid).write_text(word + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="inscribed",
                                 description="Inscribed rectangles of ratio tan(pi k/2n).")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("find", help="search one curve")
    f.add_argument("--curve", required=True)
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--k", type=int)
    f.add_argument("--grid", type=int)
    f.add_argument("--tol", type=float)
    f.add_argument("--out")
    f.add_argument("--svg")
    f.add_argument("--timing", action="store_true", help="record wall time in the report")
    f.set_defaults(func=cmd_find)

    v = sub.add_parser("verify-corpus", help="sweep a seeded random corpus")
    v.add_argument("--count", type=int, default=20)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--n-min", type=int, default=2)
    v.add_argument("--n-max", type=int, default=5)
    v.add_argument("--degree", type=int, default=4)
    v.add_argument("--decay", type=float, default=0.6)
    v.add_argument("--scale", type=float, default=0.15)
    v.add_argument("--grid", type=int)
    v.add_argument("--tol", type=float)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--include-circle", action="store_true")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify_corpus)

    k = sub.add_parser("knot", help="boundary loop windings and torus-knot data")
    k.add_argument("--curve", required=True)
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--epsilon", type=float, required=True)
    k.add_argument("--samples", type=int, default=512)
    k.add_argument("--out")
    k.add_argument("--braid", help="write the braid word to this file")
    k.set_defaults(func=cmd_knot)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "n", 2) is not None and args.command != "verify-corpus" and args.n < 2:
        print("error: BadN: n must be >= 2", file=sys.stderr)
        return 1
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
