"""Run reports: JSON with 17 significant digits, and SVG drawings."""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .curve import CurveModel
from .rectangle import Rectangle

PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"]


def fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite float {x!r}")
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def dumps(obj, indent: int = 2) -> str:
    """json.dumps look-alike that writes every float with 17 significant digits."""

    def enc(o, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if o is None or isinstance(o, (bool, str)):
            return json.dumps(o)
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return fmt_float(o)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f"{pad}{json.dumps(str(k))}: {enc(v, level + 1)}" for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in o):
                return "[" + ", ".join(enc(v, level) for v in o) + "]"
            return "[\n" + ",\n".join(pad + enc(v, level + 1) for v in o) + "\n" + end + "]"
        raise TypeError(f"cannot serialise {type(o).__name__}")

    return enc(obj, 0) + "\n"


def curve_digest(model: CurveModel) -> str:
    text = ";".join(f"{fmt_float(c.real)},{fmt_float(c.imag)}" for c in model.coeffs)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def rect_record(r: Rectangle) -> dict:
    return {
        "k": r.k,
        "params": list(r.params),
        "vertices": [[v.real, v.imag] for v in r.vertices],
        "ratio_measured": r.ratio_measured,
        "canonical_ratio": r.canonical_ratio,
        "residual": r.residual,
    }


@dataclass
class RunReport:
    curve_digest: str
    n: int
    config: dict
    families: dict[str, list[dict]]
    warnings: list[str] = field(default_factory=list)
    wall_time: float | None = None

    @classmethod
    def build(cls, model, n, config, rects, warnings=(), ks=None, wall_time=None):
        ks = range(1, n) if ks is None else sorted(ks)
        fams = {str(k): [rect_record(r) for r in rects if r.k == k] for k in ks}
        return cls(curve_digest=curve_digest(model), n=n, config=asdict(config),
                   families=fams, warnings=list(warnings), wall_time=wall_time)

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["wall_time"] is None:
            del d["wall_time"]
        return d

    def dumps(self) -> str:
        return dumps(self.to_dict())


def svg_document(model: CurveModel, rects, samples: int = 512) -> str:
    """One closed path for the curve, one polygon per rectangle. y points up."""
    pts = model.samples(samples)
    xs, ys = pts.real, -pts.imag
    x0, x1, y0, y1 = xs.min(), xs.max(), ys.min(), ys.max()
    mx, my = 0.1 * (x1 - x0), 0.1 * (y1 - y0)
    vb = f"{x0 - mx:.6f} {y0 - my:.6f} {x1 - x0 + 2 * mx:.6f} {y1 - y0 + 2 * my:.6f}"
    stroke = 0.004 * max(x1 - x0, y1 - y0)
    d = "M " + " L ".join(f"{x:.6f} {y:.6f}" for x, y in zip(xs, ys)) + " Z"
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vb}">',
             f'  <path d="{d}" fill="none" stroke="black" stroke-width="{stroke:.6f}"/>']
    for r in rects:
        color = PALETTE[(r.k - 1) % len(PALETTE)]
        poly = " ".join(f"{v.real:.6f},{-v.imag:.6f}" for v in r.vertices)
        lines.append(f'  <polygon points="{poly}" fill="none" stroke="{color}" '
                     f'stroke-width="{stroke:.6f}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
