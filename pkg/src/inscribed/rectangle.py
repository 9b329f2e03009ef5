"""Aspect-ratio families and rectangles assembled from two chords.

Two chords with a common midpoint and equal length are the diagonals of an
inscribed rectangle. If the directed diagonals meet at angle theta in (0, pi)
the side ratio is tan(theta / 2); family k of order n is theta = pi k / n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curve import TWO_PI, CurveModel
from .errors import BadN, DegenerateDiagonal, FamilyMismatch, NonpositiveRatio, SamePair
from .mobius import MobiusPoint, canonicalize, circle_distance, mobius_distance

FAMILY_REJECT = 0.1
PAIR_SEPARATION = 1e-6
DIAGONAL_TOL = 1e-8


@dataclass(frozen=True, order=True)
class AspectFamily:
    n: int
    k: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise BadN(f"n must be an integer >= 2, got {self.n!r}")
        if not 1 <= self.k <= self.n - 1:
            raise BadN(f"k must lie in 1..{self.n - 1}, got {self.k!r}")

    @property
    def angle(self) -> float:
        """Diagonal angle pi k / n."""
        return math.pi * self.k / self.n

    @property
    def ratio(self) -> float:
        # go through the smaller angle so that k and n-k are exact reciprocals
        n, k = self.n, self.k
        if 2 * k == n:
            return 1.0
        if 2 * k < n:
            return math.tan(math.pi * k / (2 * n))
        return 1.0 / math.tan(math.pi * (n - k) / (2 * n))


def family_ratios(n: int) -> list[AspectFamily]:
    if int(n) != n or n < 2:
        raise BadN(f"n must be an integer >= 2, got {n!r}")
    return [AspectFamily(n, k) for k in range(1, n)]


def canonical_ratio(r: float) -> float:
    if not r > 0:
        raise NonpositiveRatio(f"aspect ratio must be positive, got {r!r}")
    return max(r, 1.0 / r)


@dataclass(frozen=True)
class Rectangle:
    """Inscribed rectangle with vertices gamma(x), gamma(w), gamma(y), gamma(z).

    (x, y) and (w, z) are the diagonals, listed in traversal order.
    """

    params: tuple[float, float, float, float]
    vertices: tuple[complex, complex, complex, complex]
    family: AspectFamily
    residual: float
    ratio_measured: float

    @property
    def k(self) -> int:
        return self.family.k

    @property
    def canonical_ratio(self) -> float:
        return canonical_ratio(self.ratio_measured)

    @property
    def center(self) -> complex:
        return sum(self.vertices) / 4

    def sides(self) -> tuple[float, float]:
        v = self.vertices
        return abs(v[1] - v[0]), abs(v[2] - v[1])


def rect_from_pairs(model: CurveModel, p: MobiusPoint, q: MobiusPoint, n: int,
                    separation: float = PAIR_SEPARATION) -> Rectangle:
    if mobius_distance(p, q) < separation:
        raise SamePair("the two chords coincide")
    diam = model.diameter
    x, y = p.x, p.y
    w, z = q.x, q.y
    gx, gy, gw, gz = model(np.array([x, y, w, z]))
    u, v = gy - gx, gz - gw
    if min(abs(u), abs(v)) < DIAGONAL_TOL * diam:
        raise DegenerateDiagonal("diagonal shorter than tolerance")
    theta = math.atan2((v / u).imag, (v / u).real)
    if theta <= 0:
        # orient the second diagonal so the angle lands in (0, pi]
        w, z, gw, gz = z, w, gz, gw
        theta += math.pi
    theta = min(theta, math.pi)
    k = int(round(theta * n / math.pi))
    k = min(max(k, 1), n - 1)
    if abs(theta - math.pi * k / n) > FAMILY_REJECT:
        raise FamilyMismatch(f"diagonal angle {theta:.4f} is far from every multiple of pi/{n}")
    mid_gap = abs((gx + gy) / 2 - (gw + gz) / 2)
    len_gap = abs(abs(u) - abs(v))
    residual = max(mid_gap / diam, len_gap / diam, abs(theta - math.pi * k / n))
    return Rectangle(params=wrap_params((x, w, y, z)), vertices=(gx, gw, gy, gz),
                     family=AspectFamily(n, k), residual=float(residual),
                     ratio_measured=math.tan(theta / 2))


def _relabelings(params):
    a, b, c, d = params
    cyc = [(a, b, c, d), (b, c, d, a), (c, d, a, b), (d, a, b, c)]
    return cyc + [t[::-1] for t in cyc]


def param_distance(r: Rectangle, s: Rectangle) -> float:
    """Max circle distance between parameter tuples, minimised over relabelings."""
    target = np.array(s.params)
    return float(min(circle_distance(np.array(lab), target).max()
                     for lab in _relabelings(r.params)))


def dedup(rects, tol_param: float = 1e-5) -> list[Rectangle]:
    """Collapse relabelled copies of the same rectangle within a family."""
    kept: list[Rectangle] = []
    for r in sorted(rects, key=lambda r: (r.residual, r.family)):
        if not any(r.family == s.family and param_distance(r, s) <= tol_param for s in kept):
            kept.append(r)
    return sorted(kept, key=lambda r: (r.k, r.params[0]))


def rect_with_canonical_pairs(model: CurveModel, params, n: int, **kw) -> Rectangle:
    """rect_from_pairs on the chords (x, y) and (w, z) of a parameter 4-tuple."""
    x, w, y, z = params
    return rect_from_pairs(model, canonicalize(x, y), canonicalize(w, z), n, **kw)


def wrap_params(params) -> tuple[float, ...]:
    return tuple(float(np.mod(t, TWO_PI)) for t in params)
