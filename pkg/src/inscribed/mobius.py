"""Unordered pairs of circle parameters and the midpoint/power map on them.

A pair {x, y} is stored as x in [0, 2pi) and y = x + d with d in [0, pi].
That strip is a fundamental domain for the swap action, so ``y`` may exceed
2pi; it is always interpreted modulo 2pi.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curve import TWO_PI, CurveModel
from .errors import BadN

DELTA_DIAG = 0.2


@dataclass(frozen=True)
class MobiusPoint:
    x: float
    y: float

    @property
    def gap(self) -> float:
        return self.y - self.x

    @property
    def on_diagonal(self) -> bool:
        return self.y == self.x

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class MuValue:
    mid: complex
    pow: complex


def canonicalize(x: float, y: float) -> MobiusPoint:
    a = float(np.mod(x, TWO_PI))
    b = float(np.mod(y, TWO_PI))
    # np.mod can round up to exactly 2pi
    a = 0.0 if a >= TWO_PI else a
    b = 0.0 if b >= TWO_PI else b
    lo, hi = min(a, b), max(a, b)
    d = hi - lo
    if d < np.pi:
        return MobiusPoint(lo, hi)
    if d > np.pi:
        return MobiusPoint(hi, lo + TWO_PI)
    return MobiusPoint(lo, hi)


def circle_distance(a, b):
    d = np.mod(np.asarray(a, dtype=float) - np.asarray(b, dtype=float), TWO_PI)
    return np.minimum(d, TWO_PI - d)


def mobius_distance(p: MobiusPoint, q: MobiusPoint) -> float:
    """Chebyshev distance on the torus, minimised over the swap."""
    same = max(circle_distance(p.x, q.x), circle_distance(p.y, q.y))
    swapped = max(circle_distance(p.x, q.y), circle_distance(p.y, q.x))
    return float(min(same, swapped))


def ipow(z: complex, e: int) -> complex:
    """z**e for integer e >= 0 by repeated squaring."""
    result = 1 + 0j
    base = complex(z)
    while e:
        if e & 1:
            result *= base
        base *= base
        e >>= 1
    return result


def _check_n(n: int) -> None:
    if int(n) != n or n < 2:
        raise BadN(f"n must be an integer >= 2, got {n!r}")


def mu_map(model: CurveModel, n: int, p: MobiusPoint) -> MuValue:
    _check_n(n)
    gx, gy = model(p.x), model(p.y)
    return MuValue(mid=(gx + gy) / 2, pow=ipow(gy - gx, 2 * n))


def mu_jacobian(model: CurveModel, n: int, p: MobiusPoint) -> np.ndarray:
    """4x2 real Jacobian of (Re mid, Im mid, Re pow, Im pow) in (x, y)."""
    _check_n(n)
    w = model(p.y) - model(p.x)
    dx, dy = model(p.x, 1), model(p.y, 1)
    scale = 2 * n * ipow(w, 2 * n - 1)
    cols = np.array([[dx / 2, -scale * dx],
                     [dy / 2, scale * dy]])
    J = np.empty((4, 2))
    J[0], J[1] = cols[:, 0].real, cols[:, 0].imag
    J[2], J[3] = cols[:, 1].real, cols[:, 1].imag
    return J


@dataclass(frozen=True)
class ImmersionAudit:
    n: int
    grid_size: int
    delta_diag: float
    min_sigma2: float
    argmin: MobiusPoint
    diagonal_min_sigma2: float | None
    flagged: tuple[MobiusPoint, ...]

    @property
    def nondegenerate(self) -> bool:
        return self.min_sigma2 > 0


def immersion_audit(model: CurveModel, n: int, grid_size: int = 64,
                    delta_diag: float = DELTA_DIAG, flag_below: float = 1e-8) -> ImmersionAudit:
    """Scan the second singular value of the mu Jacobian over the strip.

    Off-diagonal points use gaps d in [max(delta_diag, small), pi]. The
    diagonal itself (where the power rows vanish) is reported separately
    when ``delta_diag`` is 0.
    """
    _check_n(n)
    xs = np.arange(grid_size) * (TWO_PI / grid_size)
    lo = max(delta_diag, np.pi / grid_size) if delta_diag > 0 else np.pi / grid_size
    gaps = np.linspace(lo, np.pi, grid_size)
    best, arg = np.inf, None
    flagged = []
    for x in xs:
        for d in gaps:
            p = MobiusPoint(float(x), float(x + d))
            s2 = np.linalg.svd(mu_jacobian(model, n, p), compute_uv=False)[1]
            if s2 < best:
                best, arg = s2, p
            if s2 < flag_below:
                flagged.append(p)
    diag = None
    if delta_diag == 0:
        diag = min(np.linalg.svd(mu_jacobian(model, n, MobiusPoint(float(x), float(x))),
                                 compute_uv=False)[1] for x in xs)
    return ImmersionAudit(n=n, grid_size=grid_size, delta_diag=delta_diag,
                          min_sigma2=float(best), argmin=arg,
                          diagonal_min_sigma2=None if diag is None else float(diag),
                          flagged=tuple(flagged))
