"""Boundary knot of the mu-image near C x {0}, and torus-knot bookkeeping.

Near the diagonal of the Moebius strip the image of mu meets the boundary of
a thin tube around C x {0}. That level set is traced here as the chords of
fixed length epsilon; its second coordinate is normalised to the unit circle,
so the loop lives in C x S^1 and is classified by two winding numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .curve import TWO_PI, CurveModel
from .errors import BadN, BasePointOnLoop, EpsilonTooLarge, NotUnitModulus

CLOSE_TOL = 1e-9
INTEGER_TOL = 1e-6


@dataclass(frozen=True)
class BoundaryLoop:
    points: np.ndarray  # shape (m, 2) complex: (plane value, unit complex); last == first
    epsilon: float
    base_point: complex = 0j

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex)
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 4:
            raise ValueError("loop needs an (m, 2) complex array with m >= 4")
        if np.abs(np.abs(pts[:, 1]) - 1).max() > 1e-9:
            raise NotUnitModulus("second coordinates must have unit modulus")
        if np.abs(pts[0] - pts[-1]).max() > CLOSE_TOL * max(1.0, np.abs(pts[:, 0]).max()):
            raise ValueError("loop is not closed")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def reversed(self) -> "BoundaryLoop":
        return BoundaryLoop(self.points[::-1].copy(), self.epsilon, self.base_point)


@dataclass(frozen=True)
class TorusKnotId:
    p: int
    q: int
    braid_strands: int
    braid_word: tuple[int, ...]

    @property
    def name(self) -> str:
        return f"T({self.p},{self.q})"


def _check_n(n):
    if int(n) != n or n < 2:
        raise BadN(f"n must be an integer >= 2, got {n!r}")


def kn_point(n: int, g: complex) -> tuple[complex, complex]:
    _check_n(n)
    g = complex(g)
    if abs(abs(g) - 1) > 1e-12:
        raise NotUnitModulus(f"|g| = {abs(g)!r}, expected 1")
    return g, g ** (2 * n)


def kn_loop(n: int, samples: int = 512) -> BoundaryLoop:
    """The curve g -> (g, g^2n) sampled uniformly, as a closed loop."""
    _check_n(n)
    t = np.linspace(0.0, TWO_PI, samples + 1)
    g = np.exp(1j * t)
    g[-1] = g[0]
    pts = np.column_stack([g, g ** (2 * n)])
    return BoundaryLoop(pts, epsilon=0.0, base_point=0j)


def _chord_gaps(model, epsilon, xs, scan):
    """First s in (0, pi) with |gamma(x+s) - gamma(x)| = epsilon, for every x."""
    gx = model(xs)
    chord = np.vstack([np.abs(model(xs[i:i + 32, None] + scan[None, :]) - gx[i:i + 32, None])
                       for i in range(0, xs.size, 32)])
    above = chord >= epsilon
    if not above.any(axis=1).all():
        raise EpsilonTooLarge(f"no chord of length {epsilon:g} starts at some parameter")
    first = above.argmax(axis=1)
    if (first == 0).any():
        raise EpsilonTooLarge("epsilon below the scan resolution")
    for i, j in enumerate(first):
        if np.any(np.diff(chord[i, : j + 1]) <= 0):
            raise EpsilonTooLarge(
                f"chord length is not monotone up to {epsilon:g}: level set is not a graph")
    gaps = np.empty(xs.size)
    for i, (x, j) in enumerate(zip(xs, first)):
        g0 = gx[i]
        gaps[i] = optimize.brentq(lambda s: abs(model(x + s) - g0) - epsilon,
                                  scan[j - 1], scan[j], xtol=1e-14, rtol=1e-14)
    return gaps


def boundary_loop(model: CurveModel, n: int, epsilon: float, samples: int = 512,
                  scan_size: int = 2048) -> BoundaryLoop:
    """Trace the pairs {x, x+s(x)} whose chord has length ``epsilon`` and map them by mu."""
    _check_n(n)
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if epsilon >= model.diameter:
        raise EpsilonTooLarge(f"epsilon {epsilon:g} is not below the diameter {model.diameter:g}")
    xs = np.arange(samples) * (TWO_PI / samples)
    scan = np.linspace(0.0, np.pi, scan_size + 1)[1:]
    # prepend a finer ramp so small epsilon still brackets
    scan = np.concatenate([np.geomspace(scan[0] * 1e-4, scan[0], 40, endpoint=False), scan])
    gaps = _chord_gaps(model, epsilon, xs, scan)
    jumps = np.abs(np.diff(np.append(gaps, gaps[0])))
    if jumps.max() > 0.25:
        raise EpsilonTooLarge("chord gap jumps between neighbouring parameters")
    a, b = model(xs), model(xs + gaps)
    u = b - a
    direction = (u / np.abs(u)) ** (2 * n)
    direction /= np.abs(direction)
    pts = np.column_stack([(a + b) / 2, direction])
    pts = np.vstack([pts, pts[:1]])
    return BoundaryLoop(pts, epsilon=float(epsilon), base_point=model.center)


def _winding(z: np.ndarray) -> int:
    steps = np.angle(z[1:] / z[:-1])
    if np.abs(steps).max() > np.pi / 2:
        raise ValueError("loop is undersampled: angle step exceeds pi/2")
    turns = steps.sum() / TWO_PI
    k = round(turns)
    if abs(turns - k) > INTEGER_TOL:
        raise ArithmeticError(f"winding sum {turns!r} is not an integer")
    return int(k)


def winding_invariants(loop: BoundaryLoop) -> tuple[int, int]:
    """(winding of the plane part about the base point, winding of the circle part)."""
    plane = loop.points[:, 0] - loop.base_point
    if np.abs(plane).min() < 1e-9:
        raise BasePointOnLoop("loop passes through the base point")
    return _winding(plane), _winding(loop.points[:, 1])


def torus_braid_word(n: int) -> TorusKnotId:
    """T(2n, 2n-1) as the closure of (s1 s2 ... s_{2n-1})^(2n-1)."""
    _check_n(n)
    p, q = 2 * n, 2 * n - 1
    word = tuple(range(1, p)) * q
    return TorusKnotId(p=p, q=q, braid_strands=p, braid_word=word)


def braid_word_text(word) -> str:
    """One line of signed generator indices; negative means the inverse generator."""
    return " ".join(str(int(s)) for s in word)


def batson_bound(n: int) -> int:
    """Lower bound n - 1 on the nonorientable 4-genus of T(2n, 2n-1), as a cited constant."""
    _check_n(n)
    return n - 1


def is_coprime(p: int, q: int) -> bool:
    return math.gcd(p, q) == 1
