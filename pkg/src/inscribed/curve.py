"""Smooth Jordan curves stored as truncated Fourier series.

A curve is gamma(theta) = sum_j c_j exp(i j theta) for j = -J..J, so it is
exactly 2*pi periodic and every derivative is available in closed form.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy import optimize

from .errors import CurveError, DegenerateVelocity, SelfIntersecting, TooFewSamples

TWO_PI = 2.0 * np.pi

#: thresholds are multiplied by the curve diameter
SPEED_TOL = 1e-6
CHORD_TOL = 1e-6
DELTA_SEP = 0.1
MIN_FILE_SAMPLES = 16


@dataclass(frozen=True)
class ValidationReport:
    min_speed: float
    min_chord: float
    diameter: float
    grid_size: int
    delta_sep: float
    reversed: bool = False
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return (self.min_speed > SPEED_TOL * self.diameter
                and self.min_chord > CHORD_TOL * self.diameter)


@dataclass(frozen=True, eq=False)
class CurveModel:
    """Trigonometric polynomial of degree J.

    ``coeffs[j + J]`` holds c_j. Instances are immutable; ``report`` is set
    once the curve has been through :func:`validate_jordan`.
    """

    coeffs: np.ndarray
    report: ValidationReport | None = field(default=None, compare=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size % 2 == 0 or c.size < 3:
            raise CurveError("coefficient array must have odd length 2J+1 with J >= 1")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_coeffs(cls, coeffs, j_min: int | None = None) -> "CurveModel":
        """Build from coefficients listed for j = j_min, j_min+1, ...

        Missing modes are zero-padded to a symmetric range -J..J.
        """
        c = np.asarray(coeffs, dtype=complex).ravel()
        if j_min is None:
            j_min = -(c.size // 2)
        j_max = j_min + c.size - 1
        J = max(abs(j_min), abs(j_max), 1)
        full = np.zeros(2 * J + 1, dtype=complex)
        full[j_min + J: j_max + J + 1] = c
        return cls(full)

    @property
    def degree(self) -> int:
        return (self.coeffs.size - 1) // 2

    @property
    def modes(self) -> np.ndarray:
        J = self.degree
        return np.arange(-J, J + 1)

    def coeff(self, j: int) -> complex:
        J = self.degree
        return complex(self.coeffs[j + J]) if -J <= j <= J else 0j

    def __call__(self, theta, order: int = 0):
        """gamma (order 0), gamma' (1) or gamma'' (2) at ``theta``."""
        if order not in (0, 1, 2):
            raise ValueError("order must be 0, 1 or 2")
        modes = self.modes
        weights = self.coeffs * (1j * modes) ** order
        th = np.asarray(theta, dtype=float)
        out = np.exp(1j * np.multiply.outer(th, modes)) @ weights
        return complex(out) if th.ndim == 0 else out

    def samples(self, count: int) -> np.ndarray:
        return self(np.arange(count) * (TWO_PI / count))

    @cached_property
    def diameter(self) -> float:
        pts = self.samples(512)
        return float(np.abs(pts[:, None] - pts[None, :]).max())

    @property
    def signed_area(self) -> float:
        # Green's theorem on the Fourier series
        return float(np.pi * np.sum(self.modes * np.abs(self.coeffs) ** 2))

    @property
    def center(self) -> complex:
        """Mean of gamma over a uniform parameter grid (the c_0 term)."""
        return self.coeff(0)

    def reversed(self) -> "CurveModel":
        return CurveModel(self.coeffs[::-1].copy())

    def with_report(self, report: ValidationReport) -> "CurveModel":
        return replace(self, report=report)


def evaluate(model: CurveModel, theta, order: int = 0):
    return model(theta, order)


def _circle_dist(a, b):
    d = np.mod(np.asarray(a) - np.asarray(b), TWO_PI)
    return np.minimum(d, TWO_PI - d)


def _refine_speed(model, theta0, h):
    res = optimize.minimize_scalar(
        lambda t: abs(model(t, 1)) ** 2, bounds=(theta0 - h, theta0 + h),
        method="bounded", options={"xatol": 1e-12})
    return min(abs(model(theta0, 1)), float(np.sqrt(max(res.fun, 0.0))))


def _refine_chord(model, s0, t0, delta_sep):
    def fun(v):
        d = model(v[1]) - model(v[0])
        g0 = -2.0 * (d.conjugate() * model(v[0], 1)).real
        g1 = 2.0 * (d.conjugate() * model(v[1], 1)).real
        return abs(d) ** 2, np.array([g0, g1])

    res = optimize.minimize(fun, np.array([s0, t0]), jac=True, method="BFGS",
                            options={"gtol": 1e-14})
    s, t = res.x
    if _circle_dist(s, t) < delta_sep:
        return np.inf
    return abs(model(t) - model(s))


def validate_jordan(model: CurveModel, grid_size: int = 512,
                    delta_sep: float = DELTA_SEP) -> ValidationReport:
    """Check nonvanishing velocity and injectivity on a grid, with local refinement.

    Raises DegenerateVelocity or SelfIntersecting; returns the report otherwise.
    """
    if grid_size < 64:
        raise ValueError("grid_size must be at least 64")
    h = TWO_PI / grid_size
    theta = np.arange(grid_size) * h
    pts = model(theta)
    diam = float(np.abs(pts[:, None] - pts[None, :]).max())
    if not diam > 0:
        raise DegenerateVelocity("curve collapses to a point (zero diameter)")

    speed = np.abs(model(theta, 1))
    i = int(np.argmin(speed))
    min_speed = _refine_speed(model, theta[i], h)

    chord = np.abs(pts[:, None] - pts[None, :])
    far = _circle_dist(theta[:, None], theta[None, :]) >= delta_sep
    chord = np.where(far, chord, np.inf)
    min_chord = float(chord.min())
    # a crossing can hide between grid nodes; polish the closest candidates
    flat = np.argsort(chord, axis=None)[:16]
    for idx in flat:
        a, b = np.unravel_index(idx, chord.shape)
        if a < b:
            min_chord = min(min_chord, _refine_chord(model, theta[a], theta[b], delta_sep))

    report = ValidationReport(min_speed=float(min_speed), min_chord=float(min_chord),
                              diameter=diam, grid_size=grid_size, delta_sep=delta_sep,
                              reversed=model.report.reversed if model.report else False,
                              notes=model.report.notes if model.report else ())
    if not report.min_speed > SPEED_TOL * diam:
        raise DegenerateVelocity(
            f"min |gamma'| = {report.min_speed:.3e} below {SPEED_TOL:g} x diameter")
    if not report.min_chord > CHORD_TOL * diam:
        raise SelfIntersecting(
            f"min chord = {report.min_chord:.3e} below {CHORD_TOL:g} x diameter")
    return report


def prepare(model: CurveModel, grid_size: int = 512,
            delta_sep: float = DELTA_SEP) -> CurveModel:
    """Orient counterclockwise, validate, and attach the report."""
    notes = []
    rev = False
    if model.signed_area < 0:
        model = model.reversed()
        rev = True
        notes.append("negative signed area: parameterization reversed")
    report = validate_jordan(model, grid_size, delta_sep)
    report = replace(report, reversed=rev, notes=tuple(notes))
    return model.with_report(report)


def fit_from_samples(samples, degree: int, validate: bool = True) -> CurveModel:
    """Degree-J trigonometric least-squares fit to uniformly spaced samples.

    With N >= 2J+1 samples the exponentials are orthogonal on the sample grid,
    so the least-squares fit is the truncated DFT (exact interpolation when
    N = 2J+1).
    """
    z = _as_complex_points(samples)
    if degree < 1:
        raise ValueError("degree must be positive")
    if z.size < 2 * degree + 1:
        raise TooFewSamples(f"{z.size} samples cannot determine a degree-{degree} fit")
    N = z.size
    spectrum = np.fft.fft(z) / N
    j = np.arange(-degree, degree + 1)
    model = CurveModel(spectrum[np.mod(j, N)])
    return prepare(model) if validate else model


def _as_complex_points(samples) -> np.ndarray:
    arr = np.asarray(samples)
    if np.iscomplexobj(arr):
        return arr.astype(complex).ravel()
    arr = np.asarray(arr, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise CurveError("samples must be complex values or (x, y) pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def circle(radius: float = 1.0, center: complex = 0j) -> CurveModel:
    return CurveModel.from_coeffs([center, radius], j_min=0)


def ellipse(a: float, b: float, center: complex = 0j) -> CurveModel:
    """Axis-aligned ellipse (a cos t, b sin t)."""
    return CurveModel.from_coeffs([(a - b) / 2, center, (a + b) / 2], j_min=-1)


# curve JSON files

def curve_from_dict(data: dict, validate: bool = True) -> CurveModel:
    kind = data.get("type")
    if kind == "fourier":
        coeffs = [complex(re, im) for re, im in data["coeffs"]]
        if len(coeffs) == 0:
            raise CurveError("empty coefficient list")
        j_min = int(data.get("j_min", -(len(coeffs) // 2)))
        model = CurveModel.from_coeffs(coeffs, j_min)
        return prepare(model) if validate else model
    if kind == "samples":
        pts = np.asarray(data["points"], dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise CurveError("points must be a list of [x, y] pairs")
        if len(pts) < MIN_FILE_SAMPLES:
            raise TooFewSamples(f"need at least {MIN_FILE_SAMPLES} points, got {len(pts)}")
        if np.allclose(pts[0], pts[-1]):
            raise CurveError("first point must not be repeated at the end")
        degree = int(data.get("degree", min((len(pts) - 1) // 2, 24)))
        return fit_from_samples(pts, degree, validate=validate)
    raise CurveError(f"unknown curve type {kind!r}")


def curve_to_dict(model: CurveModel) -> dict:
    return {"type": "fourier",
            "coeffs": [[float(c.real), float(c.imag)] for c in model.coeffs],
            "j_min": -model.degree}


def load_curve(path, validate: bool = True) -> CurveModel:
    with open(Path(path)) as fh:
        data = json.load(fh)
    return curve_from_dict(data, validate=validate)


def save_curve(model: CurveModel, path) -> None:
    with open(Path(path), "w") as fh:
        json.dump(curve_to_dict(model), fh)
