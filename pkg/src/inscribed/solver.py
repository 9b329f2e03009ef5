"""Search for inscribed rectangles of a fixed aspect family.

For family (n, k) the unknowns are four curve parameters (x, w, y, z) and the
equations are

    f1 + i f2 = (gamma(x) + gamma(y))/2 - (gamma(w) + gamma(z))/2   (/ diameter)
    f3        = |gamma(y) - gamma(x)| - |gamma(z) - gamma(w)|         (/ diameter)
    f4        = arg[(gamma(z) - gamma(w)) / (gamma(y) - gamma(x))] - pi k / n   (mod pi)

Seeds come from a regular lattice on the 4-torus of parameters; lattice local
minima of the max-norm residual are polished with Levenberg-Marquardt.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .curve import TWO_PI, CurveModel
from .errors import (DegenerateDiagonal, InscribedError, NoConvergence,
                     SingularJacobian)
from .mobius import canonicalize, mobius_distance
from .rectangle import (DIAGONAL_TOL, AspectFamily, Rectangle, dedup, family_ratios,
                        rect_from_pairs)

log = logging.getLogger(__name__)

COND_LIMIT = 1e12
MU_LIMIT = 1e16


@dataclass(frozen=True)
class SearchConfig:
    grid: int = 48
    tol_residual: float = 1e-10
    max_iter: int = 50
    damping: float = 1.0
    separation: float = 0.15
    seed: int = 0
    jitter: float = 0.0          # fraction of a lattice cell, drawn from ``seed``
    seed_threshold: float = 0.5  # lattice minima above this are not refined
    max_seeds: int = 600
    dedup_tol: float = 1e-5

    def __post_init__(self):
        if self.grid < 8:
            raise ValueError("grid must be at least 8")
        if not self.tol_residual > 0:
            raise ValueError("tol_residual must be positive")
        if not self.separation > 0:
            raise ValueError("separation must be positive")
        if not 0 < self.damping <= 1:
            raise ValueError("damping must lie in (0, 1]")


@dataclass(frozen=True)
class SystemResidual:
    f: np.ndarray

    @property
    def norm(self) -> float:
        return float(np.abs(self.f).max())


def wrap_half_pi(a):
    """Reduce an angle modulo pi into (-pi/2, pi/2]."""
    r = np.pi / 2 - np.mod(np.pi / 2 - np.asarray(a, dtype=float), np.pi)
    return float(r) if np.ndim(r) == 0 else r


def residual(model: CurveModel, family: AspectFamily, params) -> SystemResidual:
    x, w, y, z = params
    gx, gw, gy, gz = model(np.array([x, w, y, z], dtype=float))
    u, v = gy - gx, gz - gw
    diam = model.diameter
    if min(abs(u), abs(v)) < DIAGONAL_TOL * diam:
        raise DegenerateDiagonal("chord too short for the angle equation")
    dm = ((gx + gy) - (gw + gz)) / 2 / diam
    f3 = (abs(u) - abs(v)) / diam
    f4 = wrap_half_pi(np.angle(v / u) - family.angle)
    return SystemResidual(np.array([dm.real, dm.imag, f3, f4]))


def system_jacobian(model: CurveModel, family: AspectFamily, params) -> np.ndarray:
    """Analytic 4x4 Jacobian of the residual in (x, w, y, z)."""
    x, w, y, z = params
    t = np.array([x, w, y, z], dtype=float)
    gx, gw, gy, gz = model(t)
    dx, dw, dy, dz = model(t, 1)
    u, v = gy - gx, gz - gw
    diam = model.diameter
    J = np.empty((4, 4))
    dmid = np.array([dx, -dw, dy, -dz]) / 2 / diam
    J[0], J[1] = dmid.real, dmid.imag
    au, av = abs(u), abs(v)
    # d|u|/dt = Re(conj(u) du/dt) / |u|, d arg(u)/dt = Im(du/dt / u)
    J[2] = np.array([-(u.conjugate() * dx).real / au,
                     (v.conjugate() * dw).real / av,
                     (u.conjugate() * dy).real / au,
                     -(v.conjugate() * dz).real / av]) / diam
    J[3] = np.array([(dx / u).imag, -(dw / v).imag, -(dy / u).imag, (dz / v).imag])
    return J


@dataclass(frozen=True)
class NewtonResult:
    params: tuple[float, float, float, float]
    norm: float
    iterations: int
    rank_deficient: bool


def _safe_residual(model, family, params):
    try:
        return residual(model, family, params).f
    except DegenerateDiagonal:
        return None


def newton_refine(model: CurveModel, family: AspectFamily, start,
                  config: SearchConfig = SearchConfig()) -> NewtonResult:
    """Levenberg-Marquardt refinement of a seed.

    Each step solves (J^T J + mu I) s = -J^T F. The shift mu follows the usual
    gain-ratio rule: it shrinks after a good step, so the iteration becomes
    Newton near a regular root, and it grows after a rejected one, which keeps
    the step bounded where roots form a continuum (circles) or the Jacobian
    is nearly singular. ``config.damping`` scales every trial step.
    """
    p = np.array(start, dtype=float)
    F = residual(model, family, p).f
    J = system_jacobian(model, family, p)
    mu = 1e-3 * max(float(np.max(np.diag(J.T @ J))), 1e-12)
    nu = 2.0
    cond = np.linalg.cond(J)
    it = 0
    while np.abs(F).max() > config.tol_residual and it < config.max_iter:
        it += 1
        g = J.T @ F
        step = config.damping * np.linalg.solve(J.T @ J + mu * np.eye(4), -g)
        Ft = _safe_residual(model, family, p + step)
        if Ft is not None and np.all(np.isfinite(Ft)):
            actual = F @ F - Ft @ Ft
            predicted = step @ (mu * step - g)
            rho = actual / predicted if predicted > 0 else -1.0
        else:
            rho = -1.0
        if rho > 0:
            p, F = p + step, Ft
            J = system_jacobian(model, family, p)
            cond = np.linalg.cond(J)
            mu *= max(1 / 3, 1 - (2 * rho - 1) ** 3)
            nu = 2.0
        else:
            mu *= nu
            nu *= 2
            if mu > MU_LIMIT:
                err = SingularJacobian if cond > COND_LIMIT else NoConvergence
                raise err(f"step rejected repeatedly at residual {np.abs(F).max():.3e}")
    norm = float(np.abs(F).max())
    if norm > config.tol_residual:
        if cond > COND_LIMIT:
            raise SingularJacobian(f"condition number {cond:.2e}, residual {norm:.3e}")
        raise NoConvergence(f"residual {norm:.3e} after {it} iterations")
    if it:
        # one unconditional polish step if it helps; cheap and tightens the parameters
        J = system_jacobian(model, family, p)
        step = np.linalg.lstsq(J, -F, rcond=1e-13)[0]
        Ft = _safe_residual(model, family, p + step)
        if Ft is not None and np.abs(Ft).max() < norm:
            p, F, norm = p + step, Ft, float(np.abs(Ft).max())
    final_cond = np.linalg.cond(system_jacobian(model, family, p))
    return NewtonResult(params=tuple(float(v) for v in np.mod(p, TWO_PI)), norm=norm,
                        iterations=it, rank_deficient=bool(final_cond > COND_LIMIT))


class SeedLattice:
    """Residual norms on the G^4 parameter lattice, shared by all families of one n."""

    def __init__(self, model: CurveModel, config: SearchConfig):
        G = config.grid
        self.G = G
        self.h = TWO_PI / G
        theta = np.arange(G) * self.h
        g = model(theta)
        diam = model.diameter
        mid = (g[:, None] + g[None, :]) / 2
        chord = g[None, :] - g[:, None]
        length = np.abs(chord)
        direction = np.angle(chord)
        # axes (a, c, b, d): first chord (x, y) = (a, c), second (w, z) = (b, d)
        dm = mid[:, :, None, None] - mid[None, None, :, :]
        base = np.maximum(np.abs(dm.real), np.abs(dm.imag))
        del dm
        np.maximum(base, np.abs(length[:, :, None, None] - length[None, None, :, :]), out=base)
        base /= diam
        short = length < DIAGONAL_TOL * diam
        base[short] = np.inf
        base[:, :, short] = np.inf
        idx = np.arange(G)
        cd = np.abs(idx[:, None] - idx[None, :])
        cd = np.minimum(cd, G - cd)
        sep = np.minimum(
            np.maximum(cd[:, None, :, None], cd[None, :, None, :]),   # a-b, c-d
            np.maximum(cd[:, None, None, :], cd[None, :, :, None]),   # a-d, c-b
        ) * self.h
        base[sep < config.separation] = np.inf
        del sep
        self.base = base
        self.angle = (direction[None, None, :, :] - direction[:, :, None, None])
        self.theta = theta

    def seeds(self, family: AspectFamily, config: SearchConfig) -> list[tuple[float, ...]]:
        f4 = np.abs(wrap_half_pi(self.angle - family.angle))
        norm = np.maximum(self.base, f4)
        low = ndimage.minimum_filter(norm, size=3, mode="wrap")
        G = self.G
        idx = np.arange(G)
        upper = idx[:, None] < idx[None, :]
        mask = (norm == low) & (norm <= config.seed_threshold)
        mask &= upper[:, :, None, None] & upper[None, None, :, :]
        hits = np.argwhere(mask)
        order = np.lexsort((hits[:, 3], hits[:, 2], hits[:, 1], hits[:, 0],
                            norm[tuple(hits.T)]))
        hits = hits[order][: config.max_seeds]
        # lattice axes are (a, c, b, d) -> params (x, w, y, z) = (a, b, c, d)
        return [(self.theta[a], self.theta[b], self.theta[c], self.theta[d])
                for a, c, b, d in hits]


@dataclass
class SearchResult:
    n: int
    rectangles: list[Rectangle] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    seeds: dict[int, int] = field(default_factory=dict)
    failures: dict[int, int] = field(default_factory=dict)
    rank_deficient: dict[int, int] = field(default_factory=dict)


def search(model: CurveModel, n: int, config: SearchConfig = SearchConfig(),
           ks=None, lattice: SeedLattice | None = None) -> SearchResult:
    """Seed, refine and deduplicate every requested family of order ``n``.

    ``lattice`` may be reused across different n for the same model and grid.
    """
    families = family_ratios(n)
    if ks is not None:
        wanted = set(ks)
        families = [f for f in families if f.k in wanted]
    if lattice is None:
        lattice = SeedLattice(model, config)
    rng = np.random.default_rng(config.seed)
    out = SearchResult(n=n)
    found: list[Rectangle] = []
    for fam in families:
        seeds = lattice.seeds(fam, config)
        out.seeds[fam.k] = len(seeds)
        fails = singular = 0
        for s in seeds:
            start = np.array(s)
            if config.jitter:
                start = start + rng.uniform(-config.jitter, config.jitter, 4) * lattice.h
            try:
                res = newton_refine(model, fam, start, config)
            except InscribedError:
                fails += 1
                continue
            x, w, y, z = res.params
            p, q = canonicalize(x, y), canonicalize(w, z)
            if mobius_distance(p, q) < config.separation:
                continue
            try:
                rect = rect_from_pairs(model, p, q, n)
            except InscribedError:
                fails += 1
                continue
            if rect.family != fam or rect.residual > config.tol_residual:
                fails += 1
                continue
            singular += res.rank_deficient
            found.append(rect)
        out.failures[fam.k] = fails
        out.rank_deficient[fam.k] = singular
        if singular:
            out.warnings.append(f"k={fam.k}: {singular} solutions with rank-deficient Jacobian")
    rects = dedup(found, config.dedup_tol)
    out.rectangles = sorted(rects, key=lambda r: (r.k, r.residual, r.params))
    for fam in families:
        if not any(r.family == fam for r in out.rectangles):
            out.warnings.append(f"k={fam.k}: no rectangle found")
    if not out.rectangles:
        msg = f"no inscribed rectangle found for n={n}; solver shortfall"
        log.warning(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    return out


def find_rectangles(model: CurveModel, n: int, config: SearchConfig = SearchConfig(),
                    ks=None) -> list[Rectangle]:
    return search(model, n, config, ks).rectangles


def ellipse_parameter(a: float, b: float, ratio: float) -> float:
    """t with (b/a) tan t = ratio: the axis-aligned rectangle of height/width ``ratio``."""
    return math.atan(ratio * a / b)
