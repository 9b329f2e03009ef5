"""Reference computations that do not share code paths with the library.

Curves are evaluated straight from their coefficient list, derivatives come
from finite differences or closed forms, and the rectangle oracle scans a
lattice and polishes with scipy's Levenberg-Marquardt.
"""
import math

import numpy as np
from scipy import ndimage, optimize

TWO_PI = 2 * math.pi


def gamma(coeffs, theta):
    """Direct sum over modes -J..J."""
    c = np.asarray(coeffs, dtype=complex)
    J = (c.size - 1) // 2
    th = np.asarray(theta, dtype=float)
    out = np.zeros(th.shape, dtype=complex)
    for j in range(-J, J + 1):
        out = out + c[j + J] * np.exp(1j * j * th)
    return out


def central_diff(f, x, h=1e-6):
    """Centered difference Jacobian of a real vector function."""
    x = np.asarray(x, dtype=float)
    f0 = np.asarray(f(x))
    J = np.empty((f0.size, x.size))
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        J[:, i] = (np.asarray(f(x + e)) - np.asarray(f(x - e))) / (2 * h)
    return J


def chord_ratio_on_circle(theta):
    """Side ratio of the circle rectangle whose diameters meet at angle theta."""
    side_a = 2 * math.sin(theta / 2)
    side_b = 2 * math.cos(theta / 2)
    return side_a / side_b


def diameter(coeffs, m=2048):
    z = gamma(coeffs, np.arange(m) * TWO_PI / m)
    return float(np.abs(z[:, None] - z[None, :]).max())


def _wrap(a):
    return (a + np.pi / 2) % np.pi - np.pi / 2


def oracle_residual(coeffs, diam, n, k, p):
    gx, gw, gy, gz = gamma(coeffs, np.asarray(p))
    u, v = gy - gx, gz - gw
    dm = ((gx + gy) - (gw + gz)) / 2 / diam
    return np.array([dm.real, dm.imag, (abs(u) - abs(v)) / diam,
                     _wrap(np.angle(v / u) - np.pi * k / n)])


def _circ(a, b):
    d = np.mod(np.asarray(a) - np.asarray(b), TWO_PI)
    return np.minimum(d, TWO_PI - d)


def _separated(p, sep):
    x, w, y, z = p
    same = max(_circ(x, w), _circ(y, z))
    swap = max(_circ(x, z), _circ(y, w))
    return min(same, swap) >= sep


def lattice_roots(coeffs, n, k, G=96, separation=0.15, tol=1e-10, threshold=0.5):
    """All family-k roots reachable from local minima of the G^4 lattice residual.

    The lattice is processed one x-slab at a time (three slabs in memory) so the
    96^4 grid fits comfortably.
    """
    diam = diameter(coeffs)
    th = np.arange(G) * TWO_PI / G
    g = gamma(coeffs, th)
    mid = (g[:, None] + g[None, :]) / 2
    chord = g[None, :] - g[:, None]
    length = np.abs(chord)
    ang = np.angle(chord)
    idx = np.arange(G)
    cd = np.abs(idx[:, None] - idx[None, :])
    cd = np.minimum(cd, G - cd) * (TWO_PI / G)

    def slab(a):
        # axes (c, b, d) for fixed a: first chord (a, c), second (b, d)
        dm = mid[a][:, None, None] - mid[None, :, :]
        r = np.maximum(np.abs(dm.real), np.abs(dm.imag))
        r = np.maximum(r, np.abs(length[a][:, None, None] - length[None, :, :])) / diam
        f4 = np.abs(_wrap(ang[None, :, :] - ang[a][:, None, None] - np.pi * k / n))
        r = np.maximum(r, f4)
        bad = (length[a] < 1e-8 * diam)[:, None, None] | (length < 1e-8 * diam)[None, :, :]
        sep = np.minimum(np.maximum(cd[a][None, :, None], cd[:, None, :]),
                         np.maximum(cd[a][None, None, :], cd[:, :, None]))
        r[bad | (sep < separation)] = np.inf
        return r

    def filtered(a):
        r = slab(a)
        return r, ndimage.minimum_filter(r, size=3, mode="wrap")

    starts = []
    first = filtered(0)
    prev, cur = filtered(G - 1), first
    for a in range(G):
        nxt = first if a == G - 1 else filtered(a + 1)
        # the 4-d 3x3x3x3 minimum is the min of the 3-d minima of neighbouring slabs
        low = np.minimum(np.minimum(prev[1], cur[1]), nxt[1])
        hits = np.argwhere((cur[0] == low) & (cur[0] <= threshold))
        for c, b, d in hits:
            starts.append((th[a], th[b], th[c], th[d]))
        prev, cur = cur, nxt

    roots = []
    for s in starts:
        sol = optimize.least_squares(lambda p: oracle_residual(coeffs, diam, n, k, p),
                                     np.array(s), method="lm", xtol=1e-15, ftol=1e-15,
                                     gtol=1e-15)
        p = np.mod(sol.x, TWO_PI)
        try:
            f = oracle_residual(coeffs, diam, n, k, p)
        except ZeroDivisionError:
            continue
        if np.abs(f).max() > tol or not _separated(p, separation):
            continue
        gx, gw, gy, gz = gamma(coeffs, p)
        if min(abs(gy - gx), abs(gz - gw)) < 1e-8 * diam:
            continue
        if not any(match_distance(p, q) < 1e-6 for q in roots):
            roots.append(p)
    return roots


def match_distance(p, q):
    a, b, c, d = p
    labels = [(a, b, c, d), (b, c, d, a), (c, d, a, b), (d, a, b, c)]
    labels += [t[::-1] for t in labels]
    return min(float(_circ(np.array(t), np.asarray(q)).max()) for t in labels)
