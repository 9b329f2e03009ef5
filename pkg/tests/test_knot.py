import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from inscribed.curve import circle, ellipse, prepare
from inscribed.errors import BadN, BasePointOnLoop, EpsilonTooLarge, NotUnitModulus
from inscribed.knot import (BoundaryLoop, batson_bound, boundary_loop, braid_word_text,
                            is_coprime, kn_loop, kn_point, torus_braid_word, winding_invariants)

CIRCLE = prepare(circle())


def test_kn_point_examples():
    assert kn_point(3, 1) == (1, 1)
    g, h = kn_point(3, cmath.exp(1j * math.pi / 6))
    assert h == pytest.approx(-1, abs=1e-14)
    g, h = kn_point(2, 1j)
    assert g == 1j and h == pytest.approx(1, abs=1e-15)
    with pytest.raises(NotUnitModulus):
        kn_point(3, 1.5)
    with pytest.raises(BadN):
        kn_point(1, 1)


def test_boundary_loop_on_circle():
    eps = 0.1
    loop = boundary_loop(CIRCLE, 3, eps, 512)
    # chord endpoints 2 asin(eps/2) apart; the midpoint sits at radius cos(asin(eps/2))
    radius = math.sqrt(1 - (eps / 2) ** 2)
    assert np.abs(np.abs(loop.points[:, 0]) - radius).max() <= 1e-12
    assert np.abs(np.abs(loop.points[:, 1]) - 1).max() <= 1e-12
    assert np.abs(loop.points[0] - loop.points[-1]).max() == 0


def test_boundary_loop_shrinks_to_curve():
    e = prepare(ellipse(2, 1))
    errs = []
    for eps in (0.2, 0.02, 0.002):
        loop = boundary_loop(e, 3, eps, 256)
        errs.append(np.abs(loop.points[:-1, 0] - e(np.arange(256) * 2 * np.pi / 256)).max())
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 2e-3


def test_boundary_loop_rejects_large_epsilon():
    with pytest.raises(EpsilonTooLarge):
        boundary_loop(CIRCLE, 3, 2 * CIRCLE.diameter)
    with pytest.raises(EpsilonTooLarge):
        boundary_loop(CIRCLE, 3, 10.0)


def test_windings_on_circle_and_reversal():
    loop = boundary_loop(CIRCLE, 3, 0.1, 512)
    assert winding_invariants(loop) == (1, 6)
    assert winding_invariants(loop.reversed()) == (-1, -6)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_kn_loop_windings(n):
    assert winding_invariants(kn_loop(n)) == (1, 2 * n)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_ellipse_loop_windings(n):
    e = prepare(ellipse(2, 1, center=0.3 - 0.2j))
    assert winding_invariants(boundary_loop(e, n, 0.05 * e.diameter)) == (1, 2 * n)


def test_base_point_on_loop():
    pts = np.column_stack([np.exp(1j * np.linspace(0, 2 * np.pi, 65)), np.ones(65)])
    pts[:, 0] -= pts[0, 0]
    pts[-1] = pts[0]
    with pytest.raises(BasePointOnLoop):
        winding_invariants(BoundaryLoop(pts, 0.1, 0j))


def test_loop_requires_unit_second_component():
    pts = np.column_stack([np.exp(1j * np.linspace(0, 2 * np.pi, 9)), 2 * np.ones(9)])
    with pytest.raises(NotUnitModulus):
        BoundaryLoop(pts, 0.1)


def test_braid_examples():
    t = torus_braid_word(2)
    assert (t.p, t.q, t.braid_strands) == (4, 3, 4)
    assert t.braid_word == (1, 2, 3) * 3
    assert len(t.braid_word) == 9 and sum(t.braid_word) > 0
    assert all(s > 0 for s in t.braid_word)
    assert len(torus_braid_word(3).braid_word) == 25
    assert braid_word_text(t.braid_word) == "1 2 3 1 2 3 1 2 3"
    assert braid_word_text([1, -2]) == "1 -2"
    assert t.name == "T(4,3)"


@given(st.integers(2, 30))
def test_braid_length_and_coprime(n):
    t = torus_braid_word(n)
    assert len(t.braid_word) == (2 * n - 1) ** 2
    assert is_coprime(t.p, t.q)
    assert max(t.braid_word) == t.braid_strands - 1


def test_batson_bound():
    assert batson_bound(3) == 2
    assert batson_bound(2) == 1
    assert batson_bound(10) == 9
    with pytest.raises(BadN):
        batson_bound(1)
