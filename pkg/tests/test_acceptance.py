"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion is
printed in the terminal summary.
"""
import json
import math
import time

import mpmath
import numpy as np
import pytest

from inscribed import cli
from inscribed.corpus import CorpusSpec, generate_corpus
from inscribed.curve import ellipse, save_curve
from inscribed.knot import (batson_bound, boundary_loop, kn_loop, torus_braid_word,
                            winding_invariants)
from inscribed.mobius import MobiusPoint, mu_jacobian, mu_map
from inscribed.rectangle import AspectFamily, family_ratios
from inscribed.solver import find_rectangles, residual, system_jacobian

from oracles import central_diff, gamma, lattice_roots, match_distance

SQRT3 = math.sqrt(3)
T_TALL = math.atan(2 * SQRT3)


@pytest.fixture(scope="module")
def corpus():
    return generate_corpus(CorpusSpec(count=20, seed=42))


@pytest.fixture(scope="module")
def corpus_report(tmp_path_factory):
    out = tmp_path_factory.mktemp("corpus") / "a.json"
    t0 = time.perf_counter()
    code = cli.main(["verify-corpus", "--seed", "42", "--out", str(out)])
    return code, time.perf_counter() - t0, out


def _closed_form_tuples(t):
    return [(t, math.pi - t, math.pi + t, 2 * math.pi - t),
            (math.pi - t, t, 2 * math.pi - t, math.pi + t)]


@pytest.mark.criterion(1, "ellipse a=2 b=1, n=3 witness of ratio sqrt 3")
def test_criterion_1_ellipse_witness(tmp_path):
    path, out = tmp_path / "ellipse.json", tmp_path / "report.json"
    save_curve(ellipse(2, 1), path)
    t0 = time.perf_counter()
    code = cli.main(["find", "--curve", str(path), "--n", "3", "--out", str(out)])
    elapsed = time.perf_counter() - t0
    assert code == 0
    assert elapsed < 5
    # closed form: vertices (+-2 cos t, +-sin t) with (1/2) tan t = sqrt 3
    assert 0.5 * math.tan(T_TALL) == pytest.approx(SQRT3, rel=1e-15)
    rep = json.loads(out.read_text())
    hits = [r for fam in rep["families"].values() for r in fam
            if abs(r["canonical_ratio"] - SQRT3) <= 1e-8 and r["residual"] <= 1e-10
            and min(match_distance(r["params"], q) for q in _closed_form_tuples(T_TALL)) <= 1e-6]
    assert hits


@pytest.mark.criterion(2, "corpus sweep, every (curve, n) cell nonempty")
def test_criterion_2_corpus_sweep(corpus_report):
    code, elapsed, out = corpus_report
    rep = json.loads(out.read_text())
    assert elapsed < 600
    assert len(rep["cells"]) == 80
    assert {c["n"] for c in rep["cells"]} == {2, 3, 4, 5}
    bad = [c for c in rep["cells"] if c["count"] < 1 or c["min_residual"] > 1e-8]
    assert not bad
    assert rep["empty_cells"] == 0 and code == 0


@pytest.mark.criterion(3, "family ratios equal tan(pi k / 2n), k and n-k reciprocal")
def test_criterion_3_family_ratios():
    mpmath.mp.dps = 50
    for n in range(2, 9):
        fams = family_ratios(n)
        assert [f.k for f in fams] == list(range(1, n))
        for f in fams:
            exact = mpmath.tan(mpmath.pi * f.k / (2 * n))
            err = abs(mpmath.mpf(f.ratio) - exact)
            assert err <= 1e-15 and err <= 1e-15 * exact
            assert abs(f.ratio * fams[n - f.k - 1].ratio - 1) <= 1e-15


@pytest.mark.criterion(4, "boundary loop windings are exactly (1, 2n)")
def test_criterion_4_windings(corpus):
    for n in range(2, 6):
        assert winding_invariants(kn_loop(n)) == (1, 2 * n)
        for model in corpus:
            loop = boundary_loop(model, n, 0.05 * model.diameter)
            assert winding_invariants(loop) == (1, 2 * n)


def _mu_vec(model, n):
    def f(v):
        m = mu_map(model, n, MobiusPoint(v[0], v[1]))
        return [m.mid.real, m.mid.imag, m.pow.real, m.pow.imag]
    return f


@pytest.mark.criterion(5, "analytic Jacobians match centered differences")
def test_criterion_5_jacobians(corpus):
    rng = np.random.default_rng(5)
    for model in corpus:
        diam = model.diameter
        checked = 0
        while checked < 100:
            p = rng.uniform(0, 2 * np.pi, 4)
            n = int(rng.integers(2, 6))
            fam = AspectFamily(n, int(rng.integers(1, n)))
            g = gamma(model.coeffs, p)
            if min(abs(g[2] - g[0]), abs(g[3] - g[1])) < 0.1 * diam:
                continue  # short chords
            f = residual(model, fam, p).f
            if abs(f[3]) > math.pi / 2 - 0.1:
                continue  # mod-pi branch cut of the angle equation
            J = mu_jacobian(model, n, MobiusPoint(p[0], p[2]))
            fd = central_diff(_mu_vec(model, n), [p[0], p[2]])
            assert np.linalg.norm(J - fd) <= 1e-6 * np.linalg.norm(J)
            J = system_jacobian(model, fam, p)
            fd = central_diff(lambda q: residual(model, fam, q).f, p)
            assert np.linalg.norm(J - fd) <= 1e-6 * np.linalg.norm(J)
            checked += 1


@pytest.mark.slow
@pytest.mark.criterion(6, "lattice oracle finds nothing that find misses")
def test_criterion_6_oracle_equivalence():
    curves = generate_corpus(CorpusSpec(count=10, seed=7, degree=4))
    missed = []
    for i, model in enumerate(curves):
        found = find_rectangles(model, 3)
        for k in (1, 2):
            for root in lattice_roots(model.coeffs, 3, k, G=96):
                if not any(r.k == k and match_distance(r.params, root) <= 0.05 for r in found):
                    missed.append((i, k, tuple(root)))
    assert not missed


@pytest.mark.criterion(7, "Batson bound and torus braid constants")
def test_criterion_7_constants():
    for n in range(2, 11):
        assert batson_bound(n) == n - 1
        knot = torus_braid_word(n)
        assert len(knot.braid_word) == (2 * n - 1) ** 2
        assert knot.braid_strands == 2 * n
        assert (knot.p, knot.q) == (2 * n, 2 * n - 1)


@pytest.mark.criterion(8, "verify-corpus reports are byte-identical across runs")
def test_criterion_8_determinism(corpus_report, tmp_path):
    _, _, first = corpus_report
    second = tmp_path / "b.json"
    cli.main(["verify-corpus", "--seed", "42", "--out", str(second)])
    assert first.read_bytes() == second.read_bytes()


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
