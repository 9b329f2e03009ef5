"""Seeded random smooth curves and the sweep that looks for a witness in every cell."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .curve import CurveModel, prepare
from .errors import CurveError, InscribedError
from .solver import SearchConfig, SeedLattice, search


class CorpusError(InscribedError):
    pass


@dataclass(frozen=True)
class CorpusSpec:
    count: int = 20
    seed: int = 42
    degree: int = 4
    decay: float = 0.6
    scale: float = 0.15
    max_retries: int = 100


def random_curve(rng: np.random.Generator, spec: CorpusSpec) -> CurveModel:
    """Unit circle plus a perturbation with |c_j| <= scale * decay^|j|."""
    J = spec.degree
    modes = np.arange(-J, J + 1)
    bound = spec.scale * spec.decay ** np.abs(modes)
    mags = bound * rng.uniform(0.0, 1.0, modes.size)
    phases = rng.uniform(0.0, 2 * np.pi, modes.size)
    c = mags * np.exp(1j * phases)
    c[modes == 1] = 1.0
    return CurveModel(c)


def generate_corpus(spec: CorpusSpec) -> list[CurveModel]:
    rng = np.random.default_rng(spec.seed)
    curves = []
    for i in range(spec.count):
        for _ in range(spec.max_retries):
            try:
                curves.append(prepare(random_curve(rng, spec)))
                break
            except CurveError:
                continue
        else:
            raise CorpusError(f"curve {i}: no valid draw in {spec.max_retries} attempts")
    return curves


@dataclass
class Cell:
    curve: int
    n: int
    families: list[int]
    count: int
    min_residual: float | None
    warnings: list[str] = field(default_factory=list)

    @property
    def nonempty(self) -> bool:
        return self.count > 0


def _verify_one(args) -> list[Cell]:
    index, model, n_values, config = args
    lattice = SeedLattice(model, config)
    cells = []
    for n in n_values:
        res = search(model, n, config, lattice=lattice)
        rects = res.rectangles
        cells.append(Cell(curve=index, n=n,
                          families=sorted({r.k for r in rects}),
                          count=len(rects),
                          min_residual=min((r.residual for r in rects), default=None),
                          warnings=list(res.warnings)))
    return cells


def verify_corpus(curves, n_values, config: SearchConfig = SearchConfig(),
                  jobs: int = 1) -> list[Cell]:
    """Run the search for every (curve, n); cells come back in (curve, n) order."""
    tasks = [(i, c, list(n_values), config) for i, c in enumerate(curves)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_verify_one, tasks))
    else:
        chunks = [_verify_one(t) for t in tasks]
    return [cell for chunk in chunks for cell in chunk]
