"""Inscribed rectangles of aspect ratio tan(pi k / 2n) in smooth Jordan curves."""
from .curve import (CurveModel, ValidationReport, circle, ellipse, evaluate,
                    fit_from_samples, load_curve, prepare, validate_jordan)
from .mobius import MobiusPoint, MuValue, canonicalize, immersion_audit, mu_jacobian, mu_map
from .rectangle import (AspectFamily, Rectangle, canonical_ratio, dedup, family_ratios,
                        rect_from_pairs)
from .solver import SearchConfig, find_rectangles, newton_refine, residual, search

__version__ = "0.1.0"
