"""Lattice cohomology of weighted cubical decompositions of rectangles."""

from .cohomology import compute_summary, cube_weight_alternating_sum, euler_characteristic
from .germs import WeightedHomogeneousGerm, analytic_invariants
from .hilbert import HilbertPair, verify_theorem_3_7
from .lattice import Box, Cube, LatticePath, Rectangle, WeightModel, sublevel_complex
from .paths import min_increasing_eu, path_eu_weights, path_module
from .roots import build_root, root_module

__version__ = "0.1.0"
