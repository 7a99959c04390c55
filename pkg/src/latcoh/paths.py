"""Path lattice cohomology and minimisation over increasing paths."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .cohomology import compute_summary
from .errors import DomainError, InvariantError, ResourceError
from .lattice import LatticePath, Point, WeightModel, shift

__all__ = [
    "LatticePath",
    "PathModule",
    "path_module",
    "path_eu_weights",
    "increasing_paths",
    "count_increasing_paths",
    "min_increasing_eu",
    "DEFAULT_BUDGET",
]

# exhaustive enumeration allowed up to this many unit steps (sum of c_v)
DEFAULT_BUDGET = 12


@dataclass(frozen=True)
class PathModule:
    """Degree-0 data of ``H^0(γ, w)``: ``T^+_{2m}`` plus reduced ranks."""

    min_level: int
    components: dict[int, int]
    u_ranks: dict[int, int]

    @property
    def reduced_rank(self) -> int:
        return sum(c - 1 for c in self.components.values())

    @property
    def eu(self) -> int:
        return -self.min_level + self.reduced_rank

    def to_dict(self):
        return {
            "min_level": self.min_level,
            "tower_degree": 2 * self.min_level,
            "levels": [
                {"n": n, "degree": 2 * n, "components": c} for n, c in sorted(self.components.items())
            ],
            "reduced_rank": self.reduced_rank,
            "eu": self.eu,
        }


def _check_inside(path: LatticePath, model: WeightModel) -> None:
    if path.rank != model.rect.rank:
        raise DomainError(f"path rank {path.rank} != model rank {model.rect.rank}")
    for p in path.points:
        if not model.rect.contains(p):
            raise DomainError(f"path point {p} outside rectangle [0, {model.rect.upper}]")


def path_module(path: LatticePath, model: WeightModel) -> PathModule:
    """Cohomology of the sublevel sets of the 1-complex traced by ``path``."""
    _check_inside(path, model)
    summary = compute_summary(model, path)
    for lv in summary.levels:
        if any(lv.betti[1:]):
            raise InvariantError(f"path sublevel set {lv.n} has higher cohomology {lv.betti}")
    comps = {lv.n: lv.components for lv in summary.levels}
    u = {lv.n: summary.u_rank(lv.n, 0) for lv in summary.levels[:-1]}
    return PathModule(summary.min_level, comps, u)


def path_eu_weights(path: LatticePath, model: WeightModel) -> int:
    """``-w0(0) + Σ_i max(0, w0(x_i) - w0(x_{i+1}))``."""
    _check_inside(path, model)
    w = [model[p] for p in path.points]
    return -w[0] + sum(max(0, a - b) for a, b in zip(w, w[1:]))


def count_increasing_paths(c: Point) -> int:
    return math.factorial(sum(c)) // math.prod(math.factorial(x) for x in c)


def increasing_paths(c: Point) -> Iterator[tuple[Point, ...]]:
    """All increasing paths from 0 to ``c`` in lexicographic order."""
    rank = len(c)
    start = (0,) * rank
    # larger direction index gives the lexicographically smaller next point
    order = list(reversed(range(rank)))

    def walk(prefix):
        cur = prefix[-1]
        if cur == c:
            yield tuple(prefix)
            return
        for v in order:
            if cur[v] < c[v]:
                prefix.append(shift(cur, (v,)))
                yield from walk(prefix)
                prefix.pop()

    yield from walk([start])


@dataclass(frozen=True)
class MinPathResult:
    eu: int
    witness: LatticePath
    method: str  # "exhaustive" or "dp"

    def to_dict(self):
        return {"eu": self.eu, "witness": [list(p) for p in self.witness.points], "method": self.method}


def _exhaustive_min(model: WeightModel) -> tuple[int, tuple[Point, ...]]:
    best = None
    for pts in increasing_paths(model.rect.upper):
        w = [model[p] for p in pts]
        eu = -w[0] + sum(max(0, a - b) for a, b in zip(w, w[1:]))
        if best is None or eu < best[0]:
            best = (eu, pts)
    return best


def _dp_min(model: WeightModel) -> tuple[int, tuple[Point, ...]]:
    # The cost is a sum of edge terms, so backward DP is exact; among equal
    # costs the smallest successor yields the lexicographically smallest path.
    c = model.rect.upper
    rank = len(c)
    best: dict[Point, tuple[int, Point | None]] = {c: (0, None)}
    for p in sorted(model.rect.points(), reverse=True):
        if p == c:
            continue
        options = []
        for v in range(rank):
            if p[v] < c[v]:
                q = shift(p, (v,))
                options.append((max(0, model[p] - model[q]) + best[q][0], q))
        best[p] = min(options)
    start = (0,) * rank
    pts = [start]
    while pts[-1] != c:
        pts.append(best[pts[-1]][1])
    return best[start][0] - model[start], tuple(pts)


def min_increasing_eu(
    model: WeightModel, budget: int = DEFAULT_BUDGET, fallback: bool = True
) -> MinPathResult:
    """Minimum path eu over increasing paths ``0 -> c``.

    Exhaustive when ``sum(c) <= budget``; otherwise a lattice DP (exact for
    this edge-additive cost) unless ``fallback`` is off.
    """
    steps = sum(model.rect.upper)
    if steps <= budget:
        eu, pts = _exhaustive_min(model)
        return MinPathResult(eu, LatticePath(pts), "exhaustive")
    if not fallback:
        raise ResourceError(f"{steps} unit steps exceed the enumeration budget {budget}")
    eu, pts = _dp_min(model)
    return MinPathResult(eu, LatticePath(pts), "dp")
