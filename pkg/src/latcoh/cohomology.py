"""The level tower ``{S_n}`` and its graded Z[U]-module summary.

Level ``n`` contributes ``H^q(S_n, Z)`` in homogeneous degree ``2n``; the
U-action is restriction ``H^q(S_{n+1}) -> H^q(S_n)``.  Levels are
materialised from the minimal weight up to the saturation level (maximal
cube weight of the region); every level above that is reported as stable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any

from .errors import DomainError, InvariantError, PreconditionError
from .homology import (
    HomologySummary,
    _induced_rank,
    boundary_matrices,
    component_labels,
    homology,
)
from .lattice import (
    CubicalComplex,
    Point,
    Region,
    WeightModel,
    region_cubes,
    shift,
)
from .parallel import pmap


@dataclass(frozen=True)
class LevelData:
    """Cohomology of one sublevel set ``S_n`` (restricted to the region)."""

    n: int
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    components: int
    stable: bool = False

    @property
    def degree(self) -> int:
        return 2 * self.n

    def reduced_rank(self, q: int) -> int:
        if q == 0:
            return max(self.components - 1, 0)
        return self.betti[q] if q < len(self.betti) else 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "degree": self.degree,
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "components": self.components,
        }


@dataclass(frozen=True)
class GradedModuleSummary:
    """Finite description of ``⊕_n H^q(S_n, Z)`` together with U-ranks.

    ``u_ranks[i][q]`` is the rank of ``H^q(S_{m+i+1}) -> H^q(S_{m+i})``
    where ``m = min_level``.
    """

    min_level: int
    max_level: int
    levels: tuple[LevelData, ...]
    u_ranks: tuple[tuple[int, ...], ...]
    base_point: Point

    @property
    def top_degree(self) -> int:
        return len(self.levels[0].betti) - 1

    def level(self, n: int) -> LevelData:
        if n < self.min_level:
            width = len(self.levels[0].betti)
            return LevelData(n, (0,) * width, ((),) * width, 0)
        if n >= self.max_level:
            return replace(self.levels[-1], n=n, stable=n > self.max_level)
        return self.levels[n - self.min_level]

    def u_rank(self, n: int, q: int) -> int:
        """Rank of the restriction from level ``n + 1`` to level ``n``."""
        if n < self.min_level:
            return 0
        if n >= self.max_level:
            return self.levels[-1].betti[q]
        return self.u_ranks[n - self.min_level][q]

    def reduced_rank(self, q: int, n: int) -> int:
        return self.level(n).reduced_rank(q)

    def total_reduced_rank(self, q: int) -> int:
        return sum(lv.reduced_rank(q) for lv in self.levels)

    def to_dict(self) -> dict[str, Any]:
        return {
            "min_level": self.min_level,
            "max_level": self.max_level,
            "base_point": list(self.base_point),
            "tower": {"degree": 2 * self.min_level},
            "levels": [lv.to_dict() for lv in self.levels],
            "u_ranks": [
                {"from": self.min_level + i + 1, "to": self.min_level + i, "ranks": list(r)}
                for i, r in enumerate(self.u_ranks)
            ],
            "eu": euler_characteristic(self),
        }


def _pad(values, width, fill):
    values = tuple(values)
    return values + (fill,) * (width - len(values))


def _analyse_level(cx):
    data = boundary_matrices(cx)
    hom: HomologySummary = homology(data)
    labels = component_labels(cx)
    return data, hom, labels


def _u_ranks_pair(args):
    sub, sup, sub_info, sup_info, width = args
    sub_data, sub_hom, sub_labels = sub_info
    sup_data, sup_hom, sup_labels = sup_info
    ranks = [len({sup_labels[root] for root in set(sub_labels.values())})]
    for q in range(1, width):
        bs = sub_hom.betti[q] if q < len(sub_hom.betti) else 0
        bt = sup_hom.betti[q] if q < len(sup_hom.betti) else 0
        if bs == 0 or bt == 0:
            ranks.append(0)
            continue
        ranks.append(
            _induced_rank(
                bs,
                sub.cells_of_dim(q),
                sup.cells_of_dim(q),
                sup_data.boundary(q + 1),
                sub_data.boundary(q + 1),
            )
        )
    return tuple(ranks)


def level_complexes(model: WeightModel, region: Region = None) -> dict[int, CubicalComplex]:
    """``S_n ∩ region`` for every level from the minimum to saturation."""
    weighted = sorted(
        ((model.cube_weight(c), c) for c in region_cubes(model, region)),
        key=lambda wc: wc[0],
    )
    lo, hi = weighted[0][0], weighted[-1][0]
    out = {}
    cut = 0
    for n in range(lo, hi + 1):
        while cut < len(weighted) and weighted[cut][0] <= n:
            cut += 1
        out[n] = CubicalComplex.from_cubes(c for _, c in weighted[:cut])
    return out


def compute_summary(
    model: WeightModel, region: Region = None, workers: int | None = 1
) -> GradedModuleSummary:
    complexes = level_complexes(model, region)
    width = model.rect.rank + 1
    ns = sorted(complexes)
    infos = pmap(_analyse_level, [complexes[n] for n in ns], workers)
    pairs = [
        (complexes[n], complexes[n + 1], infos[i], infos[i + 1], width)
        for i, n in enumerate(ns[:-1])
    ]
    u_ranks = tuple(pmap(_u_ranks_pair, pairs, workers))
    levels = []
    for n, (_, hom, labels) in zip(ns, infos):
        levels.append(
            LevelData(
                n=n,
                betti=_pad(hom.betti, width, 0),
                torsion=_pad(hom.cohomology_torsion(), width, ()),
                components=len(set(labels.values())),
            )
        )
    base = min(complexes[ns[0]].vertices)
    return GradedModuleSummary(ns[0], ns[-1], tuple(levels), u_ranks, base)


def euler_characteristic(summary: GradedModuleSummary) -> int:
    """``-min w + Σ_q (-1)^q rank H^q_red``."""
    top = summary.levels[-1]
    if any(top.reduced_rank(q) for q in range(len(top.betti))):
        raise DomainError("region is not acyclic at saturation; reduced ranks are infinite")
    total = -summary.min_level
    for q in range(len(top.betti)):
        total += (-1) ** q * summary.total_reduced_rank(q)
    return total


def cube_weight_alternating_sum(model: WeightModel, region: Region = None) -> int:
    """``Σ_□ (-1)^(dim □ + 1) w(□)`` over all cubes of the region."""
    return sum((-1) ** (c.dim + 1) * model.cube_weight(c) for c in region_cubes(model, region))


@dataclass(frozen=True)
class StabilityReport:
    ok: bool
    direction: int
    discrepancy: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {"ok": self.ok, "direction": self.direction, "discrepancy": self.discrepancy}


def check_c_stability(model: WeightModel, extended: WeightModel, v: int) -> StabilityReport:
    """Compare the tower on ``[0, c]`` with the tower on ``[0, c + E_v]``.

    The extension must agree with ``model`` on the old rectangle and satisfy
    ``w0(l) >= w0(l - E_v)`` on the new face ``l_v = c_v + 1``.
    """
    if extended.rect != model.rect.grown(v):
        raise PreconditionError(
            f"extended rectangle {extended.rect.upper} is not {model.rect.upper} grown along {v}"
        )
    for p, w in model.items():
        if extended[p] != w:
            raise PreconditionError(f"extension changes the weight at {p}")
    top = extended.rect.upper[v]
    for p, w in extended.items():
        if p[v] == top:
            below = shift(p, (v,), -1)
            if w < extended[below]:
                raise PreconditionError(
                    f"retraction hypothesis fails at {p}: w0={w} < w0{below}={extended[below]}"
                )
    a = compute_summary(model)
    b = compute_summary(extended)
    if a.min_level != b.min_level:
        return StabilityReport(False, v, f"minimal levels differ: {a.min_level} vs {b.min_level}")
    for n in range(a.min_level, max(a.max_level, b.max_level) + 1):
        la, lb = a.level(n), b.level(n)
        for name in ("betti", "torsion", "components"):
            if getattr(la, name) != getattr(lb, name):
                return StabilityReport(
                    False, v, f"level {n}: {name} {getattr(la, name)} vs {getattr(lb, name)}"
                )
        for q in range(len(la.betti)):
            if a.u_rank(n, q) != b.u_rank(n, q):
                return StabilityReport(False, v, f"level {n}: U-rank in degree {q} differs")
    return StabilityReport(True, v)


def assert_saturated(summary: GradedModuleSummary) -> None:
    top = summary.levels[-1]
    if top.components != 1 or any(top.betti[1:]):
        raise InvariantError(f"saturated level {top.n} is not acyclic: {top}")
