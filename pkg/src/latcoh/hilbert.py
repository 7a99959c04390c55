"""Hilbert pairs ``(h, h°)`` on a rectangle and their combinatorial theory.

``h`` is increasing with ``h(0) = 0``, ``h°`` is decreasing, and the weight
``w0 = h + h° - h°(0)`` feeds the lattice cohomology machinery.  The
checks here are exhaustive over the rectangle; they are meant for desk-scale
instances.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .cohomology import compute_summary, cube_weight_alternating_sum, euler_characteristic
from .errors import DomainError, ResourceError, UsageError
from .lattice import (
    Cube,
    LatticeTable,
    Point,
    Rectangle,
    WeightModel,
    add,
    leq,
    pmax,
    pmin,
    shift,
    sub,
)
from .paths import DEFAULT_BUDGET, count_increasing_paths, increasing_paths


def _subsets(rank: int) -> list[tuple[int, ...]]:
    return [s for k in range(rank + 1) for s in itertools.combinations(range(rank), k)]


@dataclass(frozen=True)
class HilbertPair:
    rect: Rectangle
    h: LatticeTable
    hcirc: LatticeTable

    def __post_init__(self):
        if any(x < 1 for x in self.rect.upper):
            raise DomainError(f"corner {self.rect.upper} must satisfy c >= E (all coordinates >= 1)")
        if self.h.rect != self.rect or self.hcirc.rect != self.rect:
            raise DomainError("h and h° must live on the pair's rectangle")

    @classmethod
    def from_functions(cls, c: Point, h: Callable[[Point], int], hcirc: Callable[[Point], int] | None = None):
        rect = Rectangle(c)
        htab = LatticeTable.from_function(rect, h)
        ctab = symmetrize(htab) if hcirc is None else LatticeTable.from_function(rect, hcirc)
        return cls(rect, htab, ctab)

    @property
    def c(self) -> Point:
        return self.rect.upper

    @property
    def hcirc_drop(self) -> int:
        """``h°(0) - h°(c)``."""
        return self.hcirc[self.rect.lower] - self.hcirc[self.c]

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "hilbert_pair",
            "rank": self.rect.rank,
            "c": list(self.c),
            "h": list(self.h.values),
            "h_circ": list(self.hcirc.values),
        }


def symmetrize(h: LatticeTable, c: Point | None = None) -> LatticeTable:
    """``h^sym(l) = h(c - l)``."""
    rect = h.rect if c is None else Rectangle(c)
    if rect != h.rect:
        raise DomainError(f"h lives on {h.rect.upper}, not on {rect.upper}")
    return LatticeTable.from_function(rect, lambda l: h[sub(rect.upper, l)])


# ---------------------------------------------------------------- axioms

@dataclass(frozen=True)
class Check:
    ok: bool
    witness: Any = None

    def to_dict(self):
        return {"ok": self.ok, "witness": self.witness}


def _steps(rect: Rectangle) -> Iterable[tuple[Point, int, Point]]:
    for l in rect.points():
        for v in range(rect.rank):
            if l[v] < rect.upper[v]:
                yield l, v, shift(l, (v,))


def _monotone(t: LatticeTable, increasing: bool) -> Check:
    for l, v, lv in _steps(t.rect):
        if (t[lv] < t[l]) if increasing else (t[lv] > t[l]):
            return Check(False, {"l": list(l), "v": v})
    return Check(True)


def _matroid(t: LatticeTable) -> Check:
    pts = list(t.rect.points())
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            if t[a] + t[b] < t[pmin(a, b)] + t[pmax(a, b)]:
                return Check(False, {"l1": list(a), "l2": list(b)})
    return Check(True)


def _stability(t: LatticeTable) -> Check:
    rect = t.rect
    pts = list(rect.points())
    for l, v, lv in _steps(rect):
        if t[l] != t[lv]:
            continue
        for lbar in pts:
            if lbar[v]:
                continue
            a = add(l, lbar)
            if not leq(shift(a, (v,)), rect.upper):
                continue
            if t[a] != t[shift(a, (v,))]:
                return Check(False, {"l": list(l), "lbar": list(lbar), "v": v})
    return Check(True)


def check_axioms(pair: HilbertPair) -> dict[str, Check]:
    zero = pair.h[pair.rect.lower]
    mono = _monotone(pair.h, True)
    if mono.ok and zero != 0:
        mono = Check(False, {"l": list(pair.rect.lower), "h": zero})
    return {
        "monotone_h": mono,
        "monotone_hcirc": _monotone(pair.hcirc, False),
        "matroid_h": _matroid(pair.h),
        "matroid_hcirc": _matroid(pair.hcirc),
        "stability_h": _stability(pair.h),
    }


def check_cdp(pair: HilbertPair) -> list[tuple[Point, int]]:
    """Steps ``(l, v)`` where both ``h`` and ``h°`` change; empty means CDP holds."""
    bad = []
    for l, v, lv in _steps(pair.rect):
        if pair.h[lv] != pair.h[l] and pair.hcirc[lv] != pair.hcirc[l]:
            bad.append((l, v))
    return bad


def weight_from_pair(pair: HilbertPair) -> WeightModel:
    base = pair.hcirc[pair.rect.lower]
    return WeightModel(
        pair.rect, tuple(a + b - base for a, b in zip(pair.h.values, pair.hcirc.values))
    )


# ---------------------------------------------------------------- series

def _extended(h: LatticeTable, l: Point) -> int:
    """``h(max(0, l))``; raises beyond the upper corner."""
    return h[pmax(l, h.rect.lower)]


def poincare_from_h(h: LatticeTable, lower: Point | None = None, upper: Point | None = None) -> dict[Point, int]:
    """Coefficients ``p(l) = Σ_I (-1)^(|I|+1) h(l + E_I)`` on a box.

    The default box is ``[-E, c - E]``, which also exposes the coefficients
    at points with a negative coordinate (all of which must vanish).
    """
    rank = h.rect.rank
    c = h.rect.upper
    lower = tuple(lower) if lower is not None else (-1,) * rank
    upper = tuple(upper) if upper is not None else tuple(x - 1 for x in c)
    if not leq(shift(upper, range(rank)), c):
        raise DomainError(f"l + E at {upper} leaves the table [0, {c}]")
    subsets = _subsets(rank)
    out = {}
    for l in itertools.product(*(range(a, b + 1) for a, b in zip(lower, upper))):
        out[l] = sum((-1) ** (len(I) + 1) * _extended(h, shift(l, I)) for I in subsets)
    return out


def poincare_support_ok(series: dict[Point, int]) -> bool:
    return all(v == 0 for l, v in series.items() if any(x < 0 for x in l))


def weighted_cube_series(model: WeightModel) -> dict[Point, int]:
    """``Σ_I (-1)^(|I|+1) w((l, I))`` for ``0 <= l <= c - E``."""
    rank = model.rect.rank
    subsets = _subsets(rank)
    out = {}
    for l in itertools.product(*(range(x) for x in model.rect.upper)):
        out[l] = sum((-1) ** (len(I) + 1) * model.cube_weight(Cube(l, I)) for I in subsets)
    return out


# ---------------------------------------------------------------- generation

def valuation_hilbert(rect: Rectangle, valuations: list[tuple[int, ...]]) -> LatticeTable:
    """``h(l) = #{a >= 0 : <ρ_i, a> < l_i for some i}``."""
    m = len(valuations[0])
    bound = max(rect.upper)
    levels = []
    for a in itertools.product(range(bound), repeat=m):
        vals = tuple(sum(r * x for r, x in zip(rho, a)) for rho in valuations)
        if any(t < c for t, c in zip(vals, rect.upper)):
            levels.append(vals)

    def h(l):
        return sum(1 for vals in levels if any(t < x for t, x in zip(vals, l)))

    return LatticeTable.from_function(rect, h)


@dataclass(frozen=True)
class PairBounds:
    cmax: int = 4
    rho_max: int = 3

    def __post_init__(self):
        if self.cmax < 1 or self.rho_max < 1:
            raise UsageError(f"degenerate bounds {self}")


def generate_pair(
    seed, m: int, s: int, bounds: PairBounds = PairBounds(), c: Point | None = None
) -> tuple[HilbertPair, list[tuple[int, ...]]]:
    """Random pair from ``s`` monomial valuations on ``m`` variables.

    ``h°`` is ``h^sym``.  Returns the pair and the valuation vectors used.
    """
    if m < 1 or s < 1:
        raise UsageError(f"need m, s >= 1 (got m={m}, s={s})")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    rhos = [tuple(rng.randint(1, bounds.rho_max) for _ in range(m)) for _ in range(s)]
    if c is None:
        c = tuple(rng.randint(1, bounds.cmax) for _ in range(s))
    rect = Rectangle(c)
    h = valuation_hilbert(rect, rhos)
    return HilbertPair(rect, h, symmetrize(h)), rhos


# ---------------------------------------------------------------- theorem check

@dataclass
class TheoremReport:
    status: str  # "pass", "fail" or "hypotheses unmet"
    expected: int
    rectangle_eu: int | None = None
    alternating_sum: int | None = None
    path_count: int = 0
    path_eu_range: tuple[int, int] | None = None
    failures: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_dict(self):
        return {
            "status": self.status,
            "expected": self.expected,
            "rectangle_eu": self.rectangle_eu,
            "alternating_sum": self.alternating_sum,
            "path_count": self.path_count,
            "path_eu_range": list(self.path_eu_range) if self.path_eu_range else None,
            "failures": self.failures,
        }


def _path_eu(model: WeightModel, pts) -> int:
    w = [model[p] for p in pts]
    return -w[0] + sum(max(0, a - b) for a, b in zip(w, w[1:]))


def verify_theorem_3_7(pair: HilbertPair, budget: int = DEFAULT_BUDGET) -> TheoremReport:
    """Check eu-coincidence for the rectangle and every increasing path, and
    the weighted-cube series identity, on a pair with stability and CDP."""
    expected = pair.hcirc_drop
    model = weight_from_pair(pair)
    report = TheoremReport("pass", expected)
    report.rectangle_eu = euler_characteristic(compute_summary(model))
    report.alternating_sum = cube_weight_alternating_sum(model)
    axioms = check_axioms(pair)
    if not axioms["stability_h"].ok or check_cdp(pair):
        report.status = "hypotheses unmet"
        return report
    if report.rectangle_eu != expected:
        report.failures.append({"check": "rectangle_eu", "got": report.rectangle_eu})
    lhs = weighted_cube_series(model)
    rhs = poincare_from_h(pair.h, lower=pair.rect.lower)
    for l in sorted(lhs):
        if lhs[l] != rhs[l]:
            report.failures.append({"check": "series", "l": list(l), "cubes": lhs[l], "h": rhs[l]})
    if sum(pair.c) > budget:
        report.status = "fail" if report.failures else "pass"
        raise ResourceError(
            f"{count_increasing_paths(pair.c)} paths exceed budget {budget}", partial=report
        )
    lo = hi = None
    for pts in increasing_paths(pair.c):
        eu = _path_eu(model, pts)
        report.path_count += 1
        lo = eu if lo is None else min(lo, eu)
        hi = eu if hi is None else max(hi, eu)
        if eu != expected and len(report.failures) < 20:
            report.failures.append({"check": "path_eu", "path": [list(p) for p in pts], "got": eu})
    report.path_eu_range = (lo, hi)
    if report.failures:
        report.status = "fail"
    return report


@dataclass
class BoundsReport:
    ok: bool
    upper: int
    path_count: int
    strict_paths: int
    failures: list[dict[str, Any]] = field(default_factory=list)

    def to_dict(self):
        return {
            "ok": self.ok,
            "upper": self.upper,
            "path_count": self.path_count,
            "strict_paths": self.strict_paths,
            "failures": self.failures,
        }


def check_path_bounds(pair: HilbertPair, budget: int = DEFAULT_BUDGET) -> BoundsReport:
    """``0 <= eu(γ) <= h°(0) - h°(c)`` for every increasing path, with
    equality exactly when no step changes both ``h`` and ``h°``."""
    if sum(pair.c) > budget:
        raise ResourceError(f"{count_increasing_paths(pair.c)} paths exceed budget {budget}")
    model = weight_from_pair(pair)
    upper = pair.hcirc_drop
    report = BoundsReport(True, upper, 0, 0)
    for pts in increasing_paths(pair.c):
        eu = _path_eu(model, pts)
        report.path_count += 1
        clean = all(
            pair.h[b] == pair.h[a] or pair.hcirc[b] == pair.hcirc[a] for a, b in zip(pts, pts[1:])
        )
        if eu < upper:
            report.strict_paths += 1
        if not (0 <= eu <= upper) or (eu == upper) != clean:
            report.ok = False
            if len(report.failures) < 20:
                report.failures.append(
                    {"path": [list(p) for p in pts], "eu": eu, "stepwise_condition": clean}
                )
    return report
