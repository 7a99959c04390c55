"""Lattice points, cubes, rectangles, weight tables and sublevel complexes.

Lattice points are plain tuples of ints.  All containers are immutable and
every enumeration is lexicographic, so matrices built downstream have a
reproducible layout.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .errors import DomainError, PathError, StructuralError

Point = tuple[int, ...]


def unit(rank: int, v: int) -> Point:
    return tuple(1 if i == v else 0 for i in range(rank))


def add(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def leq(a: Point, b: Point) -> bool:
    """Coordinatewise partial order."""
    return all(x <= y for x, y in zip(a, b))


def pmin(a: Point, b: Point) -> Point:
    return tuple(min(x, y) for x, y in zip(a, b))


def pmax(a: Point, b: Point) -> Point:
    return tuple(max(x, y) for x, y in zip(a, b))


def shift(p: Point, dirs: Iterable[int], amount: int = 1) -> Point:
    """``p + amount * E_I`` for the direction set ``dirs``."""
    q = list(p)
    for v in dirs:
        q[v] += amount
    return tuple(q)


@dataclass(frozen=True, order=True)
class Cube:
    """The cube ``(base, dirs)`` with vertices ``base + E_J`` for ``J ⊆ dirs``.

    Directions are 0-based coordinate indices, stored sorted.
    """

    base: Point
    dirs: tuple[int, ...] = ()

    def __post_init__(self):
        dirs = tuple(sorted(self.dirs))
        if len(set(dirs)) != len(dirs):
            raise DomainError(f"repeated direction in {self.dirs}")
        if any(v < 0 or v >= len(self.base) for v in dirs):
            raise DomainError(f"direction out of range in {self.dirs}")
        object.__setattr__(self, "base", tuple(self.base))
        object.__setattr__(self, "dirs", dirs)

    @property
    def dim(self) -> int:
        return len(self.dirs)

    @property
    def top(self) -> Point:
        return shift(self.base, self.dirs)

    def vertices(self) -> list[Point]:
        verts = [
            shift(self.base, sel)
            for k in range(self.dim + 1)
            for sel in itertools.combinations(self.dirs, k)
        ]
        return sorted(verts)

    def boundary(self) -> list[tuple[int, "Cube"]]:
        """Signed codimension-one faces.

        The face pair for the ``i``-th direction ``v`` carries sign
        ``(-1)**i`` on the upper face ``(base + E_v, dirs - v)`` and the
        opposite sign on the lower face ``(base, dirs - v)``.
        """
        out = []
        for i, v in enumerate(self.dirs):
            rest = self.dirs[:i] + self.dirs[i + 1:]
            sign = -1 if i % 2 else 1
            out.append((sign, Cube(shift(self.base, (v,)), rest)))
            out.append((-sign, Cube(self.base, rest)))
        return out

    def faces(self) -> list["Cube"]:
        """All faces of every dimension, the cube itself included."""
        out = []
        for k in range(self.dim + 1):
            for kept in itertools.combinations(self.dirs, k):
                moving = [v for v in self.dirs if v not in kept]
                for r in range(len(moving) + 1):
                    for up in itertools.combinations(moving, r):
                        out.append(Cube(shift(self.base, up), kept))
        return sorted(out)


@dataclass(frozen=True)
class Rectangle:
    """Lattice points ``0 <= l <= upper``."""

    upper: Point

    def __post_init__(self):
        upper = tuple(int(x) for x in self.upper)
        if not upper:
            raise DomainError("rectangle must have rank >= 1")
        if any(x < 0 for x in upper):
            raise DomainError(f"rectangle corner {upper} has a negative coordinate")
        object.__setattr__(self, "upper", upper)

    @property
    def rank(self) -> int:
        return len(self.upper)

    @property
    def lower(self) -> Point:
        return (0,) * self.rank

    @cached_property
    def npoints(self) -> int:
        return math.prod(c + 1 for c in self.upper)

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides = []
        acc = 1
        for c in reversed(self.upper):
            strides.append(acc)
            acc *= c + 1
        return tuple(reversed(strides))

    def points(self) -> Iterator[Point]:
        """Lattice points in lexicographic (row-major) order."""
        return itertools.product(*(range(c + 1) for c in self.upper))

    def contains(self, p: Point) -> bool:
        return len(p) == self.rank and all(0 <= x <= c for x, c in zip(p, self.upper))

    def contains_cube(self, cube: Cube) -> bool:
        return self.contains(cube.base) and self.contains(cube.top)

    def index(self, p: Point) -> int:
        if not self.contains(p):
            raise DomainError(f"point {p} outside rectangle [0, {self.upper}]")
        return sum(x * s for x, s in zip(p, self._strides))

    def grown(self, v: int, by: int = 1) -> "Rectangle":
        return Rectangle(shift(self.upper, (v,), by))

    def count_cubes(self, q: int) -> int:
        """Number of q-cubes, summed over direction sets of size q."""
        total = 0
        for dirs in itertools.combinations(range(self.rank), q):
            total += math.prod(c if v in dirs else c + 1 for v, c in enumerate(self.upper))
        return total


def enumerate_cubes(rect: Rectangle) -> Iterator[Cube]:
    """Every cube inside ``rect`` exactly once, ordered by ``(base, dirs)``."""
    subsets = sorted(
        sel for k in range(rect.rank + 1) for sel in itertools.combinations(range(rect.rank), k)
    )
    for base in rect.points():
        for dirs in subsets:
            if all(base[v] < rect.upper[v] for v in dirs):
                yield Cube(base, dirs)


@dataclass(frozen=True)
class LatticeTable:
    """Dense integer table on a rectangle, flat in row-major order."""

    rect: Rectangle
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(x) for x in self.values)
        if len(values) != self.rect.npoints:
            raise DomainError(
                f"table has {len(values)} values, rectangle {self.rect.upper} "
                f"has {self.rect.npoints} points"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, rect: Rectangle, fn: Callable[[Point], int]):
        return cls(rect, tuple(fn(p) for p in rect.points()))

    @classmethod
    def from_mapping(cls, rect: Rectangle, table: Mapping[Point, int]):
        try:
            return cls(rect, tuple(table[p] for p in rect.points()))
        except KeyError as exc:
            raise DomainError(f"no value for lattice point {exc.args[0]}") from None

    def __getitem__(self, p: Point) -> int:
        return self.values[self.rect.index(tuple(p))]

    def items(self) -> Iterator[tuple[Point, int]]:
        return zip(self.rect.points(), self.values)

    def as_dict(self) -> dict[Point, int]:
        return dict(self.items())


class WeightModel(LatticeTable):
    """A rectangle with vertex weights ``w0``; cube weights are maxima."""

    def w0(self, p: Point) -> int:
        return self[p]

    @cached_property
    def min_weight(self) -> int:
        return min(self.values)

    @cached_property
    def max_weight(self) -> int:
        return max(self.values)

    @cached_property
    def base_point(self) -> Point:
        """Lexicographically smallest point of minimal weight."""
        return next(p for p, w in self.items() if w == self.min_weight)

    def cube_weight(self, cube: Cube) -> int:
        if not self.rect.contains_cube(cube):
            raise DomainError(f"cube {cube} not inside rectangle [0, {self.rect.upper}]")
        return max(self.values[self.rect.index(p)] for p in cube.vertices())


@dataclass(frozen=True)
class Box:
    """Sub-rectangle region ``lower <= l <= upper`` of a model."""

    lower: Point
    upper: Point

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "upper", tuple(self.upper))
        if len(self.lower) != len(self.upper) or not leq(self.lower, self.upper):
            raise DomainError(f"invalid box [{self.lower}, {self.upper}]")

    def contains(self, p: Point) -> bool:
        return leq(self.lower, p) and leq(p, self.upper)

    def cubes(self) -> Iterator[Cube]:
        inner = Rectangle(sub(self.upper, self.lower))
        for cube in enumerate_cubes(inner):
            yield Cube(add(cube.base, self.lower), cube.dirs)


@dataclass(frozen=True)
class LatticePath:
    """Sequence ``x_0 = 0, x_1, ...`` of distinct points joined by unit steps."""

    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(tuple(int(x) for x in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise PathError("a path needs at least one point")
        rank = len(pts[0])
        if any(len(p) != rank for p in pts):
            raise PathError("path points have inconsistent rank")
        if any(pts[0]):
            raise PathError(f"path must start at the origin, got {pts[0]}")
        if len(set(pts)) != len(pts):
            raise PathError("path revisits a lattice point")
        for i, (a, b) in enumerate(zip(pts, pts[1:])):
            if sum(abs(x - y) for x, y in zip(a, b)) != 1:
                raise PathError(f"step {i} from {a} to {b} is not a unit step")

    @property
    def rank(self) -> int:
        return len(self.points[0])

    @property
    def length(self) -> int:
        return len(self.points) - 1

    @property
    def increasing(self) -> bool:
        return all(leq(a, b) for a, b in zip(self.points, self.points[1:]))

    def segments(self) -> list[Cube]:
        out = []
        for a, b in zip(self.points, self.points[1:]):
            v = next(i for i, (x, y) in enumerate(zip(a, b)) if x != y)
            out.append(Cube(pmin(a, b), (v,)))
        return out

    def cubes(self) -> list[Cube]:
        return sorted([Cube(p) for p in self.points] + self.segments())


Region = Union[None, Box, LatticePath]


def region_cubes(model: WeightModel, region: Region = None) -> list[Cube]:
    """Cubes of ``region`` (``None`` = the whole rectangle), sorted."""
    if region is None:
        return list(enumerate_cubes(model.rect))
    cubes = sorted(region.cubes())
    if not cubes:
        raise DomainError("empty region")
    for cube in cubes:
        if not model.rect.contains_cube(cube):
            raise DomainError(f"region cube {cube} leaves the rectangle [0, {model.rect.upper}]")
    return cubes


@dataclass(frozen=True)
class CubicalComplex:
    """Finite set of cubes, grouped by dimension and sorted."""

    cells: tuple[tuple[Cube, ...], ...] = field(default=())

    @classmethod
    def from_cubes(cls, cubes: Iterable[Cube]) -> "CubicalComplex":
        by_dim: dict[int, set[Cube]] = {}
        for c in cubes:
            by_dim.setdefault(c.dim, set()).add(c)
        top = max(by_dim, default=-1)
        return cls(tuple(tuple(sorted(by_dim.get(q, ()))) for q in range(top + 1)))

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def __len__(self) -> int:
        return sum(len(c) for c in self.cells)

    def __iter__(self) -> Iterator[Cube]:
        for group in self.cells:
            yield from group

    def __contains__(self, cube: Cube) -> bool:
        return cube in self._members

    @cached_property
    def _members(self) -> frozenset[Cube]:
        return frozenset(self)

    def cells_of_dim(self, q: int) -> tuple[Cube, ...]:
        return self.cells[q] if 0 <= q < len(self.cells) else ()

    @property
    def vertices(self) -> list[Point]:
        return [c.base for c in self.cells_of_dim(0)]

    def counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    def is_empty(self) -> bool:
        return len(self) == 0

    def issubset(self, other: "CubicalComplex") -> bool:
        return self._members <= other._members

    def missing_face(self) -> tuple[Cube, Cube] | None:
        """First ``(cube, face)`` with the face absent, or None."""
        members = self._members
        for cube in self:
            for _, face in cube.boundary():
                if face not in members:
                    return cube, face
        return None

    def check_face_closed(self) -> None:
        bad = self.missing_face()
        if bad is not None:
            raise StructuralError(f"complex not face-closed: {bad[0]} lacks face {bad[1]}")


def weighted_cubes(model: WeightModel, region: Region = None) -> list[tuple[int, Cube]]:
    return [(model.cube_weight(c), c) for c in region_cubes(model, region)]


def sublevel_complex(model: WeightModel, n: int, region: Region = None) -> CubicalComplex:
    """``S_n``: all cubes of the region whose weight is at most ``n``."""
    return CubicalComplex.from_cubes(c for w, c in weighted_cubes(model, region) if w <= n)


def check_rank(points: Sequence[Point], rank: int) -> None:
    for p in points:
        if len(p) != rank:
            raise DomainError(f"point {p} does not have rank {rank}")
