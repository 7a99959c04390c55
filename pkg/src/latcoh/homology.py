"""Integral homology of finite cubical complexes.

Boundary matrices are kept sparse (one ``{row: coeff}`` dict per column).
Invariant factors come from an exact Smith normal form: a sparse pass that
eliminates unit pivots, followed by a dense pass on whatever is left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InvariantError, StructuralError
from .lattice import CubicalComplex, Cube, Point

SparseColumns = list[dict[int, int]]


@dataclass(frozen=True)
class SparseMatrix:
    nrows: int
    ncols: int
    columns: tuple[tuple[tuple[int, int], ...], ...]

    @classmethod
    def from_columns(cls, nrows: int, cols: Sequence[dict[int, int]]) -> "SparseMatrix":
        return cls(nrows, len(cols), tuple(tuple(sorted(c.items())) for c in cols))

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols = [{i: int(rows[i][j]) for i in range(nrows) if rows[i][j]} for j in range(ncols)]
        return cls.from_columns(nrows, cols)

    def column_dicts(self) -> SparseColumns:
        return [dict(c) for c in self.columns]

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, v in col:
                out[i][j] = v
        return out

    def select_rows(self, keep: Sequence[int]) -> "SparseMatrix":
        remap = {r: k for k, r in enumerate(keep)}
        cols = [{remap[i]: v for i, v in col if i in remap} for col in self.columns]
        return SparseMatrix.from_columns(len(keep), cols)

    def compose(self, other: "SparseMatrix") -> "SparseMatrix":
        """``self @ other``."""
        if self.ncols != other.nrows:
            raise DomainError("shape mismatch in matrix product")
        mine = self.column_dicts()
        cols = []
        for col in other.columns:
            acc: dict[int, int] = {}
            for k, a in col:
                for i, b in mine[k].items():
                    acc[i] = acc.get(i, 0) + a * b
            cols.append({i: v for i, v in acc.items() if v})
        return SparseMatrix.from_columns(self.nrows, cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)


# ---------------------------------------------------------------- Smith form

def _eliminate_units(cols: SparseColumns) -> tuple[int, SparseColumns]:
    """Remove every pivot of absolute value 1 by row/column operations.

    Returns the number of unit invariant factors found and the surviving
    columns (no entry of which is a unit).
    """
    cols = {j: c for j, c in enumerate(cols) if c}
    rows: dict[int, set[int]] = {}
    for j, c in cols.items():
        for i in c:
            rows.setdefault(i, set()).add(j)
    units = 0
    while True:
        pivot = None
        best = None
        for j in sorted(cols):
            c = cols[j]
            for i, v in c.items():
                if v == 1 or v == -1:
                    # Markowitz cost keeps fill-in low
                    cost = (len(c) - 1) * (len(rows[i]) - 1)
                    if best is None or cost < best:
                        best, pivot = cost, (i, j)
                        if cost == 0:
                            break
            if best == 0:
                break
        if pivot is None:
            break
        r, j = pivot
        pcol = cols.pop(j)
        p = pcol[r]
        for i in pcol:
            rows[i].discard(j)
        for k in sorted(rows.pop(r, ())):
            col = cols[k]
            factor = col[r] * p  # p = ±1 so col[r] / p == col[r] * p
            for i, v in pcol.items():
                nv = col.get(i, 0) - factor * v
                if nv:
                    if i not in col:
                        rows[i].add(k)
                    col[i] = nv
                elif i in col:
                    del col[i]
                    if i != r:
                        rows[i].discard(k)
            if not col:
                del cols[k]
        units += 1
    return units, [cols[j] for j in sorted(cols)]


def _dense_diagonal(a: list[list[int]]) -> list[int]:
    """Diagonalise a dense integer matrix; return the nonzero diagonal."""
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < m and t < n:
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for i in range(t, m):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        clean = False
            if clean:
                break
            cand = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
            _, pi, pj = min(cand)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def _divisibility_chain(diag: list[int]) -> list[int]:
    """Turn a diagonal into invariant factors d_1 | d_2 | ..."""
    d = sorted(diag)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = math.gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return sorted(d)


def _invariant_factors(nrows: int, cols: SparseColumns) -> tuple[int, ...]:
    units, rest = _eliminate_units(cols)
    if rest:
        used = sorted({i for c in rest for i in c})
        pos = {r: k for k, r in enumerate(used)}
        dense = [[0] * len(rest) for _ in used]
        for j, c in enumerate(rest):
            for i, v in c.items():
                dense[pos[i]][j] = v
        tail = _divisibility_chain(_dense_diagonal(dense))
    else:
        tail = []
    return (1,) * units + tuple(tail)


def smith_normal_form(matrix) -> tuple[int, ...]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix.

    Accepts a dense sequence of rows or a :class:`SparseMatrix`.
    Arithmetic is exact Python ints.
    """
    if not isinstance(matrix, SparseMatrix):
        matrix = SparseMatrix.from_dense([[int(x) for x in row] for row in matrix])
    return _invariant_factors(matrix.nrows, matrix.column_dicts())


def matrix_rank(matrix) -> int:
    return len(smith_normal_form(matrix))


def rational_rank(matrix) -> int:
    """Rank over Q by Gaussian elimination on Fractions (slow oracle path)."""
    if isinstance(matrix, SparseMatrix):
        matrix = matrix.to_dense()
    rows = [[Fraction(x) for x in row] for row in matrix]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for j in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][j] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][j]:
                f = rows[i][j] / rows[rank][j]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


# ------------------------------------------------------------ chain complexes

@dataclass(frozen=True)
class ChainComplexData:
    """Cells by dimension and boundary matrices ``d[q]: C_q -> C_{q-1}``.

    ``boundaries[q]`` is defined for ``1 <= q <= top dimension``; index 0 is
    an empty placeholder.
    """

    cells: tuple[tuple[Cube, ...], ...]
    boundaries: tuple[SparseMatrix, ...]

    def counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    def boundary(self, q: int) -> SparseMatrix:
        if 1 <= q < len(self.cells):
            return self.boundaries[q]
        nrows = len(self.cells[q - 1]) if 0 <= q - 1 < len(self.cells) else 0
        ncols = len(self.cells[q]) if 0 <= q < len(self.cells) else 0
        return SparseMatrix(nrows, ncols, ((),) * ncols)


def boundary_matrices(cx: CubicalComplex) -> ChainComplexData:
    """Cellular boundary matrices in the complex's deterministic cell order."""
    index = [{c: i for i, c in enumerate(group)} for group in cx.cells]
    mats = [SparseMatrix(0, 0, ())]
    for q in range(1, len(cx.cells)):
        lower = index[q - 1]
        cols = []
        for cube in cx.cells[q]:
            col: dict[int, int] = {}
            for sign, face in cube.boundary():
                try:
                    col[lower[face]] = col.get(lower[face], 0) + sign
                except KeyError:
                    raise StructuralError(
                        f"complex not face-closed: {cube} lacks face {face}"
                    ) from None
            cols.append(col)
        mats.append(SparseMatrix.from_columns(len(cx.cells[q - 1]), cols))
    for q in range(2, len(mats)):
        if not mats[q - 1].compose(mats[q]).is_zero():
            raise InvariantError(f"boundary of boundary nonzero in degree {q}")
    return ChainComplexData(tuple(cx.cells), tuple(mats))


@dataclass(frozen=True)
class HomologySummary:
    """Betti numbers and torsion invariant factors of H_q, q = 0..top."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def cohomology_torsion(self) -> tuple[tuple[int, ...], ...]:
        """Torsion of H^q, which is the torsion of H_{q-1}."""
        return ((),) + self.torsion[:-1] if self.torsion else ()

    def euler(self) -> int:
        return sum((-1) ** q * b for q, b in enumerate(self.betti))


def homology(data: ChainComplexData, cellcounts: Sequence[int] | None = None) -> HomologySummary:
    counts = list(cellcounts) if cellcounts is not None else data.counts()
    top = len(counts)
    factors = [()] + [
        _invariant_factors(data.boundaries[q].nrows, data.boundaries[q].column_dicts())
        for q in range(1, top)
    ] + [()]
    ranks = [len(f) for f in factors]
    betti = tuple(counts[q] - ranks[q] - ranks[q + 1] for q in range(top))
    torsion = tuple(tuple(d for d in factors[q + 1] if d > 1) for q in range(top))
    return HomologySummary(betti, torsion)


def complex_homology(cx: CubicalComplex) -> HomologySummary:
    return homology(boundary_matrices(cx))


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smallest point becomes the representative
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def connected_components(cx: CubicalComplex) -> list[tuple[Point, ...]]:
    """Vertex sets of the components, each sorted, ordered by smallest vertex."""
    uf = _UnionFind(cx.vertices)
    for edge in cx.cells_of_dim(1):
        a, b = edge.vertices()
        uf.union(a, b)
    groups: dict[Point, list[Point]] = {}
    for v in cx.vertices:
        groups.setdefault(uf.find(v), []).append(v)
    return [tuple(sorted(groups[k])) for k in sorted(groups)]


def component_labels(cx: CubicalComplex) -> dict[Point, Point]:
    """Map each vertex to the smallest vertex of its component."""
    return {v: comp[0] for comp in connected_components(cx) for v in comp}


def induced_map_rank(sub: CubicalComplex, sup: CubicalComplex, q: int) -> int:
    """Rank over Q of ``H_q(sub) -> H_q(sup)`` induced by inclusion.

    Uses ``ker = (B_q(sup) ∩ C_q(sub)) / B_q(sub)`` and computes the
    intersection dimension as ``rank d - rank(P d)`` where ``d`` is the
    ``(q+1)``-boundary of ``sup`` and ``P`` projects away the q-cells of
    ``sub``.  The rank equals that of the dual restriction on cohomology.
    """
    if not sub.issubset(sup):
        raise DomainError("induced_map_rank needs sub ⊆ sup")
    if q < 0:
        return 0
    sub_data = boundary_matrices(sub)
    sup_data = boundary_matrices(sup)
    b_sub = homology(sub_data).betti
    if q >= len(b_sub) or b_sub[q] == 0:
        return 0
    d_sup = sup_data.boundary(q + 1)
    d_sub = sub_data.boundary(q + 1)
    return _induced_rank(b_sub[q], sub.cells_of_dim(q), sup.cells_of_dim(q), d_sup, d_sub)


def _induced_rank(betti_sub, sub_cells, sup_cells, d_sup, d_sub) -> int:
    inside = set(sub_cells)
    outside = [i for i, c in enumerate(sup_cells) if c not in inside]
    dim_meet = matrix_rank(d_sup) - matrix_rank(d_sup.select_rows(outside))
    kernel = dim_meet - matrix_rank(d_sub)
    return betti_sub - kernel
