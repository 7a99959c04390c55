"""Graded roots built from the component tower of ``{S_n}``.

A vertex is ``(chi, key)``: its grading and, for roots built from a weight
table, the smallest lattice point of the component it stands for.  The
infinite upward ray is not stored; ``top`` marks the grading from which
every fibre is a single vertex and the chain continues forever.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .cohomology import level_complexes
from .errors import DomainError, UsageError
from .homology import component_labels, connected_components
from .lattice import Point, Region, WeightModel, leq

Vertex = tuple[int, tuple]


@dataclass(frozen=True)
class GradedRoot:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[Vertex, Vertex], ...]
    top: int

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", tuple(sorted(tuple(sorted(e)) for e in self.edges)))

    @staticmethod
    def chi(v: Vertex) -> int:
        return v[0]

    @property
    def min_chi(self) -> int:
        return min(v[0] for v in self.vertices)

    def fibre(self, n: int) -> list[Vertex]:
        return [v for v in self.vertices if v[0] == n]

    def neighbours(self, v: Vertex) -> list[Vertex]:
        return self._adjacency.get(v, [])

    @property
    def _adjacency(self) -> dict[Vertex, list[Vertex]]:
        adj: dict[Vertex, list[Vertex]] = {}
        for a, b in self.edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        return adj

    def parent(self, v: Vertex) -> Vertex | None:
        ups = [u for u in self.neighbours(v) if u[0] == v[0] + 1]
        return ups[0] if ups else None

    def leaves(self) -> list[Vertex]:
        """Local minima: vertices with no neighbour below them."""
        return [v for v in self.vertices if all(u[0] > v[0] for u in self.neighbours(v))]

    def shape(self) -> tuple:
        """Canonical form invariant under relabelling of vertex keys.

        Two roots have equal shapes iff they are isomorphic as graded trees.
        """
        adj = self._adjacency

        def canon(v):
            kids = sorted(canon(u) for u in adj.get(v, []) if u[0] == v[0] - 1)
            return (v[0], tuple(kids))

        (apex,) = self.fibre(self.top)
        return (self.top, canon(apex))


@dataclass(frozen=True)
class RootValidation:
    ok: bool
    axiom: str | None = None
    witness: Any = None


def build_root(model: WeightModel, region: Region = None) -> GradedRoot:
    """One vertex per component of each ``S_n``; edges follow inclusions."""
    complexes = level_complexes(model, region)
    ns = sorted(complexes)
    labels = {n: component_labels(complexes[n]) for n in ns}
    vertices = []
    edges = []
    for n in ns:
        for comp in connected_components(complexes[n]):
            vertices.append((n, comp[0]))
            if n + 1 in labels:
                edges.append(((n, comp[0]), (n + 1, labels[n + 1][comp[0]])))
    return GradedRoot(tuple(vertices), tuple(edges), ns[-1])


def validate_root(root: GradedRoot) -> RootValidation:
    """Check the graded-root axioms on the finite part plus the ray marker."""
    if not root.vertices:
        return RootValidation(False, "c", "no vertices")
    vset = set(root.vertices)
    for a, b in root.edges:
        if a not in vset or b not in vset:
            return RootValidation(False, "tree", [list(a), list(b)])
        if abs(a[0] - b[0]) != 1:
            return RootValidation(False, "a", [_jsonable(a), _jsonable(b)])
    for u in root.vertices:
        ups = [v for v in root.neighbours(u) if v[0] > u[0]]
        if len(ups) > 1:
            return RootValidation(False, "b", {"vertex": _jsonable(u), "up": [_jsonable(x) for x in ups]})
    if any(v[0] > root.top for v in root.vertices):
        return RootValidation(False, "c", "vertex above the ray marker")
    apex = root.fibre(root.top)
    if len(apex) != 1:
        return RootValidation(False, "c", {"chi": root.top, "fibre": len(apex)})
    # finite connected graph with |E| = |V| - 1 is a tree
    if len(root.edges) != len(root.vertices) - 1:
        return RootValidation(False, "tree", {"vertices": len(vset), "edges": len(root.edges)})
    seen = {apex[0]}
    stack = [apex[0]]
    while stack:
        for v in root.neighbours(stack.pop()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    if seen != vset:
        return RootValidation(False, "tree", _jsonable(min(vset - seen)))
    return RootValidation(True)


@dataclass(frozen=True)
class RootModule:
    """Degree-0 module of a root: ``T^+_{2 min chi}`` plus a reduced part."""

    min_level: int
    top: int
    ranks: dict[int, int]
    u_maps: dict[int, dict[Vertex, Vertex]] = field(default_factory=dict)

    @property
    def tower_degree(self) -> int:
        return 2 * self.min_level

    def reduced(self) -> dict[int, int]:
        """Homogeneous degree -> rank of the reduced part (nonzero only)."""
        return {2 * n: r - 1 for n, r in sorted(self.ranks.items()) if r > 1}

    def describe(self) -> str:
        parts = [f"T+_{self.tower_degree}"]
        for deg, r in self.reduced().items():
            parts.append(f"Z^{r}(deg {deg})" if r > 1 else f"Z(deg {deg})")
        return " + ".join(parts)


def root_module(root: GradedRoot) -> RootModule:
    check = validate_root(root)
    if not check.ok:
        raise DomainError(f"invalid graded root: axiom {check.axiom} fails at {check.witness}")
    lo = root.min_chi
    ranks = {n: len(root.fibre(n)) for n in range(lo, root.top + 1)}
    maps = {
        n: {v: root.parent(v) for v in root.fibre(n)} for n in range(lo, root.top)
    }
    return RootModule(lo, root.top, ranks, maps)


def leaf_maxima(root: GradedRoot, model: WeightModel, region: Region = None) -> dict[Vertex, list[Point]]:
    """Maximal lattice points (for ``<=``) of each leaf's component."""
    complexes = level_complexes(model, region)
    out = {}
    for leaf in root.leaves():
        n, key = leaf
        comp = next(c for c in connected_components(complexes[n]) if c[0] == key)
        out[leaf] = [p for p in comp if not any(p != o and leq(p, o) for o in comp)]
    return out


# ---------------------------------------------------------------- export

ROOT_SCHEMA = "latcoh/graded-root"


def _jsonable(v: Vertex) -> list:
    return [v[0], list(v[1]) if isinstance(v[1], tuple) else v[1]]


def _vertex_from_json(obj) -> Vertex:
    key = obj["key"]
    return (int(obj["chi"]), tuple(key) if isinstance(key, list) else key)


def root_to_dict(root: GradedRoot) -> dict[str, Any]:
    ids = {v: i for i, v in enumerate(root.vertices)}
    return {
        "schema": ROOT_SCHEMA,
        "version": 1,
        "vertices": [
            {"id": ids[v], "chi": v[0], "key": list(v[1]) if isinstance(v[1], tuple) else v[1]}
            for v in root.vertices
        ],
        "edges": [[ids[a], ids[b]] for a, b in root.edges],
        "ray": {"from": ids[root.fibre(root.top)[0]], "chi": root.top},
    }


def root_from_dict(obj: dict[str, Any]) -> GradedRoot:
    if obj.get("schema") != ROOT_SCHEMA:
        raise UsageError(f"not a graded-root document (schema={obj.get('schema')!r})")
    verts = {int(v["id"]): _vertex_from_json(v) for v in obj["vertices"]}
    edges = [(verts[a], verts[b]) for a, b in obj["edges"]]
    return GradedRoot(tuple(verts.values()), tuple(edges), int(obj["ray"]["chi"]))


def root_to_dot(root: GradedRoot) -> str:
    ids = {v: i for i, v in enumerate(root.vertices)}
    lines = ["graph graded_root {", "  rankdir=BT;", "  node [shape=point];"]
    for n in sorted({v[0] for v in root.vertices}, reverse=True):
        members = " ".join(f"v{ids[v]};" for v in root.fibre(n))
        lines.append(f"  {{ rank=same; {members} }}  // chi={n}")
    for v in root.vertices:
        lines.append(f'  v{ids[v]} [chi={v[0]}, xlabel="{v[0]}"];')
    for a, b in root.edges:
        lines.append(f"  v{ids[a]} -- v{ids[b]};")
    apex = ids[root.fibre(root.top)[0]]
    lines.append('  ray [shape=none, label="..."];')
    lines.append(f"  v{apex} -- ray [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_root(root: GradedRoot, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(root_to_dict(root), indent=2, sort_keys=True) + "\n"
    if fmt == "dot":
        return root_to_dot(root)
    raise UsageError(f"unknown root format {fmt!r} (expected 'json' or 'dot')")


def import_root(text: str) -> GradedRoot:
    return root_from_dict(json.loads(text))
