"""Triangle families over integer vertex labels, and their support graphs.

A family is a finite set of 3-element vertex sets ("triangles"), stored
canonically sorted so equality is structural.  Orientation is implicit in
the vertex order: every simplex is written with ascending labels and the
boundary signs below are defined relative to that ordering.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

Vertex = int
Edge = tuple[int, int]
Triangle = tuple[int, int, int]


class EmptyFamilyError(ValueError):
    """Raised when an operation needs at least one triangle."""


class FamilyParseError(ValueError):
    """Raised on malformed family text; carries the 1-based line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


def edge(x: int, y: int) -> Edge:
    if x == y:
        raise ValueError(f"edge endpoints must be distinct, got {x!r} twice")
    for v in (x, y):
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ValueError(f"vertex labels must be non-negative integers, got {v!r}")
    return (x, y) if x < y else (y, x)


def triangle(a: int, b: int, c: int) -> Triangle:
    if len({a, b, c}) != 3:
        raise ValueError(f"triangle vertices must be distinct, got ({a}, {b}, {c})")
    for v in (a, b, c):
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ValueError(f"vertex labels must be non-negative integers, got {v!r}")
    return tuple(sorted((a, b, c)))  # type: ignore[return-value]


def sign_edge_vertex(e: Edge, x: int) -> int:
    """+1 if x is the larger endpoint of e, -1 if the smaller, 0 if not incident."""
    if x == e[1]:
        return 1
    if x == e[0]:
        return -1
    return 0


def sign_triangle_edge(tri: Triangle, e: Edge) -> int:
    """Incidence sign of edge e in triangle tri.

    +1 when the vertex of tri opposite to e is the largest or smallest
    vertex of tri, -1 when it is the middle one, 0 when e is not a side.
    For tri = (a, b, c) ascending this gives +1, -1, +1 on (a,b), (a,c), (b,c).
    """
    if e[0] not in tri or e[1] not in tri:
        return 0
    opposite = next(v for v in tri if v != e[0] and v != e[1])
    return 1 if opposite in (tri[0], tri[2]) else -1


@dataclass(frozen=True)
class TriangleFamily:
    """Immutable, deduplicated, lexicographically sorted tuple of triangles."""

    triangles: tuple[Triangle, ...]

    def __post_init__(self):
        tris = sorted({triangle(*t) for t in self.triangles})
        object.__setattr__(self, "triangles", tuple(tris))

    def __len__(self) -> int:
        return len(self.triangles)

    def __iter__(self) -> Iterator[Triangle]:
        return iter(self.triangles)

    def __contains__(self, tri) -> bool:
        return tuple(sorted(tri)) in set(self.triangles)

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for t in self.triangles for v in t}))

    def edges(self) -> tuple[Edge, ...]:
        es = {e for t in self.triangles for e in combinations(t, 2)}
        return tuple(sorted(es))


@dataclass(frozen=True)
class SupportGraph:
    """Vertices and edges covered by a family, with per-edge triangle counts."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    edge_triangle_count: Mapping[Edge, int]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def neighbors(self, v: int) -> set[int]:
        return {u for e in self.edges for u in e if v in e and u != v}


def support_graph(family: TriangleFamily) -> SupportGraph:
    if len(family) == 0:
        raise EmptyFamilyError("support graph of an empty family is undefined")
    counts: dict[Edge, int] = {}
    for t in family:
        for e in combinations(t, 2):
            counts[e] = counts.get(e, 0) + 1
    return SupportGraph(
        vertices=family.vertices(),
        edges=tuple(sorted(counts)),
        edge_triangle_count=dict(sorted(counts.items())),
    )


def vertex_triangle_counts(family: TriangleFamily) -> dict[int, int]:
    counts: dict[int, int] = {}
    for t in family:
        for v in t:
            counts[v] = counts.get(v, 0) + 1
    return counts


def connected_components(graph: SupportGraph) -> list[tuple[int, ...]]:
    """Vertex sets of the connected components, each sorted, ordered by minimum."""
    adjacency: dict[int, set[int]] = {v: set() for v in graph.vertices}
    for u, v in graph.edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    seen: set[int] = set()
    parts: list[tuple[int, ...]] = []
    for start in graph.vertices:
        if start in seen:
            continue
        stack, part = [start], set()
        while stack:
            v = stack.pop()
            if v in part:
                continue
            part.add(v)
            stack.extend(adjacency[v] - part)
        seen |= part
        parts.append(tuple(sorted(part)))
    return sorted(parts, key=lambda p: p[0])


def relabel(family: TriangleFamily, mapping: Mapping[int, int]) -> TriangleFamily:
    """Apply a vertex bijection; sorting restores the canonical form."""
    tris = [tuple(mapping[v] for v in t) for t in family]
    out = TriangleFamily(tuple(tris))  # type: ignore[arg-type]
    if len(out) != len(family):
        raise ValueError("relabeling map is not injective on the support")
    return out


def disjoint_union(first: TriangleFamily, second: TriangleFamily) -> TriangleFamily:
    """Union after shifting the second family's labels above the first's.

    The second family's vertices are mapped, order preserved, onto
    consecutive labels starting just past max(first).  Either side may be
    empty, in which case the other is returned unchanged.
    """
    if len(first) == 0:
        return second
    if len(second) == 0:
        return first
    base = max(first.vertices()) + 1
    mapping = {v: base + i for i, v in enumerate(second.vertices())}
    shifted = [tuple(mapping[v] for v in t) for t in second]
    return TriangleFamily(first.triangles + tuple(shifted))  # type: ignore[arg-type]


def parse_family(text: str) -> TriangleFamily:
    """Parse the one-triangle-per-line format.

    Each non-comment line holds three whitespace-separated non-negative
    integers.  Lines starting with '#' and blank lines are ignored.
    Triangles are sorted and deduplicated; a repeated vertex within a
    line is an error.
    """
    tris: list[Triangle] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise FamilyParseError(
                f"expected three vertex labels, got {len(parts)}", lineno
            )
        try:
            a, b, c = (int(p) for p in parts)
        except ValueError:
            raise FamilyParseError(f"non-integer vertex label in {line!r}", lineno)
        if len({a, b, c}) != 3:
            raise FamilyParseError(f"repeated vertex in triangle {line!r}", lineno)
        if min(a, b, c) < 0:
            raise FamilyParseError(f"negative vertex label in {line!r}", lineno)
        tris.append(triangle(a, b, c))
    return TriangleFamily(tuple(tris))


def family_to_text(family: TriangleFamily) -> str:
    return "".join(f"{a} {b} {c}\n" for a, b, c in family)


def load_family(path) -> TriangleFamily:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_family(handle.read())


def save_family(family: TriangleFamily, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(family_to_text(family))


def random_family(
    rng: random.Random, max_vertices: int = 8, max_triangles: int = 12
) -> TriangleFamily:
    """Seeded random family on at most max_vertices labels (for audits)."""
    n = rng.randint(4, max_vertices)
    pool = list(combinations(range(1, n + 1), 3))
    t = rng.randint(1, min(len(pool), max_triangles))
    return TriangleFamily(tuple(rng.sample(pool, t)))


def random_families(
    count: int, seed: int, max_vertices: int = 8, max_triangles: int = 12
) -> list[TriangleFamily]:
    rng = random.Random(seed)
    return [random_family(rng, max_vertices, max_triangles) for _ in range(count)]
