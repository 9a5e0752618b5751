"""Signed incidence matrices, combinatorial Laplacians, and exact rank.

All matrices are integer-valued.  The boundary maps follow the sign
conventions in `families`: delta0 rows are edges (one -1 at the smaller
endpoint, one +1 at the larger), delta1 rows are triangles (+1, -1, +1 on
their ascending edge list).  Ranks are computed over the rationals by
fraction-free elimination, never by floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .families import (
    SupportGraph,
    TriangleFamily,
    sign_edge_vertex,
    sign_triangle_edge,
    support_graph,
)

LAPLACIAN_KINDS = ("L0_up", "L1_down", "L1_up", "L2_down", "L1_total")

# Bareiss updates multiply two active entries; keeping them below 2**31
# guarantees the int64 intermediate a*p - b*c cannot overflow.
_INT64_SAFE = 2**31 - 1


@dataclass(frozen=True)
class SignedIncidence:
    """Dense signed incidence matrix with row/column simplex labels."""

    rows: tuple
    cols: tuple
    entries: np.ndarray

    def __post_init__(self):
        self.entries.flags.writeable = False

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


@dataclass(frozen=True)
class IntSymMatrix:
    """Symmetric integer matrix tagged with its Laplacian kind."""

    data: np.ndarray
    kind: str
    index: tuple

    def __post_init__(self):
        self.data.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.data.shape[0]


def build_delta0(graph: SupportGraph) -> SignedIncidence:
    """Edge-vertex boundary matrix, |E| x |V|."""
    vidx = {v: i for i, v in enumerate(graph.vertices)}
    m = np.zeros((len(graph.edges), len(graph.vertices)), dtype=np.int64)
    for r, (u, v) in enumerate(graph.edges):
        m[r, vidx[u]] = sign_edge_vertex((u, v), u)
        m[r, vidx[v]] = sign_edge_vertex((u, v), v)
    return SignedIncidence(rows=graph.edges, cols=graph.vertices, entries=m)


def build_delta1(
    family: TriangleFamily, graph: SupportGraph | None = None
) -> SignedIncidence:
    """Triangle-edge boundary matrix, |F| x |E|."""
    if graph is None:
        graph = support_graph(family)
    eidx = {e: i for i, e in enumerate(graph.edges)}
    m = np.zeros((len(family), len(graph.edges)), dtype=np.int64)
    for r, tri in enumerate(family):
        a, b, c = tri
        for e in ((a, b), (a, c), (b, c)):
            m[r, eidx[e]] = sign_triangle_edge(tri, e)
    return SignedIncidence(rows=family.triangles, cols=graph.edges, entries=m)


def build_laplacian(kind: str, family: TriangleFamily) -> IntSymMatrix:
    if kind not in LAPLACIAN_KINDS:
        raise ValueError(f"unknown Laplacian kind {kind!r}; choose from {LAPLACIAN_KINDS}")
    graph = support_graph(family)
    d0 = build_delta0(graph).entries
    if kind == "L0_up":
        return IntSymMatrix(d0.T @ d0, kind, graph.vertices)
    if kind == "L1_down":
        return IntSymMatrix(d0 @ d0.T, kind, graph.edges)
    d1 = build_delta1(family, graph).entries
    if kind == "L1_up":
        return IntSymMatrix(d1.T @ d1, kind, graph.edges)
    if kind == "L2_down":
        return IntSymMatrix(d1 @ d1.T, kind, family.triangles)
    return IntSymMatrix(d0 @ d0.T + d1.T @ d1, "L1_total", graph.edges)


def _as_int_array(matrix) -> np.ndarray:
    arr = getattr(matrix, "entries", None)
    if arr is None:
        arr = getattr(matrix, "data", matrix)
    arr = np.asarray(arr)
    if arr.ndim != 2:
        raise ValueError("exact_rank expects a 2-d matrix")
    if arr.dtype == object:
        return arr
    if not np.issubdtype(arr.dtype, np.integer):
        raise TypeError("exact_rank is integer-only; got dtype " + str(arr.dtype))
    return arr


def exact_rank(matrix) -> int:
    """Rank over the rationals via fraction-free (Bareiss) elimination.

    The fast path runs on int64 with a magnitude guard; if intermediate
    values could overflow it reruns the same elimination on Python's
    arbitrary-precision integers (object dtype).
    """
    arr = _as_int_array(matrix)
    if arr.size == 0:
        return 0
    if arr.dtype != object:
        try:
            return _bareiss_rank(arr.astype(np.int64), guarded=True)
        except OverflowError:
            pass
    big = np.empty(arr.shape, dtype=object)
    for i, row in enumerate(arr):
        big[i, :] = [int(x) for x in row]
    return _bareiss_rank(big, guarded=False)


def _bareiss_rank(work: np.ndarray, guarded: bool) -> int:
    a = work.copy()
    rows, cols = a.shape
    r = 0
    prev = a.dtype.type(1) if guarded else 1
    for c in range(cols):
        if r == rows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if len(nz) == 0:
            continue
        # Smallest-magnitude pivot, ties broken by sparsest row: curbs the
        # growth of the minors that Bareiss carries as matrix entries.
        best = None
        for i in nz:
            row_idx = r + int(i)
            key = (abs(int(col[i])), int(np.count_nonzero(a[row_idx, c:])), row_idx)
            if best is None or key < best:
                best = key
        pr = best[2]
        if pr != r:
            a[[r, pr], :] = a[[pr, r], :]
        piv = a[r, c]
        if r + 1 < rows:
            sub = a[r + 1 :, c + 1 :]
            colv = a[r + 1 :, c : c + 1]
            rowv = a[r : r + 1, c + 1 :]
            if guarded:
                bound = max(
                    int(np.abs(sub).max(initial=0)),
                    int(np.abs(colv).max(initial=0)),
                    int(np.abs(rowv).max(initial=0)),
                    abs(int(piv)),
                )
                if bound > _INT64_SAFE:
                    raise OverflowError("int64 Bareiss guard tripped")
            a[r + 1 :, c + 1 :] = (sub * piv - colv * rowv) // prev
            a[r + 1 :, c] = 0
        prev = piv
        r += 1
    return r


def harmonic_dimension(family: TriangleFamily) -> int:
    """dim(ker delta0^T  intersect  ker delta1), via one stacked exact rank."""
    graph = support_graph(family)
    d0 = build_delta0(graph).entries
    d1 = build_delta1(family, graph).entries
    stacked = np.vstack([d0.T, d1])
    return d0.shape[0] - exact_rank(stacked)


def write_matrix_market(path, matrix, comment: str = "") -> None:
    """Write an integer matrix in MatrixMarket coordinate format (1-based)."""
    arr = _as_int_array(matrix)
    rows, cols = arr.shape
    ri, ci = np.nonzero(arr)
    lines = ["%%MatrixMarket matrix coordinate integer general\n"]
    for part in comment.splitlines():
        lines.append(f"% {part}\n")
    lines.append(f"{rows} {cols} {len(ri)}\n")
    for i, j in zip(ri, ci):
        lines.append(f"{i + 1} {j + 1} {int(arr[i, j])}\n")
    with open(path, "w", encoding="utf-8") as handle:
        handle.writelines(lines)


def read_matrix_market(path) -> np.ndarray:
    """Read back a coordinate-integer MatrixMarket file as a dense int64 array."""
    with open(path, "r", encoding="utf-8") as handle:
        header = handle.readline().split()
        expected = ["%%MatrixMarket", "matrix", "coordinate", "integer", "general"]
        if [w.lower() for w in header] != [w.lower() for w in expected]:
            raise ValueError(f"unsupported MatrixMarket header: {' '.join(header)}")
        size_line = None
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("%"):
                continue
            if size_line is None:
                size_line = line
                rows, cols, nnz = (int(x) for x in line.split())
                out = np.zeros((rows, cols), dtype=np.int64)
                seen = 0
                continue
            i, j, v = line.split()
            out[int(i) - 1, int(j) - 1] = int(v)
            seen += 1
        if size_line is None:
            raise ValueError("MatrixMarket file has no size line")
        if seen != nnz:
            raise ValueError(f"expected {nnz} entries, found {seen}")
    return out
