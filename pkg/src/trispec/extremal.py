"""Structural certificates, the budget staircase, and exhaustive search.

The search enumerates one representative per isomorphism class by orderly
generation: families are grown one lexicographically larger triangle at a
time and a candidate is kept only when it is the canonical representative,
i.e. the minimum of its relabeling orbit.  Deleting the largest triangle
of a canonical family leaves a canonical family, so every class is
reached exactly once.  Connectivity is checked at yield time; interior
nodes of the tree may be disconnected.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Iterator, Sequence

from .families import (
    TriangleFamily,
    disjoint_union,
    support_graph,
    vertex_triangle_counts,
)
from .spectra import lambda_of

CEIL_GUARD = 1e-9
NEAR_INTEGER_TOL = 1e-9
RIGIDITY_TOL = 1e-8
_VERTEX_CAP = 12
_IMPROVE_EPS = 1e-12


def guarded_ceil(lam: float) -> int:
    """Ceiling of lambda with a 1e-9 guard against round-off just above an integer."""
    return math.ceil(lam - CEIL_GUARD)


def near_integer(lam: float) -> bool:
    return abs(lam - round(lam)) < NEAR_INTEGER_TOL


@dataclass(frozen=True)
class OverlapCertificate:
    """Local overlap conclusions forced by the spectral parameter."""

    n: int
    lam: float
    lambda_near_integer: bool
    min_edge_codegree: int
    min_common_neighbors: int
    min_vertex_triangles: int
    min_degree: int
    vertex_count: int
    passed: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "lambda": self.lam,
            "lambda_near_integer": self.lambda_near_integer,
            "min_edge_codegree": self.min_edge_codegree,
            "min_common_neighbors": self.min_common_neighbors,
            "min_vertex_triangles": self.min_vertex_triangles,
            "min_degree": self.min_degree,
            "vertex_count": self.vertex_count,
            "pass": self.passed,
        }


def check_overlap(family: TriangleFamily, lam: float | None = None) -> OverlapCertificate:
    """Evaluate the overlap conclusions with n = guarded ceiling of lambda.

    Every support edge must sit in at least n-2 triangles, endpoints of a
    support edge share at least n-2 common neighbors, every vertex lies in
    at least n-2 triangles with graph degree at least n-1, and the support
    has at least n vertices.
    """
    if lam is None:
        lam = lambda_of(family)
    n = guarded_ceil(lam)
    graph = support_graph(family)
    adjacency: dict[int, set[int]] = {v: set() for v in graph.vertices}
    for u, v in graph.edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    min_codegree = min(graph.edge_triangle_count.values())
    min_common = min(len(adjacency[u] & adjacency[v]) for u, v in graph.edges)
    min_vtris = min(vertex_triangle_counts(family).values())
    min_degree = min(len(adjacency[v]) for v in graph.vertices)
    vertex_count = len(graph.vertices)
    passed = (
        min_codegree >= n - 2
        and min_common >= n - 2
        and min_vtris >= n - 2
        and min_degree >= n - 1
        and vertex_count >= n
    )
    return OverlapCertificate(
        n=n,
        lam=lam,
        lambda_near_integer=near_integer(lam),
        min_edge_codegree=min_codegree,
        min_common_neighbors=min_common,
        min_vertex_triangles=min_vtris,
        min_degree=min_degree,
        vertex_count=vertex_count,
        passed=passed,
    )


@dataclass(frozen=True)
class CountingCertificate:
    """Size bounds forced by lambda > 2; inapplicable families pass vacuously."""

    v: int
    e: int
    t: int
    ceil_lambda: int
    lam: float
    lambda_near_integer: bool
    applicable: bool
    checks: tuple[tuple[str, int, int], ...]
    passed: bool

    def to_dict(self) -> dict:
        return {
            "v": self.v,
            "e": self.e,
            "t": self.t,
            "ceil_lambda": self.ceil_lambda,
            "lambda": self.lam,
            "lambda_near_integer": self.lambda_near_integer,
            "applicable": self.applicable,
            "checks": [list(c) for c in self.checks],
            "pass": self.passed,
        }


def check_counting(family: TriangleFamily, lam: float | None = None) -> CountingCertificate:
    """Check v(n-1) <= 2e, e(n-2) <= 3t, v(n-1)(n-2) <= 6t for n = ceil(lambda).

    The comparisons are cross-multiplied so both sides are exact integers.
    Only meaningful when lambda > 2; otherwise marked not applicable.
    """
    if lam is None:
        lam = lambda_of(family)
    graph = support_graph(family)
    v, e, t = len(graph.vertices), len(graph.edges), len(family)
    n = guarded_ceil(lam)
    applicable = lam > 2.0 + CEIL_GUARD
    if not applicable:
        return CountingCertificate(
            v=v, e=e, t=t, ceil_lambda=n, lam=lam,
            lambda_near_integer=near_integer(lam),
            applicable=False, checks=(), passed=True,
        )
    checks = (
        ("v(n-1) <= 2e", v * (n - 1), 2 * e),
        ("e(n-2) <= 3t", e * (n - 2), 3 * t),
        ("v(n-1)(n-2) <= 6t", v * (n - 1) * (n - 2), 6 * t),
    )
    passed = all(lhs <= rhs for _, lhs, rhs in checks)
    return CountingCertificate(
        v=v, e=e, t=t, ceil_lambda=n, lam=lam,
        lambda_near_integer=near_integer(lam),
        applicable=True, checks=checks, passed=passed,
    )


@dataclass(frozen=True)
class RigidityVerdict:
    """Behaviour of lambda against the budget comb(n, 3)."""

    n: int
    family_size: int
    budget: int
    lam: float
    vertex_count: int
    branch: str
    passed: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "family_size": self.family_size,
            "budget": self.budget,
            "lambda": self.lam,
            "vertex_count": self.vertex_count,
            "branch": self.branch,
            "pass": self.passed,
        }


def check_rigidity(n: int, family: TriangleFamily) -> RigidityVerdict:
    """Below budget lambda stays at most n-1; at budget, exceeding n-1 pins
    lambda to n and forces the complete family on n vertices."""
    if n < 3:
        raise ValueError(f"rigidity checks need n >= 3, got {n}")
    budget = comb(n, 3)
    size = len(family)
    lam = lambda_of(family)
    vertex_count = len(family.vertices())
    if size < budget:
        branch = "below_budget"
        passed = lam <= n - 1 + RIGIDITY_TOL
    elif size == budget and lam > n - 1 + RIGIDITY_TOL:
        branch = "at_budget_excess"
        passed = abs(lam - n) <= RIGIDITY_TOL and vertex_count == n
    else:
        branch = "none"
        passed = True
    return RigidityVerdict(
        n=n, family_size=size, budget=budget, lam=lam,
        vertex_count=vertex_count, branch=branch, passed=passed,
    )


@dataclass(frozen=True)
class ForbiddenInterval:
    """Triangle budgets just past comb(n,3) where the staircase value n is unreachable."""

    n: int
    m: int
    t_low: int
    t_high: int

    @property
    def empty(self) -> bool:
        return self.t_high < self.t_low

    def to_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "t_low": self.t_low, "t_high": self.t_high,
                "empty": self.empty}


def forbidden_interval(n: int) -> ForbiddenInterval:
    """Largest m with 3(m-1)(m+2) < (n-1)(n-2), then the interval
    [comb(n,3)+1, comb(n,3)+comb(m+1,2)-1] (possibly empty)."""
    if n < 3:
        raise ValueError(f"forbidden intervals need n >= 3, got {n}")
    m = 1
    while 3 * m * (m + 3) < (n - 1) * (n - 2):
        m += 1
    base = comb(n, 3)
    return ForbiddenInterval(n=n, m=m, t_low=base + 1, t_high=base + comb(m + 1, 2) - 1)


def lambda_staircase(t: int) -> int:
    """Largest n with comb(n, 3) <= t (minimum value 3; t >= 1)."""
    if t < 1:
        raise ValueError(f"staircase needs t >= 1, got {t}")
    n = 3
    while comb(n + 1, 3) <= t:
        n += 1
    return n


def lambda_staircase_many(ts) -> "np.ndarray":
    """Vectorized staircase for large ranges of t."""
    import numpy as np

    ts = np.asarray(ts, dtype=np.int64)
    if ts.size and int(ts.min()) < 1:
        raise ValueError("staircase needs t >= 1")
    top = 3
    while comb(top + 1, 3) <= int(ts.max(initial=1)):
        top += 1
    thresholds = np.array([comb(n, 3) for n in range(3, top + 2)], dtype=np.int64)
    return np.searchsorted(thresholds, ts, side="right") + 2


@dataclass(frozen=True)
class WindowVerdict:
    """Vertex-count window forced when lambda exceeds n-1 strictly between budgets."""

    n: int
    applicable: bool
    vertex_count: int
    lam: float
    low: int
    high: int
    passed: bool

    def to_dict(self) -> dict:
        return {"n": self.n, "applicable": self.applicable,
                "vertex_count": self.vertex_count, "lambda": self.lam,
                "low": self.low, "high": self.high, "pass": self.passed}


def vertex_window_check(family: TriangleFamily, n: int) -> WindowVerdict:
    if n < 9:
        raise ValueError(f"the vertex window statement needs n >= 9, got {n}")
    lam = lambda_of(family)
    size = len(family)
    applicable = comb(n, 3) < size < comb(n + 1, 3) and lam > n - 1 + RIGIDITY_TOL
    vertex_count = len(family.vertices())
    passed = (not applicable) or (n + 1 <= vertex_count <= n + 3)
    return WindowVerdict(
        n=n, applicable=applicable, vertex_count=vertex_count, lam=lam,
        low=n + 1, high=n + 3, passed=passed,
    )


# ---------------------------------------------------------------------------
# Orderly enumeration up to isomorphism.


def _is_lex_min(tris: tuple, k: int) -> bool:
    """True iff no relabeling of 1..k makes the sorted triangle list smaller.

    Depth-first search over assignments of new labels 1, 2, ... to old
    vertices.  At each partial assignment every triangle gets an optimistic
    lower-bound id (unassigned slots filled with the smallest future
    labels); the sorted bound list, strictified position by position, is a
    pointwise lower bound for any completion, so a branch whose bound list
    is lex >= the incumbent can be discarded.  A full assignment with a
    smaller list is a witness of non-minimality.
    """
    if tris[0] != (1, 2, 3):
        return False
    t = len(tris)
    new_of = [0] * (k + 1)

    def bound_cmp(j: int) -> int:
        los = []
        for a, b, c in tris:
            assigned = []
            open_slots = 0
            for v in (a, b, c):
                nl = new_of[v]
                if nl:
                    assigned.append(nl)
                else:
                    open_slots += 1
            assigned.sort()
            if open_slots:
                assigned.extend(range(j + 1, j + 1 + open_slots))
            los.append(tuple(assigned))
        los.sort()
        prev = None
        for lo, ref in zip(los, tris):
            if prev is not None and lo <= prev:
                lo = (prev[0], prev[1], prev[2] + 1)
            if lo < ref:
                return -1
            if lo > ref:
                return 1
            prev = lo
        return 0

    def descend(j: int) -> bool:
        nxt = j + 1
        for v in range(1, k + 1):
            if new_of[v]:
                continue
            new_of[v] = nxt
            verdict = bound_cmp(nxt)
            if verdict < 0:
                if nxt == k or descend(nxt):
                    new_of[v] = 0
                    return True
            new_of[v] = 0
        return False

    return not descend(0)


def _extensions(k: int, cap: int, last: tuple) -> Iterator[tuple]:
    """Triangles lex-greater than `last` over 1..min(k+3, cap) whose new
    labels, if any, are exactly the next consecutive ones."""
    top = min(k + 3, cap)
    for tri in combinations(range(1, top + 1), 3):
        if tri <= last:
            continue
        news = [v for v in tri if v > k]
        if news and news != list(range(k + 1, k + 1 + len(news))):
            continue
        yield tri


def _support_connected(tris: Sequence[tuple]) -> bool:
    remaining = list(tris[1:])
    reach = set(tris[0])
    grew = True
    while grew and remaining:
        grew = False
        keep = []
        for tri in remaining:
            if reach.intersection(tri):
                reach.update(tri)
                grew = True
            else:
                keep.append(tri)
        remaining = keep
    return not remaining


def _canonical_nodes(
    t: int, cap: int, skip_subtree: Callable[[tuple, int], bool] | None = None
) -> Iterator[tuple[tuple, int]]:
    """DFS over canonical families of 1..t triangles on labels within 1..cap.

    Yields (triangle_tuple, support_size) for every canonical node; the
    optional hook is consulted after a node is yielded and may cut off its
    descendants (used for budget pruning and checkpoint skipping).
    """

    def rec(tris: tuple, k: int) -> Iterator[tuple[tuple, int]]:
        yield tris, k
        if len(tris) == t:
            return
        if skip_subtree is not None and skip_subtree(tris, k):
            return
        for tri in _extensions(k, cap, tris[-1]):
            child = tris + (tri,)
            k2 = max(k, tri[2])
            if _is_lex_min(child, k2):
                yield from rec(child, k2)

    if t >= 1 and cap >= 3:
        yield from rec(((1, 2, 3),), 3)


def _resolve_cap(t: int, max_vertices: int | None) -> int:
    if max_vertices is None:
        return min(2 * t + 1, _VERTEX_CAP)
    limit = min(3 * t, _VERTEX_CAP)
    if max_vertices > limit:
        raise ValueError(
            f"max_vertices={max_vertices} exceeds the canonical-check budget; "
            f"use at most {limit} (connected families never need more than {2 * t + 1})"
        )
    if max_vertices < 3:
        raise ValueError("max_vertices must be at least 3")
    return max_vertices


def enumerate_connected_families(
    t: int, max_vertices: int | None = None
) -> Iterator[TriangleFamily]:
    """One representative per isomorphism class of connected t-triangle families.

    A connected family of t triangles has at most 2t+1 vertices, so the
    default vertex budget is exhaustive for connected classes.
    """
    if t < 1:
        raise ValueError(f"enumeration needs t >= 1, got {t}")
    cap = _resolve_cap(t, max_vertices)
    for tris, _k in _canonical_nodes(t, cap):
        if len(tris) == t and _support_connected(tris):
            yield TriangleFamily(tris)


# ---------------------------------------------------------------------------
# Exhaustive phi.


class _BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class PhiEntry:
    t: int
    phi: float
    witness: TriangleFamily
    exhaustive: bool
    connected_max: tuple[float, ...]  # best connected value for sizes 1..t

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "phi": self.phi,
            "witness": [list(tri) for tri in self.witness],
            "exhaustive": self.exhaustive,
            "connected_max": list(self.connected_max),
        }


@dataclass
class PhiTable:
    entries: dict[int, PhiEntry] = field(default_factory=dict)

    def add(self, entry: PhiEntry) -> None:
        self.entries[entry.t] = entry

    def lambda_envelope(self) -> dict[int, float]:
        """Running maximum of phi: the largest parameter achievable within budget."""
        out: dict[int, float] = {}
        best = -math.inf
        for t in sorted(self.entries):
            best = max(best, self.entries[t].phi)
            out[t] = best
        return out

    def to_dict(self) -> dict:
        return {str(t): self.entries[t].to_dict() for t in sorted(self.entries)}

    def to_csv(self) -> str:
        lines = ["t,phi,exhaustive,witness"]
        for t in sorted(self.entries):
            e = self.entries[t]
            wit = "|".join(",".join(str(v) for v in tri) for tri in e.witness)
            lines.append(f"{t},{e.phi!r},{int(e.exhaustive)},{wit}")
        return "\n".join(lines) + "\n"


def _format_prefix(tris: Sequence[tuple]) -> str:
    return ";".join(",".join(str(v) for v in tri) for tri in tris)


def _parse_prefix(text: str) -> tuple:
    return tuple(tuple(int(v) for v in part.split(",")) for part in text.split(";"))


class _Checkpoint:
    """Plain-text resume file: done depth-2 prefixes plus incumbent comments."""

    def __init__(self, path):
        self.path = path
        self.done: set[tuple] = set()
        self.best: dict[int, tuple[float, tuple]] = {}
        try:
            with open(path, "r", encoding="utf-8") as handle:
                for line in handle:
                    line = line.strip()
                    if not line:
                        continue
                    if line.startswith("#"):
                        self._parse_comment(line)
                    else:
                        self.done.add(_parse_prefix(line))
        except FileNotFoundError:
            pass

    def _parse_comment(self, line: str) -> None:
        parts = dict(
            item.split("=", 1) for item in line[1:].split() if "=" in item
        )
        if {"s", "lambda", "witness"} <= parts.keys():
            s = int(parts["s"])
            tris = tuple(sorted(_parse_prefix(parts["witness"].replace("|", ";"))))
            self.best[s] = (float(parts["lambda"]), tris)

    def write(self, best: dict[int, tuple[float, tuple]]) -> None:
        lines = []
        for s in sorted(best):
            lam, tris = best[s]
            wit = "|".join(",".join(str(v) for v in tri) for tri in tris)
            lines.append(f"# s={s} lambda={lam!r} witness={wit}\n")
        lines.extend(_format_prefix(p) + "\n" for p in sorted(self.done))
        with open(self.path, "w", encoding="utf-8") as handle:
            handle.writelines(lines)


def _phi_sweep(
    t: int,
    cap: int,
    prune: bool,
    budget_seconds: float | None,
    checkpoint: str | None,
) -> tuple[dict[int, tuple[float, tuple]], bool]:
    """One orderly sweep collecting the best connected family per size 1..t.

    Pruning discards a subtree only when the counting bound
    v(n-1)(n-2) <= 6s proves no descendant can beat the incumbent at any
    remaining size, so recorded maxima stay exact with or without it.
    """
    deadline = time.monotonic() + budget_seconds if budget_seconds else None

    best: dict[int, tuple[float, tuple]] = {}
    ckpt = _Checkpoint(checkpoint) if checkpoint else None
    if ckpt:
        best.update(ckpt.best)

    def improved(s: int, lam: float, tris: tuple) -> None:
        cur = best.get(s)
        if cur is None or lam > cur[0] + _IMPROVE_EPS:
            best[s] = (lam, tris)

    def required_ceiling(incumbent: float) -> int:
        r = round(incumbent)
        if abs(incumbent - r) < NEAR_INTEGER_TOL:
            return int(r) + 1
        return math.ceil(incumbent)

    def skip_subtree(tris: tuple, k: int) -> bool:
        if deadline is not None and time.monotonic() > deadline:
            raise _BudgetExceeded
        if ckpt and len(tris) == 2 and tris in ckpt.done:
            return True
        if not prune:
            return False
        for s in range(len(tris) + 1, t + 1):
            cur = best.get(s)
            if cur is None or cur[0] < 2.0:
                return False
            m_req = required_ceiling(cur[0])
            if m_req < 3 or k * (m_req - 1) * (m_req - 2) <= 6 * s:
                return False
        return True

    completed = True
    pending_d2: tuple | None = None
    try:
        for tris, k in _canonical_nodes(t, cap, skip_subtree):
            if ckpt and len(tris) == 2:
                if pending_d2 is not None:
                    ckpt.done.add(pending_d2)
                    ckpt.write(best)
                pending_d2 = tris
            if _support_connected(tris):
                improved(len(tris), lambda_of(TriangleFamily(tris)), tris)
    except _BudgetExceeded:
        completed = False
        pending_d2 = None
    if ckpt:
        if pending_d2 is not None:
            ckpt.done.add(pending_d2)
        ckpt.write(best)
    return best, completed


def _partition_best(
    best: dict[int, tuple[float, tuple]], t: int
) -> list[tuple[float, TriangleFamily | None]]:
    """Max-min over integer partitions: a disjoint union scores the minimum
    of its parts, so the optimum combines the best connected families."""
    best_any: list[tuple[float, TriangleFamily | None]] = [(math.inf, None)] + [
        (-math.inf, None)
    ] * t
    for s in range(1, t + 1):
        top: tuple[float, TriangleFamily | None] = (-math.inf, None)
        for p in range(1, s + 1):
            if p not in best:
                continue
            lam_p, tris_p = best[p]
            lam_rest, fam_rest = best_any[s - p]
            cand = min(lam_p, lam_rest)
            if cand > top[0] + _IMPROVE_EPS:
                part = TriangleFamily(tris_p)
                fam = part if fam_rest is None else disjoint_union(fam_rest, part)
                top = (cand, fam)
        best_any[s] = top
    return best_any


def _entry(
    t: int, best_any, best, completed: bool, cap: int
) -> PhiEntry:
    phi, witness = best_any[t]
    if witness is None:
        raise RuntimeError("search produced no family; budget too tight?")
    return PhiEntry(
        t=t,
        phi=phi,
        witness=witness,
        exhaustive=completed and cap >= 2 * t + 1,
        connected_max=tuple(best[s][0] if s in best else -math.inf for s in range(1, t + 1)),
    )


def phi_exact(
    t: int,
    *,
    prune: bool = True,
    max_vertices: int | None = None,
    budget_seconds: float | None = None,
    checkpoint: str | None = None,
) -> PhiEntry:
    """Exact maximum of the spectral parameter over all t-triangle families.

    One orderly sweep enumerates connected classes of every size up to t;
    disconnected families are covered by the partition rule.  The result
    is flagged exhaustive unless a time budget or vertex cap cut the
    search short.
    """
    if t < 1:
        raise ValueError(f"phi needs t >= 1, got {t}")
    cap = _resolve_cap(t, max_vertices)
    best, completed = _phi_sweep(t, cap, prune, budget_seconds, checkpoint)
    best_any = _partition_best(best, t)
    return _entry(t, best_any, best, completed, cap)


def phi_table(
    t_max: int, *, prune: bool = True, max_vertices: int | None = None
) -> PhiTable:
    """Entries for every budget 1..t_max from a single sweep."""
    if t_max < 1:
        raise ValueError(f"phi needs t >= 1, got {t_max}")
    cap = _resolve_cap(t_max, max_vertices)
    best, completed = _phi_sweep(t_max, cap, prune, None, None)
    best_any = _partition_best(best, t_max)
    table = PhiTable()
    for t in range(1, t_max + 1):
        table.add(_entry(t, best_any, best, completed, cap))
    return table
