"""Eigenvalues of the combinatorial Laplacians and the spectral parameter.

The spectral parameter of a family is the smallest positive eigenvalue of
its triangle Laplacian (equal for the edge-indexed and triangle-indexed
Gram forms).  Zero/positive separation is decided by exact rank of the
integer boundary factor, never by thresholding the floating spectrum; a
zero band of 1e-7 * (1 + lambda_max) is kept as a sanity assertion only.

Everything is computed per connected component of the support graph: all
five Laplacians are block-diagonal across components, so merging block
spectra is exact and keeps the dense eigensolver on small matrices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .families import (
    TriangleFamily,
    connected_components,
    support_graph,
)
from .incidence import build_delta0, build_delta1, exact_rank

ZERO_BAND_COEFF = 1e-7
PSD_TOL_COEFF = 1e-9
MIN_GAP_TOL = 1e-7
_CONVERGENCE_COEFF = 1e-12
_MAX_SWEEPS = 100


class SpectralError(RuntimeError):
    """Numerical failure: non-convergence or an inconsistent spectrum."""


def eigenvalues_symmetric(matrix, max_sweeps: int = _MAX_SWEEPS) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi.

    Sweeps run in fixed row order (p < q) until the off-diagonal Frobenius
    norm drops below 1e-12 * (1 + diagonal norm).  Rotations already below
    a per-element share of that target are skipped; a full sweep of skips
    therefore implies convergence, so the loop cannot stall silently.
    """
    a = np.array(getattr(matrix, "data", matrix), dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("eigenvalues_symmetric expects a square matrix")
    n = a.shape[0]
    if n == 0:
        return np.empty(0)
    asym = float(np.abs(a - a.T).max())
    if asym >= 1e-12:
        raise ValueError(f"matrix is not symmetric: max |A - A^T| = {asym:.3e}")
    if n == 1:
        return a.diagonal().copy()

    target = _CONVERGENCE_COEFF * (1.0 + math.sqrt(float(np.sum(a.diagonal() ** 2))))
    skip = target / (10.0 * n)
    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off < target:
            return np.sort(a.diagonal().copy())
        for p in range(n - 1):
            row_p = a[p]
            for q in range(p + 1, n):
                apq = row_p[q]
                if abs(apq) <= skip:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0
    raise SpectralError(
        f"Jacobi did not converge in {max_sweeps} sweeps; off-diagonal norm {_off_norm(a):.3e}"
    )


def _off_norm(a: np.ndarray) -> float:
    # Summing the off-diagonal squares directly avoids the cancellation that
    # |A|_F^2 - |diag|_F^2 suffers once the off part is near roundoff.
    b = a.copy()
    np.fill_diagonal(b, 0.0)
    return float(np.linalg.norm(b))


def zero_band(eigenvalues: Sequence[float]) -> float:
    lam_max = max(eigenvalues) if len(eigenvalues) else 0.0
    return ZERO_BAND_COEFF * (1.0 + lam_max)


def _check_bands(eigs: np.ndarray, nullity: int, context: str) -> None:
    band = zero_band(eigs)
    if len(eigs) and eigs[0] < -PSD_TOL_COEFF * (1.0 + max(float(eigs[-1]), 0.0)):
        raise SpectralError(f"{context}: negative eigenvalue {eigs[0]:.3e} on a Gram matrix")
    if nullity and float(np.abs(eigs[:nullity]).max()) >= band:
        raise SpectralError(
            f"{context}: eigenvalue inside the exact kernel exceeds the zero band"
        )
    if nullity < len(eigs) and eigs[nullity] <= band:
        raise SpectralError(
            f"{context}: eigenvalue at the first positive index {nullity} "
            f"({eigs[nullity]:.3e}) sits inside the zero band"
        )


def lambda_min_plus(gram, factor) -> float:
    """Smallest positive eigenvalue of a PSD Gram matrix with known factor.

    `gram` must equal F^T F or F F^T for the integer matrix `factor`; its
    nullity is dim - exact_rank(factor).
    """
    eigs = eigenvalues_symmetric(gram)
    rank = exact_rank(factor)
    if rank == 0:
        raise SpectralError("matrix has no positive eigenvalue")
    nullity = len(eigs) - rank
    if nullity < 0:
        raise SpectralError("factor rank exceeds the Gram dimension; wrong factor?")
    _check_bands(eigs, nullity, "lambda_min_plus")
    return float(eigs[nullity])


@dataclass(frozen=True)
class Spectrum:
    """Full eigenvalue list of one Laplacian with its exact nullity."""

    eigenvalues: tuple[float, ...]
    nullity: int
    source: str
    source_dim: int

    def positive(self) -> tuple[float, ...]:
        return self.eigenvalues[self.nullity :]


@dataclass(frozen=True)
class SpectralReport:
    lam: float
    tau: float | None
    nullity: int
    spectrum: Spectrum
    lambda_min_plus_l0: float
    lambda_min_plus_l1_total: float
    dims: dict

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "tau": self.tau,
            "nullity": self.nullity,
            "spectrum": list(self.spectrum.eigenvalues),
            "lambda_min_plus_L0": self.lambda_min_plus_l0,
            "lambda_min_plus_L1_total": self.lambda_min_plus_l1_total,
            "dims": dict(self.dims),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)


def _component_families(family: TriangleFamily) -> list[TriangleFamily]:
    graph = support_graph(family)
    parts = connected_components(graph)
    if len(parts) == 1:
        return [family]
    owner = {v: i for i, part in enumerate(parts) for v in part}
    buckets: list[list] = [[] for _ in parts]
    for tri in family:
        buckets[owner[tri[0]]].append(tri)
    return [TriangleFamily(tuple(b)) for b in buckets if b]


def _block_data(family: TriangleFamily):
    """Per-component boundary matrices and exact ranks."""
    blocks = []
    for part in _component_families(family):
        graph = support_graph(part)
        d0 = build_delta0(graph).entries
        d1 = build_delta1(part, graph).entries
        blocks.append(
            {
                "family": part,
                "edges": d0.shape[0],
                "vertices": d0.shape[1],
                "d0": d0,
                "d1": d1,
                "rank0": exact_rank(d0),
                "rank1": exact_rank(d1),
            }
        )
    return blocks


def lambda_of(family: TriangleFamily) -> float:
    """The spectral parameter alone, skipping the graph-side eigenproblems."""
    return _lambda_tau_spectrum(family)[0]


def _lambda_tau_spectrum(family: TriangleFamily, blocks=None):
    if len(family) == 0:
        raise SpectralError("spectral parameter of an empty family is undefined")
    if blocks is None:
        blocks = _block_data(family)
    edges = sum(b["edges"] for b in blocks)
    triangles = len(family)
    source = "L2_down" if triangles <= edges else "L1_up"
    merged: list[float] = []
    nullity = 0
    for b in blocks:
        d1 = b["d1"]
        gram = d1 @ d1.T if source == "L2_down" else d1.T @ d1
        eigs = eigenvalues_symmetric(gram)
        block_nullity = gram.shape[0] - b["rank1"]
        _check_bands(eigs, block_nullity, source)
        nullity += block_nullity
        merged.extend(float(x) for x in eigs)
    merged.sort()
    rank = sum(b["rank1"] for b in blocks)
    if rank == 0:
        raise SpectralError("boundary factor has rank zero")
    lam = merged[nullity]
    tau = merged[nullity + 1] if rank > 1 else None
    spectrum = Spectrum(
        eigenvalues=tuple(merged), nullity=nullity, source=source, source_dim=len(merged)
    )
    return lam, tau, spectrum, blocks


def spectral_report(family: TriangleFamily) -> SpectralReport:
    """Full spectral summary: parameter, tau, and both graph-side minima."""
    lam, tau, spectrum, blocks = _lambda_tau_spectrum(family)

    l0_min = math.inf
    l1_min = math.inf
    for b in blocks:
        d0, d1 = b["d0"], b["d1"]
        eigs0 = eigenvalues_symmetric(d0.T @ d0)
        null0 = b["vertices"] - b["rank0"]
        _check_bands(eigs0, null0, "L0_up")
        l0_min = min(l0_min, float(eigs0[null0]))
        eigs1 = eigenvalues_symmetric(d0 @ d0.T + d1.T @ d1)
        null1 = b["edges"] - b["rank0"] - b["rank1"]
        _check_bands(eigs1, null1, "L1_total")
        l1_min = min(l1_min, float(eigs1[null1]))

    graph = support_graph(family)
    return SpectralReport(
        lam=lam,
        tau=tau,
        nullity=spectrum.nullity,
        spectrum=spectrum,
        lambda_min_plus_l0=l0_min,
        lambda_min_plus_l1_total=l1_min,
        dims={
            "vertices": len(graph.vertices),
            "edges": len(graph.edges),
            "triangles": len(family),
            "spectrum_source": spectrum.source,
        },
    )


@dataclass(frozen=True)
class MinGapCheck:
    ok: bool
    residual: float
    lambda_min_plus_l1_total: float
    lambda_min_plus_l0: float
    lam: float


def verify_min_gap(family: TriangleFamily, tol: float = MIN_GAP_TOL) -> MinGapCheck:
    """Check lambda_min_plus(L1_total) == min(lambda_min_plus(L0), lambda)."""
    report = spectral_report(family)
    lhs = report.lambda_min_plus_l1_total
    rhs = min(report.lambda_min_plus_l0, report.lam)
    residual = abs(lhs - rhs)
    return MinGapCheck(
        ok=residual <= tol * max(1.0, report.lam),
        residual=residual,
        lambda_min_plus_l1_total=lhs,
        lambda_min_plus_l0=report.lambda_min_plus_l0,
        lam=report.lam,
    )
