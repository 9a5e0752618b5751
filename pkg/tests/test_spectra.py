import json
import random

import numpy as np
import pytest

from trispec import (
    TriangleFamily,
    build_delta1,
    build_laplacian,
    complete_family,
    disjoint_union,
    eigenvalues_symmetric,
    exact_rank,
    lambda_min_plus,
    lambda_of,
    random_families,
    relabel,
    spectral_report,
    support_graph,
    verify_min_gap,
)
from trispec.spectra import SpectralError


def test_jacobi_matches_numpy_on_random_symmetric_matrices():
    rng = np.random.default_rng(12)
    for _ in range(40):
        n = int(rng.integers(1, 12))
        m = rng.integers(-5, 6, size=(n, n))
        sym = (m + m.T).astype(float)
        ours = eigenvalues_symmetric(sym)
        ref = np.linalg.eigvalsh(sym)
        assert np.max(np.abs(ours - ref)) < 1e-9


def test_jacobi_matches_numpy_on_family_laplacians():
    for fam in random_families(30, 31):
        gram = build_laplacian("L2_down", fam).data.astype(float)
        ours = eigenvalues_symmetric(gram)
        ref = np.linalg.eigvalsh(gram)
        assert np.max(np.abs(ours - ref)) < 1e-9


def test_jacobi_handles_converged_looking_integer_matrix():
    # Regression: the off-diagonal norm must be measured directly, not as a
    # difference of Frobenius norms, or small matrices like this stall.
    m = np.array(
        [
            [4, -1, -1, -1, -1],
            [-1, 3, 0, -1, -1],
            [-1, 0, 2, 0, -1],
            [-1, -1, 0, 3, -1],
            [-1, -1, -1, -1, 4],
        ],
        dtype=float,
    )
    eigs = eigenvalues_symmetric(m)
    assert np.max(np.abs(eigs - np.array([0.0, 2.0, 4.0, 5.0, 5.0]))) < 1e-9


def test_jacobi_rejects_asymmetric_input():
    with pytest.raises(ValueError):
        eigenvalues_symmetric(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_intro_table():
    fams = {
        3.0: TriangleFamily(((1, 2, 3),)),
        2.0: TriangleFamily(((1, 2, 3), (1, 2, 4))),
        1.0: TriangleFamily(((1, 2, 3), (1, 2, 4), (1, 3, 4))),
        4.0: complete_family(4),
    }
    for want, fam in fams.items():
        assert abs(lambda_of(fam) - want) < 1e-8


def test_report_spectrum_of_three_triangle_family():
    fam = TriangleFamily(((1, 2, 3), (1, 2, 4), (1, 3, 4)))
    report = spectral_report(fam)
    assert np.allclose(report.spectrum.eigenvalues, [1.0, 4.0, 4.0], atol=1e-8)
    assert report.nullity == 0
    assert abs(report.tau - 4.0) < 1e-8


def test_tau_absent_when_up_rank_is_one():
    report = spectral_report(TriangleFamily(((1, 2, 3),)))
    assert report.tau is None
    assert abs(report.lam - 3.0) < 1e-8


def test_nullity_is_exact_not_thresholded():
    # K4 has one dependent triangle: nullity 1 in the triangle-indexed matrix.
    report = spectral_report(complete_family(4))
    assert report.nullity == 1
    assert abs(report.lam - 4.0) < 1e-8
    fam = complete_family(5)
    r = spectral_report(fam)
    d1 = build_delta1(fam).entries
    assert r.nullity == len(fam) - exact_rank(d1)


def test_report_json_keys_are_stable():
    data = json.loads(spectral_report(complete_family(4)).to_json())
    assert set(data) == {
        "lambda",
        "tau",
        "nullity",
        "spectrum",
        "lambda_min_plus_L0",
        "lambda_min_plus_L1_total",
        "dims",
    }
    assert data["dims"]["triangles"] == 4


def test_lambda_invariant_under_relabeling():
    rng = random.Random(77)
    for fam in random_families(20, 78):
        lam = lambda_of(fam)
        verts = list(fam.vertices())
        images = rng.sample(range(1, 60), len(verts))
        assert abs(lambda_of(relabel(fam, dict(zip(verts, images)))) - lam) < 1e-9


def test_lambda_of_disjoint_union_is_minimum():
    for fam_a, fam_b in zip(random_families(10, 5), random_families(10, 6)):
        union = disjoint_union(fam_a, fam_b)
        want = min(lambda_of(fam_a), lambda_of(fam_b))
        assert abs(lambda_of(union) - want) < 1e-9


def test_min_gap_identity_on_random_families():
    for fam in random_families(50, 42):
        check = verify_min_gap(fam)
        assert check.ok, (fam.triangles, check)


def test_min_gap_identity_on_constructions():
    for n in range(3, 8):
        assert verify_min_gap(complete_family(n)).ok


def test_lambda_min_plus_on_known_graph():
    # Path 1-2-3 from one triangle fan: L0 there is the triangle's graph
    # Laplacian, smallest positive eigenvalue 3 (complete graph K3).
    fam = TriangleFamily(((1, 2, 3),))
    report = spectral_report(fam)
    assert abs(report.lambda_min_plus_l0 - 3.0) < 1e-8
    assert abs(report.lambda_min_plus_l1_total - 3.0) < 1e-7


def test_lambda_min_plus_rejects_negative_definite_part():
    with pytest.raises(SpectralError):
        lambda_min_plus(np.array([[-1.0, 0.0], [0.0, 2.0]]), np.eye(2, dtype=np.int64))
