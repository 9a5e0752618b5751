import random
from fractions import Fraction

import numpy as np
import pytest

from trispec import (
    TriangleFamily,
    build_delta0,
    build_delta1,
    build_laplacian,
    exact_rank,
    harmonic_dimension,
    random_families,
    read_matrix_market,
    support_graph,
    write_matrix_market,
)


def rank_over_rationals(matrix) -> int:
    """Plain Gaussian elimination with Fractions; the independent rank oracle."""
    rows = [[Fraction(int(v)) for v in row] for row in np.asarray(matrix)]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][c]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def test_delta_matrices_of_single_triangle():
    fam = TriangleFamily(((1, 2, 3),))
    d0 = build_delta0(support_graph(fam))
    d1 = build_delta1(fam)
    # edges ordered (1,2), (1,3), (2,3); vertices 1, 2, 3
    assert d0.entries.tolist() == [[-1, 1, 0], [-1, 0, 1], [0, -1, 1]]
    assert d1.entries.tolist() == [[1, -1, 1]]
    assert not np.any(d1.entries @ d0.entries)


def test_laplacian_shapes_and_diagonal():
    fam = TriangleFamily(((1, 2, 3), (1, 2, 4), (1, 3, 4)))
    l2 = build_laplacian("L2_down", fam)
    assert l2.data.shape == (3, 3)
    assert all(int(v) == 3 for v in l2.data.diagonal())
    l1t = build_laplacian("L1_total", fam)
    l1d = build_laplacian("L1_down", fam)
    l1u = build_laplacian("L1_up", fam)
    assert np.array_equal(l1t.data, l1d.data + l1u.data)
    with pytest.raises(ValueError):
        build_laplacian("L3", fam)


def test_composite_is_zero_on_random_families():
    for fam in random_families(50, 101):
        g = support_graph(fam)
        d0 = build_delta0(g).entries
        d1 = build_delta1(fam, g).entries
        assert not np.any(d1 @ d0)


def test_exact_rank_matches_fraction_oracle_on_random_int_matrices():
    rng = random.Random(5)
    for _ in range(60):
        r = rng.randint(1, 7)
        c = rng.randint(1, 7)
        m = np.array(
            [[rng.randint(-4, 4) for _ in range(c)] for _ in range(r)], dtype=np.int64
        )
        assert exact_rank(m) == rank_over_rationals(m)


def test_exact_rank_matches_oracle_on_incidence_matrices():
    for fam in random_families(40, 17):
        g = support_graph(fam)
        d0 = build_delta0(g).entries
        d1 = build_delta1(fam, g).entries
        assert exact_rank(d0) == rank_over_rationals(d0)
        assert exact_rank(d1) == rank_over_rationals(d1)


def test_exact_rank_survives_entries_that_overflow_int64():
    # Bareiss intermediates blow past 2**31 here, forcing the big-int rerun.
    rng = random.Random(9)
    m = np.array(
        [[rng.randint(10**5, 10**6) for _ in range(6)] for _ in range(6)],
        dtype=np.int64,
    )
    assert exact_rank(m) == rank_over_rationals(m)


def test_rank_identity_on_random_families():
    # rank d0 + rank d1 + harmonic dimension accounts for every edge.
    for fam in random_families(50, 23):
        g = support_graph(fam)
        r0 = exact_rank(build_delta0(g).entries)
        r1 = exact_rank(build_delta1(fam, g).entries)
        assert r0 + r1 + harmonic_dimension(fam) == len(g.edges)


def test_harmonic_dimension_sees_the_hollow_middle():
    # Corner triangles of a subdivided triangle: the middle hole 4-5-6 is a
    # cycle no triangle fills, so exactly one harmonic class survives.
    assert harmonic_dimension(TriangleFamily(((1, 2, 3), (3, 4, 5)))) == 0
    sierpinski = TriangleFamily(((1, 4, 6), (2, 4, 5), (3, 5, 6)))
    assert harmonic_dimension(sierpinski) == 1


def test_matrix_market_round_trip(tmp_path):
    fam = TriangleFamily(((1, 2, 3), (1, 2, 4), (2, 3, 4)))
    d1 = build_delta1(fam).entries
    path = tmp_path / "d1.mtx"
    write_matrix_market(path, d1, comment="triangle boundary")
    back = read_matrix_market(path)
    assert np.array_equal(back, d1)
    text = path.read_text()
    assert text.startswith("%%MatrixMarket matrix coordinate integer general")
    assert "%" in text


def test_matrix_market_rejects_foreign_headers(tmp_path):
    path = tmp_path / "bad.mtx"
    path.write_text("%%MatrixMarket matrix array real general\n1 1\n0.5\n")
    with pytest.raises(ValueError):
        read_matrix_market(path)


def test_matrix_market_zero_row_matrix(tmp_path):
    m = np.zeros((2, 3), dtype=np.int64)
    path = tmp_path / "zero.mtx"
    write_matrix_market(path, m)
    assert np.array_equal(read_matrix_market(path), m)
