import math
from itertools import combinations, permutations

import pytest

from trispec import (
    TriangleFamily,
    enumerate_connected_families,
    lambda_of,
    phi_exact,
    phi_table,
)


def _connected(tris) -> bool:
    remaining = list(tris[1:])
    reach = set(tris[0])
    grew = True
    while grew and remaining:
        grew, keep = False, []
        for tri in remaining:
            if reach.intersection(tri):
                reach.update(tri)
                grew = True
            else:
                keep.append(tri)
        remaining = keep
    return not remaining


def labeled_bruteforce_classes(t: int) -> set[tuple]:
    """Isomorphism classes of connected t-triangle families, the slow way.

    Scans every t-subset of triples on exactly k labels (all of 1..k used,
    support connected) and keeps the subsets that are lexicographically
    minimal over all k! relabelings.  Independent of the orderly search:
    no canonicity pruning, no extension rules.
    """
    classes: set[tuple] = set()
    for k in range(3, 2 * t + 2):
        pool = list(combinations(range(1, k + 1), 3))
        if len(pool) < t:
            continue
        perms = [(0,) + p for p in permutations(range(1, k + 1))]
        for subset in combinations(pool, t):
            support = {v for tri in subset for v in tri}
            if len(support) != k or not _connected(subset):
                continue
            fam = tuple(subset)
            minimal = True
            for p in perms:
                image = tuple(
                    sorted(tuple(sorted((p[a], p[b], p[c]))) for a, b, c in fam)
                )
                if image < fam:
                    minimal = False
                    break
            if minimal:
                classes.add(fam)
    return classes


@pytest.mark.parametrize("t,count", [(1, 1), (2, 2), (3, 9)])
def test_class_counts_match_labeled_bruteforce(t, count):
    oracle = labeled_bruteforce_classes(t)
    ours = [fam.triangles for fam in enumerate_connected_families(t)]
    assert len(ours) == len(set(ours)) == len(oracle) == count
    assert set(ours) == oracle


@pytest.mark.parametrize("t", [2, 3])
def test_lambda_multisets_match_labeled_bruteforce(t):
    oracle = sorted(
        round(lambda_of(TriangleFamily(tris)), 8) for tris in labeled_bruteforce_classes(t)
    )
    ours = sorted(round(lambda_of(f), 8) for f in enumerate_connected_families(t))
    assert ours == oracle


def test_enumeration_is_deterministic():
    a = [f.triangles for f in enumerate_connected_families(3)]
    b = [f.triangles for f in enumerate_connected_families(3)]
    assert a == b
    assert a[0] == ((1, 2, 3),) or a[0][0] == (1, 2, 3)


def test_enumerated_families_are_connected_and_small():
    for t in (1, 2, 3, 4):
        for fam in enumerate_connected_families(t):
            assert len(fam) == t
            assert _connected(fam.triangles)
            assert len(fam.vertices()) <= 2 * t + 1
            assert fam.triangles[0] == (1, 2, 3)


def test_class_count_regression_at_t4():
    # Frozen from this implementation after the t <= 3 oracle checks; guards
    # against regressions in the extension or canonicity rules.
    assert sum(1 for _ in enumerate_connected_families(4)) == 51


def test_vertex_cap_argument():
    with pytest.raises(ValueError):
        list(enumerate_connected_families(5, max_vertices=13))
    with pytest.raises(ValueError):
        phi_exact(2, max_vertices=20)
    limited = list(enumerate_connected_families(2, max_vertices=4))
    assert [f.triangles for f in limited] == [((1, 2, 3), (1, 2, 4))]


def test_phi_small_budgets():
    values = {1: 3.0, 2: 3.0, 3: 3.0, 4: 4.0}
    for t, want in values.items():
        entry = phi_exact(t)
        assert entry.exhaustive
        assert abs(entry.phi - want) < 1e-8
        assert len(entry.witness) == t
        assert abs(lambda_of(entry.witness) - entry.phi) < 1e-9


def test_phi_five_is_three_with_disconnected_witness():
    entry = phi_exact(5)
    assert entry.exhaustive
    assert abs(entry.phi - 3.0) < 1e-8
    # best split: the 4,1 partition (clique plus a lone triangle)
    assert abs(lambda_of(entry.witness) - 3.0) < 1e-9
    assert len(entry.witness) == 5


def test_phi_prune_ab_invariant():
    for t in (3, 4, 5):
        pruned = phi_exact(t, prune=True)
        plain = phi_exact(t, prune=False)
        assert abs(pruned.phi - plain.phi) < 1e-9
        assert pruned.connected_max == pytest.approx(plain.connected_max, abs=1e-9)


def test_phi_respects_time_budget_flag():
    entry = phi_exact(5, budget_seconds=1e-9)
    assert not entry.exhaustive
    assert entry.phi <= 4.0 + 1e-8


def test_phi_checkpoint_resume(tmp_path):
    want = phi_exact(5)
    path = tmp_path / "phi5.ckpt"
    partial = phi_exact(5, budget_seconds=1e-9, checkpoint=str(path))
    assert not partial.exhaustive
    assert path.exists()
    for _ in range(50):
        entry = phi_exact(5, checkpoint=str(path))
        if entry.exhaustive:
            break
    assert entry.exhaustive
    assert abs(entry.phi - want.phi) < 1e-9
    # the finished checkpoint skips every subtree, so a rerun is instant
    again = phi_exact(5, checkpoint=str(path))
    assert abs(again.phi - want.phi) < 1e-9
    text = path.read_text()
    assert "lambda=" in text and "|" in text


def test_phi_table_envelope_reports_running_max():
    table = phi_table(5)
    envelope = table.lambda_envelope()
    assert envelope == {1: 3.0, 2: 3.0, 3: 3.0, 4: pytest.approx(4.0), 5: pytest.approx(4.0)}
    csv = table.to_csv()
    assert csv.splitlines()[0] == "t,phi,exhaustive,witness"
    assert len(csv.splitlines()) == 6
    data = table.to_dict()
    assert set(data) == {"1", "2", "3", "4", "5"}
    assert data["4"]["exhaustive"] is True


def test_phi_rejects_bad_budget():
    with pytest.raises(ValueError):
        phi_exact(0)
