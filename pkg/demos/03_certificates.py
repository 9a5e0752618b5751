"""
Structural certificates
=======================

Three cheap necessary conditions follow from a large spectral parameter:
every edge sits in many triangles, every pair of adjacent vertices has
many common neighbours, and the family cannot be too small.  The
checkers return certificates with the measured quantities, and the
complete family on five vertices shows the bounds are tight.
"""

import json

from trispec import (
    TriangleFamily,
    check_counting,
    check_overlap,
    check_rigidity,
    complete_family,
    disjoint_union,
)

k5 = complete_family(5)
cert = check_overlap(k5)
print("overlap certificate for K_5:")
print(json.dumps(cert.to_dict(), indent=2, sort_keys=True))
print("edge codegree meets ceil(lambda)-2 exactly:", cert.min_edge_codegree == 3)
print("minimum degree meets ceil(lambda)-1 exactly:", cert.min_degree == 4)
print()

count = check_counting(k5)
for name, lhs, rhs in count.checks:
    print(f"  {name}: {lhs} <= {rhs}")
print()

# rigidity: a family beating level n-1 needs the full budget of K_n,
# and at exactly that budget only K_n itself gets over the line
print("rigidity verdicts at n=5:")
for label, fam in [
    ("K_5 complete", k5),
    ("K_5 minus one face", TriangleFamily(k5.triangles[:-1])),
    ("two disjoint pieces", disjoint_union(complete_family(4), TriangleFamily(((1, 2, 3),)))),
]:
    verdict = check_rigidity(5, fam)
    print(f"  {label:<22} branch={verdict.branch:<18} passed={verdict.passed}")
