"""
Four triangle families on four vertices
=======================================

The spectral parameter of a triangle family is the smallest positive
eigenvalue of its triangle Laplacian.  Already on four vertices it
separates four nested families, and on complete families it recovers
the vertex count exactly.
"""

from trispec import TriangleFamily, complete_family, lambda_of, spectral_report

families = [
    ("one triangle", TriangleFamily(((1, 2, 3),))),
    ("two sharing an edge", TriangleFamily(((1, 2, 3), (1, 2, 4)))),
    ("three of the four faces", TriangleFamily(((1, 2, 3), (1, 2, 4), (1, 3, 4)))),
    ("all four faces", complete_family(4)),
]

print("family                        lambda")
for name, fam in families:
    print(f"{name:<28}  {lambda_of(fam):.6f}")

# the full report also carries tau, the nullity and both min-gap values
report = spectral_report(families[2][1])
print()
print("three-face family in detail:")
print(report.to_json())

print()
print("complete families:")
for n in range(3, 9):
    print(f"  lambda(K_{n}) = {lambda_of(complete_family(n)):.9f}")
