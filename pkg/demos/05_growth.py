"""
Hitting any large budget with a guaranteed spectral floor
=========================================================
"""

from trispec import frobenius_decompose, frobenius_threshold, lambda_of, phi_lower_bound_family

# every budget above 2a^3+2a^2+1 splits into join-family sizes with clique
# parts a and a+1; the decomposition certificate records the exact identity
a = 3
print(f"guarantee threshold for a={a}: {frobenius_threshold(a)}")
for n in (73, 80, 99, 150):
    d = frobenius_decompose(a, n)
    print(f"  n={n}: x={d.x} y={d.y} z={d.z} verified={d.verify()}")
print()

# below the threshold the solver falls back to brute force when possible
d = frobenius_decompose(3, 34)
print(f"n=34 sits below the guarantee: {d.below_guarantee}, still verifies: {d.verify()}")
print()

# three disjoint blocks hit any budget t >= 81 with lambda at least
# the cube-root floor, witnessing the growth rate of the extremal value
for t in (81, 200, 500):
    witness = phi_lower_bound_family(t)
    lam = lambda_of(witness.family)
    print(
        f"t={t}: blocks a={witness.a}, family size {len(witness.family)}, "
        f"lambda {lam:.6f} >= {witness.a}"
    )
