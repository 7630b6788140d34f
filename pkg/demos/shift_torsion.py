"""Rotating the lattice sites moves the eigenvector divisor by an n-torsion point.

Run:  python demos/shift_torsion.py [n] [seed]
"""

import sys

from todagauss import (ExperimentConfig, cyclic_shift, eigenvector_map, equal_mod_Cn,
                       gen_random_instance, scalar_mul, spectral_curve, sub,
                       torsion_generator, zero)

n = int(sys.argv[1]) if len(sys.argv) > 1 else 4
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0

s = gen_random_instance(ExperimentConfig(n=n, seed=seed, height=9))
curve = spectral_curve(s)
G = torsion_generator(curve)
psi = eigenvector_map(s)
print("random state I =", [str(c) for c in s.I])
print("             V =", [str(c) for c in s.V])
print("G =", G)

for k in range(n + 1):
    diff = sub(eigenvector_map(cyclic_shift(s, k)), psi)
    print(f"k={k}:  Psi(sigma^k s) - Psi(s) = {diff}   k*G = {scalar_mul(k, G)}")
    assert diff == scalar_mul(k, G)

print("n*G is zero:", scalar_mul(n, G) == zero(curve))
print("order of G is exactly n:", all(scalar_mul(k, G) != zero(curve) for k in range(1, n)))
print("equal_mod_Cn(Psi(sigma^2 s), Psi(s)) =", equal_mod_Cn(eigenvector_map(cyclic_shift(s, 2)), psi))
