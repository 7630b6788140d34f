"""Follow one step of the Toda flow through the Jacobian of its spectral curve.

Run:  python demos/theorem1_walkthrough.py
"""

from todagauss import (TodaState, add, compose, divisor_D, divisor_D_tilde, eigenvector_map,
                       reduce, spectral_curve, to_standard_form, toda_step, uvw)

s = TodaState.of([1, 2, 3], [4, 5, 6])
print("state      I =", s.I, " V =", s.V)

curve = spectral_curve(s)
print("curve      z^2 + h z - f = 0 with")
print("           h =", curve.h)
print("           f =", curve.f, "  genus", curve.genus)

e = uvw(s)
print("minors     u =", e.u, "  v =", e.v, "  w =", e.w)

psi = eigenvector_map(s)
D = divisor_D(s)
print("\nPsi(s)    ", psi)
print("D         ", D)

# Gauss composition followed by reduction
Pt, Qt = compose(psi, D)
print("\ncompose    P~ =", Pt, "  Q~ =", Qt)
print("reduce    ", reduce(Pt, Qt, curve))

t = toda_step(s)
print("\nafter one step I =", t.I)
print("               V =", t.V)
print("Psi(T s)  ", eigenvector_map(t))
print("Psi(s) + D", add(psi, D))
assert eigenvector_map(t) == add(psi, D)
assert spectral_curve(t) == curve

# the same statement on the model y^2 = h^2 + 4f
_, D_std = divisor_D_tilde(s)
print("\nstandard model: D~ =", D_std, " transported D =", to_standard_form(D))
assert to_standard_form(D) == D_std

# several steps: each one adds D
acc, state = psi, s
for step in range(1, 6):
    state = toda_step(state)
    acc = add(acc, D)
    assert eigenvector_map(state) == acc
    print(f"step {step}: Psi = {acc}")
