"""
Diagrams versus exact dynamics
==============================

The diagram sum is checked against an independent route: iterate the
integer tridiagonal matrix of H on the invariant subspace and square the
amplitude series. Then the truncated polynomial is compared to numerical
exponentiation.
"""
import numpy as np

from shgseries import assemble_fock, evaluate, float_evolve, taylor_oracle

for n in range(0, 11):
    e = assemble_fock(n, 12)
    same = e.terms == taylor_oracle(n, 12)
    print(f"n={n:2d}  {len(e.terms):3d} coefficients  exact match: {same}")

# Where does the order-12 truncation break down? Watch the error grow with gamma.
n = 8
e = assemble_fock(n, 12)
for gamma in (0.01, 0.05, 0.1, 0.15, 0.2):
    approx = np.array([p.probability for p in evaluate(e, gamma)])
    err = np.abs(approx - float_evolve(n, gamma)).max()
    print(f"gamma={gamma:.2f}  max |series - exact| = {err:.2e}")
