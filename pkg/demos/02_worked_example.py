"""
A twelfth-order process superposition
=====================================

The ket side runs k = (2, 1, 4, 1): create two SH photons, destroy one,
create four, destroy one. The bra side creates four at once. Both end in
|n-8, 4>, so the overlap contributes at gamma^12.
"""
from fractions import Fraction
from math import factorial

from shgseries import DiagramPair, diagram_term, partial_sums, render_ascii, render_latex
from shgseries.processes import sha_factor, shc_factor

k = (2, 1, 4, 1)
print("running SH photon number:", partial_sums(k))

n = 10
for j in range(1, 5):
    f2 = shc_factor(n, j, k) if j % 2 else sha_factor(n, j, k)
    print(f"block {j}: squared vertex factor at n={n}: {f2}")

pair = DiagramPair(k, (4,))
print(render_ascii(pair))

# Single diagram versus diagram plus conjugate, against the closed form
for n in range(10, 15):
    single = diagram_term(DiagramPair(k, (4,), 1), n).coefficient
    both = diagram_term(pair, n).coefficient
    closed = Fraction(factorial(n) * factorial(n - 2), factorial(n - 4) * factorial(n - 10))
    print(n, single, both, both == closed / 2016)

# LaTeX source (TikZ-FeynHand); compile with pdflatex
with open("worked_example.tex", "w") as fh:
    fh.write(render_latex(pair))
