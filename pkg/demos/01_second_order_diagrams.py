"""
Second-order diagrams
=====================

At order gamma^2 only two canonical diagrams survive: the first-order
creation process paired with itself, and the identity paired with
create-then-annihilate (counted twice, once for its conjugate).
"""

from shgseries import assemble_fock, diagram_term, enumerate_pairs, render_ascii

for pair in enumerate_pairs(2):
    print(render_ascii(pair))

# Their contributions at a concrete pump photon number. The v'=0 piece is
# negative: the probability that moves into v'=1 has to come from somewhere.
n = 5
for pair in enumerate_pairs(2):
    t = diagram_term(pair, n)
    print(f"{str(pair):22s} -> v'={t.target_v}  gamma^{t.gamma_power}  {t.coefficient}")

# Summed, that is +-n(n-1) for every n
for n in range(2, 8):
    e = assemble_fock(n, 2)
    print(n, e.coefficient(0, 2), e.coefficient(1, 2))
