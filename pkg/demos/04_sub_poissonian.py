"""
Mandel Q of the second harmonic
===============================

Q < 0 marks sub-Poissonian SH light. Compare a Fock pump, a coherent pump
and a thermal pump of the same mean photon number, at small coupling where
the order-12 series is reliable.
"""
import warnings

from shgseries import (
    assemble_fock,
    assemble_mixture,
    coherent_weights,
    moments,
    thermal_weights,
)

mean = 4
inputs = {
    "fock": assemble_fock(mean, 12),
    "coherent": assemble_mixture(coherent_weights(mean, 1e-10, precision=30), 12),
    "thermal": assemble_mixture(thermal_weights(mean, 1e-6, precision=30), 12),
}

print(f"{'gamma':>6s}" + "".join(f"{name:>14s}" for name in inputs))
for gamma in (0.005, 0.01, 0.02, 0.03):
    row = f"{gamma:6.3f}"
    for e in inputs.values():
        with warnings.catch_warnings():
            # heavy thermal tails push the truncated series out of range first
            warnings.simplefilter("ignore", RuntimeWarning)
            row += f"{moments(e, gamma).mandel_q:14.6f}"
    print(row)
