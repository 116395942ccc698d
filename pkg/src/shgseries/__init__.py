"""Exact perturbative photon-number statistics of spontaneous second
harmonic generation, built from elementary processes and double-sided
diagrams, with an independent invariant-subspace oracle."""

__version__ = "0.1.0"

from .fock import (
    MismatchedRadical,
    RadicalAmplitude,
    TwoModeFock,
    apply_ladder,
    falling_factorial,
    radical_mul,
)
from .processes import (
    InadmissibleProcess,
    ProcessVector,
    apply_process,
    is_admissible,
    partial_sums,
    process_amplitude,
    sha_factor,
    shc_factor,
)
from .diagrams import (
    DiagramPair,
    InvalidPair,
    SeriesTerm,
    diagram_term,
    enumerate_pairs,
    enumerate_processes,
    probability_term,
    render_ascii,
    render_latex,
)
from .series import (
    DistributionExpansion,
    EmptyWeights,
    InputStateWeights,
    InvalidParameter,
    UndefinedQ,
    assemble_fock,
    assemble_mixture,
    coherent_weights,
    evaluate,
    moments,
    thermal_weights,
)
from .oracle import TridiagonalHamiltonian, float_evolve, subspace_hamiltonian, taylor_oracle
