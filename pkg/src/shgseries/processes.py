"""Elementary SHG processes encoded as block-multiplicity vectors.

A process is an alternating product of the two interaction vertices,
applied bottom-to-top::

    C = a1^2 a2^dagger          (one SH photon created, two pump photons lost)
    A = (a1^dagger)^2 a2        (the reverse)

Consecutive identical vertices are merged into a block, so a process is a
tuple ``(k_1, ..., k_l)`` of positive integers where odd blocks (1-based)
are C-runs and even blocks are A-runs. The empty tuple is the identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from math import prod

from .fock import RadicalAmplitude, TwoModeFock, falling_factorial

CREATE = 1
ANNIHILATE = -1


class InadmissibleProcess(ValueError):
    """Raised when a process would drive the SH occupation below zero."""


@dataclass(frozen=True, order=True)
class ProcessVector:
    """Run-length encoded operator word.

    Instances compare on ``(order, blocks)``, which is the canonical order
    used throughout enumeration and pairing.
    """

    order: int
    blocks: tuple[int, ...]

    def __init__(self, blocks=()):
        blocks = tuple(int(b) for b in blocks)
        if any(b < 1 for b in blocks):
            raise ValueError(f"block multiplicities must be >= 1, got {blocks}")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "order", sum(blocks))

    @property
    def length(self) -> int:
        return len(self.blocks)

    @classmethod
    def from_word(cls, word) -> "ProcessVector":
        """Encode a word of +1 (C vertex) / -1 (A vertex) letters.

        The word must start with C: a leading A annihilates the SH vacuum,
        and the block-parity convention has no slot for it.
        """
        word = tuple(word)
        if word and word[0] != CREATE:
            raise InadmissibleProcess("a process must start with an SH-creation vertex")
        return cls(len(list(g)) for _, g in groupby(word))

    def to_word(self) -> tuple[int, ...]:
        word: list[int] = []
        for j, k in enumerate(self.blocks):
            word.extend([CREATE if j % 2 == 0 else ANNIHILATE] * k)
        return tuple(word)

    def __repr__(self):
        return f"ProcessVector{self.blocks}"

    def __str__(self):
        return "(" + ",".join(map(str, self.blocks)) + ")"


def _as_process(k) -> ProcessVector:
    return k if isinstance(k, ProcessVector) else ProcessVector(k)


def partial_sums(k) -> tuple[int, ...]:
    """Running net SH photon number ``K_j`` after each block."""
    k = _as_process(k)
    out, total = [], 0
    for j, kj in enumerate(k.blocks):
        total += kj if j % 2 == 0 else -kj
        out.append(total)
    return tuple(out)


def is_admissible(k) -> bool:
    """True iff the running SH occupation never goes negative.

    This is weaker than requiring ``k_j >= k_{j+1}`` blockwise: e.g.
    ``(3, 1, 1, 2)`` keeps the SH count at (3, 2, 3, 1) and is a perfectly
    good nonzero operator word.
    """
    return all(K >= 0 for K in partial_sums(k))


def net_photons(k) -> int:
    K = partial_sums(k)
    return K[-1] if K else 0


def max_occupation(k) -> int:
    return max(partial_sums(k), default=0)


def shc_factor(n: int, j: int, k) -> Fraction:
    """Squared SH-creation factor of odd block ``j`` (1-based).

    ``K_j!/(K_j-k_j)! * [n-2(K_j-k_j)]!/(n-2K_j)!``; zero when the pump runs dry.
    """
    k = _as_process(k)
    if j % 2 != 1 or not 1 <= j <= k.length:
        raise ValueError(f"SH-creation blocks have odd index in [1, {k.length}], got {j}")
    kj = k.blocks[j - 1]
    before = partial_sums(k)[j - 1] - kj
    return Fraction(falling_factorial(before + kj, kj) * falling_factorial(n - 2 * before, 2 * kj))


def sha_factor(n: int, j: int, k) -> Fraction:
    """Squared SH-annihilation factor of even block ``j`` (1-based).

    ``(K_j+k_j)!/K_j! * (n-2K_j)!/[n-2(K_j+k_j)]!``.
    """
    k = _as_process(k)
    if j % 2 != 0 or not 2 <= j <= k.length:
        raise ValueError(f"SH-annihilation blocks have even index in [2, {k.length}], got {j}")
    kj = k.blocks[j - 1]
    after = partial_sums(k)[j - 1]
    if after < 0:
        return Fraction(0)
    return Fraction(falling_factorial(after + kj, kj) * falling_factorial(n - 2 * after, 2 * kj))


def squared_amplitude(k, n: int) -> Fraction:
    """``f_k(n, K_l)^2`` as the product of all squared vertex factors."""
    k = _as_process(k)
    return prod(
        (shc_factor(n, j, k) if j % 2 else sha_factor(n, j, k) for j in range(1, k.length + 1)),
        start=Fraction(1),
    )


def process_amplitude(k, n: int) -> RadicalAmplitude:
    """Amplitude ``f_k(n, v)`` of ``A_k |n,0> = f_k(n,v) |n-2v, v>``."""
    k = _as_process(k)
    if not is_admissible(k):
        raise InadmissibleProcess(f"{k!r} drives the SH occupation negative")
    return RadicalAmplitude.from_squared(n, net_photons(k), squared_amplitude(k, n))


def apply_process(k, n: int) -> tuple[RadicalAmplitude, TwoModeFock]:
    amp = process_amplitude(k, n)
    v = amp.net_v
    # Output state is only physical when n >= 2v; the amplitude is 0 otherwise.
    return amp, TwoModeFock(max(n - 2 * v, 0), v)
