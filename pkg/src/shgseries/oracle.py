"""Exact SHG dynamics on the invariant subspace of a pump Fock input.

For input ``|n,0>`` the interaction only ever reaches ``|n-2v, v>`` with
``0 <= v <= n//2``. On that basis ``H/gamma`` is real symmetric tridiagonal
with zero diagonal and off-diagonal ``sqrt(w_v)``, where

    w_v = (n-2v)(n-2v-1)(v+1).

The diagonal similarity ``d_v = sqrt(w_0 ... w_{v-1})`` turns it into the
integer matrix ``T`` with subdiagonal 1 and superdiagonal ``w_v``, so

    (M^R)_{v,0} = d_v (T^R)_{v,0}

and every Taylor coefficient of ``|<v|exp(i gamma M)|0>|^2`` is rational.
Nothing in this module knows about processes or diagrams.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

import numpy as np
from scipy.linalg import eigh_tridiagonal


@dataclass(frozen=True)
class TridiagonalHamiltonian:
    origin_n: int
    dimension: int
    squared_couplings: tuple[int, ...]

    def scale_squared(self, v: int) -> int:
        """``d_v^2``, the product of the first ``v`` squared couplings."""
        return prod(self.squared_couplings[:v])

    def dense(self) -> np.ndarray:
        """Float symmetric matrix, for cross-checks only."""
        off = np.sqrt(np.asarray(self.squared_couplings, dtype=float))
        return np.diag(off, 1) + np.diag(off, -1)


def subspace_hamiltonian(n: int) -> TridiagonalHamiltonian:
    if n < 0:
        raise ValueError("n must be nonnegative")
    dim = n // 2 + 1
    w = tuple((n - 2 * v) * (n - 2 * v - 1) * (v + 1) for v in range(dim - 1))
    return TridiagonalHamiltonian(n, dim, w)


def _apply_integer_tridiagonal(h: TridiagonalHamiltonian, x: list[int]) -> list[int]:
    w, dim = h.squared_couplings, h.dimension
    return [
        (x[v - 1] if v > 0 else 0) + (w[v] * x[v + 1] if v < dim - 1 else 0)
        for v in range(dim)
    ]


# i^R as (real, imag)
_I_POWERS = ((1, 0), (0, 1), (-1, 0), (0, -1))


def amplitude_series(n: int, max_order: int) -> list[list[tuple[Fraction, Fraction]]]:
    """Rescaled amplitude Taylor coefficients ``i^R (T^R)_{v,0} / R!``.

    Returns ``series[v][R]`` as (real, imag) pairs; the physical amplitude
    coefficient is this times ``d_v``.
    """
    h = subspace_hamiltonian(n)
    x = [1] + [0] * (h.dimension - 1)
    series = [[] for _ in range(h.dimension)]
    for R in range(max_order + 1):
        re, im = _I_POWERS[R % 4]
        fact = factorial(R)
        for v in range(h.dimension):
            c = Fraction(x[v], fact)
            series[v].append((re * c, im * c))
        x = _apply_integer_tridiagonal(h, x)
    return series


def taylor_oracle(n: int, R_max: int) -> dict[tuple[int, int], Fraction]:
    """Nonzero Taylor coefficients of ``Pr(n-2v, v; gamma)`` keyed ``(v, R)``.

    Computed from the amplitude series by the Cauchy product with its
    complex conjugate. Odd orders and imaginary parts must cancel exactly;
    that is asserted rather than assumed.
    """
    if R_max < 0 or R_max % 2:
        raise ValueError(f"R_max must be even and nonnegative, got {R_max}")
    h = subspace_hamiltonian(n)
    series = amplitude_series(n, R_max)
    out: dict[tuple[int, int], Fraction] = {}
    for v in range(h.dimension):
        a = series[v]
        d2 = h.scale_squared(v)
        for P in range(R_max + 1):
            re = im = Fraction(0)
            for R in range(P + 1):
                ar, ai = a[R]
                br, bi = a[P - R]
                # a_R * conj(a_{P-R})
                re += ar * br + ai * bi
                im += ai * br - ar * bi
            if im != 0:
                raise ArithmeticError(f"non-real probability coefficient at v={v}, R={P}")
            if P % 2 and re != 0:
                raise ArithmeticError(f"odd-order coefficient at v={v}, R={P}")
            if re != 0:
                out[(v, P)] = re * d2
    return out


def float_evolve(n: int, gamma: float) -> np.ndarray:
    """``|<v| exp(i gamma M) |0>|^2`` for ``v = 0 .. n//2`` by eigendecomposition."""
    h = subspace_hamiltonian(n)
    if h.dimension == 1:
        return np.ones(1)
    off = np.sqrt(np.asarray(h.squared_couplings, dtype=float))
    evals, evecs = eigh_tridiagonal(np.zeros(h.dimension), off)
    psi = evecs @ (np.exp(1j * gamma * evals) * evecs[0])
    return np.abs(psi) ** 2
