"""Perturbative expansion of the SH photon-number distribution.

``assemble_fock`` sums diagram contributions order by order into exact
rational coefficients of ``gamma^R``. Mixtures of pump Fock states are
weighted sums of those; since coherent and thermal weights are irrational,
mixture coefficients are ``mpmath.mpf`` at a configurable precision.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

import mpmath

from .diagrams import diagram_term, enumerate_pairs

DEFAULT_PRECISION = 50

Coefficient = Union[Fraction, mpmath.mpf]


class EmptyWeights(ValueError):
    pass


class InvalidParameter(ValueError):
    pass


class UndefinedQ(ArithmeticError):
    """Mandel Q requested for a distribution with zero mean."""

    def __init__(self, mean, variance):
        super().__init__("Mandel Q is undefined for zero mean SH photon number")
        self.mean = mean
        self.variance = variance


@dataclass(frozen=True)
class InputStateWeights:
    """Diagonal pump weights ``c_{n,n}`` with a bound on discarded mass."""

    weights: tuple[tuple[int, Coefficient], ...]
    tail_bound: Coefficient = 0
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if not self.weights:
            raise EmptyWeights("no pump Fock components given")
        seen = set()
        for n, c in self.weights:
            if n < 0 or c < 0:
                raise InvalidParameter(f"invalid weight ({n}, {c})")
            if n in seen:
                raise InvalidParameter(f"duplicate pump photon number {n}")
            seen.add(n)
        with mpmath.workdps(self.precision):
            total = mpmath.fsum(mpmath.mpf(to_mpf(c)) for _, c in self.weights)
            slack = mpmath.mpf(10) ** (-self.precision + 5)
            if total > 1 + slack:
                raise InvalidParameter(f"retained weights sum to {total} > 1")
            if total + to_mpf(self.tail_bound) < 1 - slack:
                raise InvalidParameter("retained weights plus tail bound fall short of 1")

    @property
    def cutoff_n(self) -> int:
        return max(n for n, _ in self.weights)

    def retained_mass(self):
        with mpmath.workdps(self.precision):
            return mpmath.fsum(to_mpf(c) for _, c in self.weights)


def to_mpf(c) -> mpmath.mpf:
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return mpmath.mpf(c)


@dataclass(frozen=True)
class DistributionExpansion:
    """Coefficients of ``gamma^R`` in ``Pr(v')``, keyed ``(v', R)``.

    Zero coefficients are not stored. For a single Fock input ``origin`` is
    that ``n`` and the pump count is ``n - 2 v'``. For a mixture ``origin``
    is the weights, ``terms`` hold the SH marginal and ``components`` the
    per-origin exact expansions.
    """

    origin: Union[int, InputStateWeights]
    max_order: int
    terms: dict[tuple[int, int], Coefficient]
    components: dict[int, "DistributionExpansion"] = field(default_factory=dict)

    @property
    def is_mixture(self) -> bool:
        return isinstance(self.origin, InputStateWeights)

    @property
    def tail_bound(self):
        return self.origin.tail_bound if self.is_mixture else 0

    @property
    def max_v(self) -> int:
        if self.is_mixture:
            return self.origin.cutoff_n // 2
        return self.origin // 2

    def coefficient(self, v: int, R: int) -> Coefficient:
        zero = mpmath.mpf(0) if self.is_mixture else Fraction(0)
        return self.terms.get((v, R), zero)

    def order_slice(self, R: int) -> dict[int, Coefficient]:
        return {v: c for (v, r), c in self.terms.items() if r == R}

    def sorted_terms(self) -> list[tuple[int, int, Coefficient]]:
        """``(v', R, coefficient)`` sorted by ``(R, v')``."""
        return [(v, R, self.terms[(v, R)]) for v, R in sorted(self.terms, key=lambda t: (t[1], t[0]))]


@lru_cache(maxsize=256)
def _fock_order(n: int, R: int) -> tuple[tuple[int, Fraction], ...]:
    acc: dict[int, Fraction] = {}
    for pair in enumerate_pairs(R):
        term = diagram_term(pair, n)
        if term.coefficient:
            acc[term.target_v] = acc.get(term.target_v, Fraction(0)) + term.coefficient
    return tuple(sorted((v, c) for v, c in acc.items() if c != 0))


def assemble_fock(n: int, R_max: int) -> DistributionExpansion:
    """Exact expansion of ``Pr(n-2v', v'; gamma)`` up to ``gamma^R_max``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if R_max < 0 or R_max % 2:
        raise ValueError(f"R_max must be even and nonnegative, got {R_max}")
    terms = {}
    for R in range(0, R_max + 1, 2):
        for v, c in _fock_order(n, R):
            terms[(v, R)] = c
    return DistributionExpansion(n, R_max, terms)


def assemble_mixture(w: InputStateWeights, R_max: int) -> DistributionExpansion:
    if not isinstance(w, InputStateWeights):
        w = InputStateWeights(tuple(w))
    components = {}
    terms: dict[tuple[int, int], mpmath.mpf] = {}
    with mpmath.workdps(w.precision):
        for n, c in sorted(w.weights):
            fock = assemble_fock(n, R_max)
            components[n] = fock
            c = to_mpf(c)
            for key, coef in fock.terms.items():
                terms[key] = terms.get(key, mpmath.mpf(0)) + c * to_mpf(coef)
    return DistributionExpansion(w, R_max, terms, components)


def fock_weights(n: int) -> InputStateWeights:
    return InputStateWeights(((n, Fraction(1)),), Fraction(0))


def _truncate(pmf, tail_after, epsilon, precision) -> InputStateWeights:
    """Keep ``pmf(0..N)`` for the smallest N whose tail mass is below epsilon."""
    weights = []
    N = 0
    while True:
        weights.append((N, pmf(N)))
        tail = tail_after(N)
        if tail < epsilon:
            return InputStateWeights(tuple(weights), tail, precision)
        N += 1


def coherent_weights(mean_photons: float, epsilon: float, precision: int = DEFAULT_PRECISION) -> InputStateWeights:
    """Poisson weights ``exp(-mu) mu^n / n!``."""
    if not mean_photons > 0 or not 0 < epsilon < 1:
        raise InvalidParameter("need mean_photons > 0 and 0 < epsilon < 1")
    with mpmath.workdps(precision):
        mu = mpmath.mpf(mean_photons)
        eps = mpmath.mpf(epsilon)

        def pmf(n):
            return mpmath.exp(-mu) * mu**n / mpmath.factorial(n)

        def tail(N):
            # P(X > N) = regularized lower incomplete gamma P(N+1, mu)
            return mpmath.gammainc(N + 1, 0, mu, regularized=True)

        return _truncate(pmf, tail, eps, precision)


def thermal_weights(mean_photons: float, epsilon: float, precision: int = DEFAULT_PRECISION) -> InputStateWeights:
    """Bose-Einstein weights ``mu^n / (1+mu)^(n+1)``."""
    if not mean_photons > 0 or not 0 < epsilon < 1:
        raise InvalidParameter("need mean_photons > 0 and 0 < epsilon < 1")
    with mpmath.workdps(precision):
        mu = mpmath.mpf(mean_photons)
        ratio = mu / (1 + mu)

        def pmf(n):
            return ratio**n / (1 + mu)

        def tail(N):
            return ratio ** (N + 1)

        return _truncate(pmf, tail, mpmath.mpf(epsilon), precision)


class Probability(NamedTuple):
    v: int
    probability: float
    remainder_estimate: float


def _poly_at(e: DistributionExpansion, v: int, gamma):
    """Exact (or mp) value of ``sum_R c(v,R) gamma^R`` and the top-order term."""
    if e.is_mixture:
        with mpmath.workdps(e.origin.precision):
            g = mpmath.mpf(gamma)
            total = mpmath.fsum(e.coefficient(v, R) * g**R for R in range(0, e.max_order + 1, 2))
            last = e.coefficient(v, e.max_order) * g**e.max_order
            return total, last
    g = Fraction(gamma)
    total = sum((e.coefficient(v, R) * g**R for R in range(0, e.max_order + 1, 2)), Fraction(0))
    return total, e.coefficient(v, e.max_order) * g**e.max_order


def evaluate(e: DistributionExpansion, gamma: float) -> list[Probability]:
    """Truncated ``Pr(v')`` at ``gamma`` for every reachable ``v'``.

    The remainder estimate is the magnitude of the highest included order,
    a heuristic and not a bound. Values outside [0, 1] are returned as is
    with a warning.
    """
    out = []
    for v in range(e.max_v + 1):
        p, last = _poly_at(e, v, gamma)
        p, last = float(p), abs(float(last))
        if not 0.0 <= p <= 1.0:
            warnings.warn(
                f"truncated Pr(v'={v}) = {p:.6g} at gamma={gamma} lies outside [0, 1]; "
                "the series is truncated too early",
                RuntimeWarning,
                stacklevel=2,
            )
        out.append(Probability(v, p, last))
    return out


class Moments(NamedTuple):
    mean: float
    variance: float
    mandel_q: float


def moments(e: DistributionExpansion, gamma: float) -> Moments:
    """Mean, variance and Mandel Q of the SH photon number at ``gamma``.

    Computed exactly from the truncated polynomial before rounding; negative
    Q means sub-Poissonian statistics at this truncation.
    """
    vals = {v: _poly_at(e, v, gamma)[0] for v in range(e.max_v + 1)}
    if e.is_mixture:
        with mpmath.workdps(e.origin.precision):
            mean = mpmath.fsum(v * p for v, p in vals.items())
            var = mpmath.fsum(v * v * p for v, p in vals.items()) - mean**2
            if mean == 0:
                raise UndefinedQ(float(mean), float(var))
            return Moments(float(mean), float(var), float((var - mean) / mean))
    mean = sum((v * p for v, p in vals.items()), Fraction(0))
    var = sum((v * v * p for v, p in vals.items()), Fraction(0)) - mean**2
    if mean == 0:
        raise UndefinedQ(float(mean), float(var))
    return Moments(float(mean), float(var), float((var - mean) / mean))
