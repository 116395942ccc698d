"""Exact ladder-operator algebra on two-mode Fock states.

Mode 1 is the pump (fundamental) field, mode 2 the second-harmonic field.
Everything here works with Python integers and :class:`fractions.Fraction`,
so no rounding ever enters the expansion path.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, isqrt
from typing import Literal

Mode = Literal["pump", "sh"]
Kind = Literal["create", "annihilate"]


class MismatchedRadical(ValueError):
    """Raised when overlapping amplitudes that land on orthogonal states."""


def falling_factorial(x: int, length: int) -> int:
    """Return ``x (x-1) ... (x-length+1)``.

    The empty product (``length == 0``) is 1. Any chain that reaches or
    crosses zero gives 0, which is how annihilation past the vacuum shows
    up in matrix elements.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    if length == 0:
        return 1
    if x < length:
        # x >= 0 and length > x: the chain hits 0. x < 0: nothing to annihilate.
        return 0
    return factorial(x) // factorial(x - length)


def rising_factorial(x: int, length: int) -> int:
    """``x (x+1) ... (x+length-1)`` for ``x >= 1``; 1 for empty products."""
    if length == 0:
        return 1
    return falling_factorial(x + length - 1, length)


@dataclass(frozen=True, order=True)
class TwoModeFock:
    """Occupation numbers ``|pump_count, sh_count>``."""

    pump_count: int
    sh_count: int

    def __post_init__(self):
        if self.pump_count < 0 or self.sh_count < 0:
            raise ValueError(f"negative occupation in {self!r}")

    def reachable_from(self, n: int) -> bool:
        """True when this state lies in the SHG subspace generated by ``|n,0>``."""
        return self.pump_count == n - 2 * self.sh_count

    def __str__(self):
        return f"|{self.pump_count},{self.sh_count}>"


def apply_ladder(
    state: TwoModeFock, mode: Mode, kind: Kind, count: int
) -> tuple[Fraction, TwoModeFock]:
    """Apply ``a^count`` or ``(a^dagger)^count`` on one mode.

    Returns the squared prefactor and the shifted state. A zero squared
    prefactor means the vacuum was annihilated; the returned state then has
    its count clamped at 0 and carries no meaning.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    occ = state.pump_count if mode == "pump" else state.sh_count
    if kind == "annihilate":
        amp2 = falling_factorial(occ, count)
        new = max(occ - count, 0)
    elif kind == "create":
        amp2 = rising_factorial(occ + 1, count)
        new = occ + count
    else:
        raise ValueError(f"unknown ladder kind {kind!r}")
    if mode == "pump":
        out = TwoModeFock(new, state.sh_count)
    elif mode == "sh":
        out = TwoModeFock(state.pump_count, new)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return Fraction(amp2), out


def radical_squared(n: int, v: int) -> int:
    """``v! * n!/(n-2v)!``, the square of the radical shared by every
    process mapping ``|n,0>`` to ``|n-2v,v>``. Zero when ``n < 2v``."""
    return factorial(v) * falling_factorial(n, 2 * v)


def exact_sqrt(q: Fraction) -> Fraction | None:
    """Rational square root of ``q`` if it exists, else None."""
    if q < 0:
        return None
    num, den = isqrt(q.numerator), isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


@dataclass(frozen=True)
class RadicalAmplitude:
    """An amplitude ``cofactor * sqrt(v! n!/(n-2v)!)`` with rational cofactor.

    Two amplitudes with the same ``(origin_n, net_v)`` share the radical, so
    their product is rational; see :func:`radical_mul`.
    """

    origin_n: int
    net_v: int
    cofactor: Fraction

    def __post_init__(self):
        if self.cofactor < 0:
            raise ValueError("cofactor must be nonnegative")
        if self.origin_n < 0 or self.net_v < 0:
            raise ValueError("origin_n and net_v must be nonnegative")

    @classmethod
    def from_squared(cls, n: int, v: int, squared: Fraction | int) -> "RadicalAmplitude":
        """Build from an exact squared value; the quotient by the radical
        must be a perfect rational square."""
        squared = Fraction(squared)
        if squared == 0:
            return cls(n, v, Fraction(0))
        rad2 = radical_squared(n, v)
        if rad2 == 0:
            raise ValueError(f"nonzero amplitude onto unreachable state (n={n}, v={v})")
        cof = exact_sqrt(squared / rad2)
        if cof is None:
            raise ValueError(
                f"squared amplitude {squared} is not a rational multiple of the "
                f"radical for (n={n}, v={v})"
            )
        return cls(n, v, cof)

    def squared(self) -> Fraction:
        return self.cofactor**2 * radical_squared(self.origin_n, self.net_v)

    def is_zero(self) -> bool:
        return self.cofactor == 0

    def __float__(self):
        return float(self.cofactor) * radical_squared(self.origin_n, self.net_v) ** 0.5


def radical_mul(a: RadicalAmplitude, b: RadicalAmplitude) -> Fraction:
    """Exact product of two amplitudes landing on the same output state."""
    if (a.origin_n, a.net_v) != (b.origin_n, b.net_v):
        raise MismatchedRadical(
            f"cannot overlap (n={a.origin_n}, v={a.net_v}) with (n={b.origin_n}, v={b.net_v})"
        )
    return a.cofactor * b.cofactor * radical_squared(a.origin_n, a.net_v)
