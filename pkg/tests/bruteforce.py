"""Independent reference computations used as test oracles.

Nothing here touches block vectors, vertex factors or the radical
representation: operator words are applied one ladder step at a time.
"""
from fractions import Fraction
from itertools import product

import sympy

from shgseries.fock import TwoModeFock, apply_ladder

C, A = 1, -1


def apply_word(word, n):
    """Apply vertices bottom-to-top to |n,0>; returns (squared amplitude, state).

    C = a1^2 a2^dagger, A = (a1^dagger)^2 a2, each split into single ladder steps.
    """
    state = TwoModeFock(n, 0)
    amp2 = Fraction(1)
    for letter in word:
        steps = (
            [("sh", "create"), ("pump", "annihilate"), ("pump", "annihilate")]
            if letter == C
            else [("sh", "annihilate"), ("pump", "create"), ("pump", "create")]
        )
        for mode, kind in steps:
            a2, state = apply_ladder(state, mode, kind, 1)
            amp2 *= a2
            if amp2 == 0:
                return Fraction(0), None
    return amp2, state


def admissible_words(r):
    """All length-r words whose running SH count stays >= 0 (plain filter)."""
    out = []
    for word in product((C, A), repeat=r):
        height, ok = 0, True
        for letter in word:
            height += letter
            if height < 0:
                ok = False
                break
        if ok:
            out.append(word)
    return out


def expand_power(r, n):
    """Components of [a1^2 a2^dag + (a1^dag)^2 a2]^r |n,0> as exact surds."""
    vec = {}
    for word in product((C, A), repeat=r):
        amp2, state = apply_word(word, n)
        if amp2:
            vec[state] = vec.get(state, 0) + sympy.sqrt(sympy.Rational(amp2.numerator, amp2.denominator))
    return vec
