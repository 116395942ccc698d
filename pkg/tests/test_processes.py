from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from bruteforce import admissible_words, apply_word
from shgseries.fock import TwoModeFock
from shgseries.processes import (
    InadmissibleProcess,
    ProcessVector,
    apply_process,
    is_admissible,
    max_occupation,
    net_photons,
    partial_sums,
    process_amplitude,
    sha_factor,
    shc_factor,
    squared_amplitude,
)

WORKED = (2, 1, 4, 1)


@pytest.mark.parametrize(
    "k, expected",
    [(WORKED, (2, 1, 5, 4)), ((), ()), ((1, 1), (1, 0))],
)
def test_partial_sums(k, expected):
    assert partial_sums(k) == expected


@pytest.mark.parametrize(
    "k, ok",
    [((1, 1), True), ((1, 2), False), ((3, 1, 1, 2), True), ((), True), ((2, 2, 1, 2), False)],
)
def test_is_admissible(k, ok):
    assert is_admissible(k) is ok


def test_block_values_positive():
    with pytest.raises(ValueError):
        ProcessVector((1, 0, 1))


def test_shc_factor_examples():
    assert shc_factor(10, 1, WORKED) == 2 * 5040
    for n in range(2, 12):
        assert shc_factor(n, 1, (1,)) == n * (n - 1)
    assert shc_factor(8, 3, WORKED) == 0


def test_sha_factor_examples():
    assert sha_factor(10, 2, WORKED) == 112
    assert sha_factor(10, 4, WORKED) == 10
    for n in range(2, 12):
        assert sha_factor(n, 2, (1, 1)) == n * (n - 1)


def test_factor_index_parity_enforced():
    with pytest.raises(ValueError):
        shc_factor(10, 2, WORKED)
    with pytest.raises(ValueError):
        sha_factor(10, 1, WORKED)
    with pytest.raises(ValueError):
        shc_factor(10, 5, WORKED)


def test_process_amplitude_examples():
    f = process_amplitude((1,), 4)
    assert f.net_v == 1 and f.squared() == 12
    for n in range(6):
        ident = process_amplitude((), n)
        assert ident.net_v == 0 and ident.squared() == 1
    f = process_amplitude((1, 1, 1), 2)
    assert f.net_v == 1 and f.squared() == 8


def test_process_amplitude_rejects_inadmissible():
    with pytest.raises(InadmissibleProcess):
        process_amplitude((1, 2), 6)
    with pytest.raises(InadmissibleProcess):
        apply_process((1, 2), 6)


def test_apply_process_worked_example_n12():
    amp, state = apply_process(WORKED, 12)
    assert state == TwoModeFock(4, 4)
    ref2, ref_state = apply_word(ProcessVector(WORKED).to_word(), 12)
    assert ref_state == state
    assert amp.squared() == ref2
    closed = Fraction(
        2400 * factorial(12) * factorial(10) ** 2 * factorial(4),
        factorial(8) ** 2 * factorial(2) ** 2,
    )
    assert ref2 == closed


def test_apply_process_examples():
    amp, state = apply_process((1, 1), 5)
    assert state == TwoModeFock(5, 0) and amp.squared() == 400
    amp, _ = apply_process((4,), 6)
    assert amp.is_zero()


@pytest.mark.parametrize("r", range(0, 9))
def test_amplitude_matches_ladder_bruteforce(r):
    for word in admissible_words(r):
        k = ProcessVector.from_word(word)
        for n in range(0, 15):
            amp = process_amplitude(k, n)
            ref2, ref_state = apply_word(word, n)
            assert amp.squared() == ref2 == squared_amplitude(k, n)
            if ref2:
                assert ref_state == TwoModeFock(n - 2 * amp.net_v, amp.net_v)
            # zero exactly when the pump runs out somewhere along the way
            assert amp.is_zero() == (n < 2 * max_occupation(k))


def admissible_processes():
    return st.integers(0, 10).flatmap(
        lambda r: st.sampled_from([ProcessVector.from_word(w) for w in admissible_words(r)])
    )


@given(admissible_processes())
def test_run_length_roundtrip(k):
    assert ProcessVector.from_word(k.to_word()) == k
    assert len(k.to_word()) == k.order


@given(admissible_processes())
def test_net_photons_bounded_by_max(k):
    assert 0 <= net_photons(k) <= max_occupation(k)
