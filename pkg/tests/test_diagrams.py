from fractions import Fraction
from math import factorial
from pathlib import Path

import pytest
import sympy
from hypothesis import given, strategies as st

from bruteforce import admissible_words, expand_power
from shgseries.diagrams import (
    DiagramPair,
    InvalidPair,
    diagram_term,
    enumerate_pairs,
    enumerate_processes,
    probability_term,
    render_ascii,
    render_latex,
)
from shgseries.fock import TwoModeFock, radical_squared
from shgseries.processes import (
    InadmissibleProcess,
    ProcessVector,
    max_occupation,
    net_photons,
    process_amplitude,
)

GOLDEN = Path(__file__).parent / "golden"
P = ProcessVector
WORKED = DiagramPair((2, 1, 4, 1), (4,))


def test_enumerate_processes_small():
    assert enumerate_processes(0) == [P(())]
    assert set(enumerate_processes(2)) == {P((2,)), P((1, 1))}


def test_enumerate_processes_counts_against_word_filter():
    for r in range(0, 11):
        ours = enumerate_processes(r)
        ref = {P.from_word(w) for w in admissible_words(r)}
        assert len(ours) == len(set(ours)) == len(ref)
        assert set(ours) == ref


def test_enumeration_is_sorted_and_repeatable():
    a = enumerate_processes(7)
    assert a == sorted(a, key=lambda p: p.blocks)
    assert a == enumerate_processes(7)
    assert enumerate_pairs(10) == enumerate_pairs(10)


def test_pairs_order_two():
    pairs = enumerate_pairs(2)
    assert [(p.left, p.right, p.multiplicity) for p in pairs] == [
        (P(()), P((1, 1)), 2),
        (P((1,)), P((1,)), 1),
    ]
    # (), (2) output different SH numbers and are never materialized
    assert all({p.left, p.right} != {P(()), P((2,))} for p in pairs)
    with pytest.raises(InvalidPair):
        DiagramPair((), (2,))


def test_order_zero_pair_is_identity():
    assert enumerate_pairs(0) == [DiagramPair((), (), 1)]


def test_odd_order_rejected():
    with pytest.raises(ValueError):
        enumerate_pairs(3)


@pytest.mark.parametrize("R", [2, 4, 6, 8, 10, 12])
def test_pairs_are_canonical_and_matched(R):
    pairs = enumerate_pairs(R)
    assert len(pairs) == len(set(pairs))
    for p in pairs:
        assert p.left <= p.right
        assert p.left_order + p.right_order == R
        assert (p.left_order - p.right_order) % 2 == 0
        assert net_photons(p.left) == net_photons(p.right)
        assert p.multiplicity == (1 if p.left == p.right else 2)


@pytest.mark.parametrize("R", [2, 4, 6, 8])
def test_pairs_cover_all_matching_ordered_pairs(R):
    ordered = {
        (k, kp)
        for r in range(R + 1)
        for k in enumerate_processes(r)
        for kp in enumerate_processes(R - r)
        if net_photons(k) == net_photons(kp)
    }
    weight = sum(p.multiplicity for p in enumerate_pairs(R))
    assert weight == len(ordered)


def test_diagram_term_second_order():
    for n in range(0, 12):
        t = diagram_term(DiagramPair((1,), (1,)), n)
        assert (t.target_v, t.gamma_power, t.coefficient) == (1, 2, n * (n - 1))
        t = diagram_term(DiagramPair((), (1, 1)), n)
        assert (t.target_v, t.gamma_power, t.coefficient) == (0, 2, -n * (n - 1))


def test_diagram_term_worked_example():
    # doubled pair: n!(n-2)! / (2016 (n-4)! (n-10)!)
    for n in range(10, 15):
        closed = Fraction(factorial(n) * factorial(n - 2), 2016 * factorial(n - 4) * factorial(n - 10))
        t = diagram_term(WORKED, n)
        assert (t.target_v, t.gamma_power, t.coefficient) == (4, 12, closed)
    assert diagram_term(WORKED, 10).coefficient == 100800
    assert diagram_term(DiagramPair((2, 1, 4, 1), (4,), 1), 10).coefficient == 50400


def test_diagram_term_accepts_plain_tuples_and_rejects_mismatch():
    assert diagram_term((P((1,)), P((1,))), 3).coefficient == 6
    with pytest.raises(InvalidPair):
        diagram_term((P(()), P((2,))), 5)


def test_probability_term_examples():
    t = probability_term((1,), 4)
    assert (t.target_v, t.gamma_power, t.coefficient) == (1, 2, 12)
    for n in range(5):
        t = probability_term((), n)
        assert (t.target_v, t.gamma_power, t.coefficient) == (0, 0, 1)
    t = probability_term((1, 1, 1), 2)
    assert (t.target_v, t.gamma_power, t.coefficient) == (1, 6, Fraction(2, 9))
    with pytest.raises(InadmissibleProcess):
        probability_term((1, 2), 4)


def pairs_up_to(R_max):
    return [p for R in range(0, R_max + 1, 2) for p in enumerate_pairs(R)]


@given(st.sampled_from(pairs_up_to(10)), st.integers(0, 14))
def test_conjugate_symmetry(pair, n):
    assert diagram_term(pair, n) == diagram_term(pair.conjugate(), n)
    assert isinstance(diagram_term(pair, n).coefficient, Fraction)


@given(st.sampled_from(pairs_up_to(10)), st.integers(0, 14))
def test_vanishes_below_pump_threshold(pair, n):
    threshold = 2 * max(max_occupation(pair.left), max_occupation(pair.right))
    assert (diagram_term(pair, n).coefficient == 0) == (n < threshold)


@given(st.integers(0, 9).flatmap(lambda r: st.sampled_from(enumerate_processes(r))), st.integers(0, 14))
def test_probability_terms_nonnegative(k, n):
    assert probability_term(k, n).coefficient >= 0


@pytest.mark.parametrize("r", range(0, 9))
def test_completeness_against_word_expansion(r):
    for n in range(0, 13):
        ref = expand_power(r, n)
        ours = {}
        for k in enumerate_processes(r):
            amp = process_amplitude(k, n)
            if amp.is_zero():
                continue
            state = TwoModeFock(n - 2 * amp.net_v, amp.net_v)
            term = sympy.Rational(amp.cofactor.numerator, amp.cofactor.denominator) * sympy.sqrt(
                radical_squared(n, amp.net_v)
            )
            ours[state] = ours.get(state, 0) + term
        assert set(ours) == set(ref)
        for state in ref:
            assert sympy.simplify(ours[state] - ref[state]) == 0


# -- rendering ---------------------------------------------------------------

def test_ascii_first_order_pair():
    text = render_ascii(DiagramPair((1,), (1,)))
    body = text.splitlines()[2:-1]
    assert body[0].startswith("|n-2,1>") and body[0].endswith("<n-2,1|")
    assert sum(line.count(" o") for line in body) == 2


def test_ascii_identity_side_has_no_vertices():
    body = render_ascii(DiagramPair((), (1, 1))).splitlines()[2:-1]
    ket = [line.split("| ", 1)[0] for line in body]
    bra = [line.split("| ", 1)[1] for line in body]
    assert not any(col.strip().startswith("o") for col in ket)
    assert sum(col.strip().startswith("o") for col in bra) == 2


def test_ascii_golden():
    assert render_ascii(WORKED) == (GOLDEN / "pair_2-1-4-1__4.txt").read_text()


def test_ascii_worked_example_labels():
    body = render_ascii(WORKED).splitlines()[2:-1]
    ket_vertices = [line[:24].strip() for line in body if line[:24].strip().startswith("o")]
    # listed top to bottom: vertices 4, 3, 2, 1
    assert ket_vertices == ["o", "o 4", "o", "o 2"]
    text = render_ascii(WORKED)
    for label in ("|n-4,2>", "|n-2,1>", "|n-10,5>", "|n-8,4>", "<n-8,4|"):
        assert label in text


def test_latex_first_order_pair():
    src = render_latex(DiagramPair((1,), (1,)))
    assert src.count("[dot]") == 2
    assert src.count(r"\propag") == 8  # four per side
    assert src.startswith(r"\documentclass")


def test_latex_identity_pair():
    src = render_latex(DiagramPair((), ()))
    assert "[dot]" not in src
    assert src.count(r"\propag [chabos]") == 2
    assert src.count(r"\propag [fer]") == 2


def _balanced(src):
    depth = 0
    for ch in src:
        depth += {"{": 1, "}": -1}.get(ch, 0)
        if depth < 0:
            return False
    return depth == 0


@pytest.mark.parametrize("pair", pairs_up_to(6))
def test_latex_is_well_formed(pair):
    src = render_latex(pair)
    assert _balanced(src)
    for env in ("document", "tikzpicture", "feynhand"):
        assert src.count(rf"\begin{{{env}}}") == src.count(rf"\end{{{env}}}") == 1


def test_latex_golden():
    assert render_latex(WORKED) == (GOLDEN / "pair_2-1-4-1__4.tex").read_text()
