from __future__ import annotations

from fractions import Fraction

import pytest

from oracles import commutators, homogeneous_span_contains
from qfrt.frt import frt_presentation, minus_flip
from qfrt.ncalg import (
    DINV,
    NCPoly,
    UnknownGeneratorError,
    Verdict,
    complete,
    gen,
    gen_name,
    ideal_contains,
    ideal_equals,
    parse_gen,
    parse_poly,
    parse_scalar,
    t,
    t_alphabet,
    word_key,
    x,
)

A, B, C, D = (gen(t(1, 1)), gen(t(1, 2)), gen(t(2, 1)), gen(t(2, 2)))


def test_generator_codes_order_letters():
    assert DINV < t(1, 1) < t(1, 2) < t(2, 1) < x(1) < x(2)
    assert gen_name(t(3, 12)) == "t[3,12]"
    assert parse_gen(" t[ 3 , 12 ] ") == t(3, 12)
    assert parse_gen("Dinv") == DINV
    with pytest.raises(ValueError):
        t(0, 1)


def test_product_unit_and_distributivity():
    assert A * NCPoly.const(1) == A
    assert (A + B) * C == A * C + B * C
    w, v = (t(1, 1), t(2, 2)), (t(1, 2),)
    assert NCPoly.word(w, Fraction(2, 3)) * NCPoly.word(v, Fraction(3, 2)) == NCPoly.word(w + v)


def test_scalars_are_exact():
    assert parse_scalar("-6/4") == Fraction(-3, 2)
    assert parse_scalar(7) == 7
    with pytest.raises(ValueError):
        parse_scalar("1/0")
    with pytest.raises(ValueError):
        parse_scalar("0.5")


def test_deglex_compares_length_first():
    short, long_ = (t(2, 2),), (t(1, 1), t(1, 1))
    assert word_key(short) < word_key(long_)
    assert (A * A + C).leading_word() == (t(1, 1), t(1, 1))


def test_parse_and_print():
    p = parse_poly("2*t[1,1]*t[2,2] - 1/3*t[1,2] + 5")
    assert p == 2 * A * D - Fraction(1, 3) * B + 5
    assert parse_poly(str(p)) == p
    assert parse_poly("0").is_zero()


def test_dual_number_relations_complete_by_hand():
    rs = complete([C * C, C * D + D * C], max_deg=6)
    assert rs.converged
    assert {lead: dict(tail) for lead, tail in rs.rules.items()} == {
        (t(2, 1), t(2, 1)): {},
        (t(2, 2), t(2, 1)): {(t(2, 1), t(2, 2)): -1},
    }


def test_normal_forms_by_hand():
    rs = complete([C * C, C * D + D * C], max_deg=6)
    assert rs.normal_form(D * C * D) == -(C * D * D)
    assert rs.normal_form(C * C * D).is_zero()
    assert rs.normal_form(NCPoly()).is_zero()


def test_empty_system():
    rs = complete([], max_deg=4)
    assert rs.converged and len(rs) == 0


def test_commutative_frt_system_converges():
    rs = frt_presentation(minus_flip(2)).system()
    assert rs.converged
    assert rs.normal_form(D * A - A * D).is_zero()
    # normal words of degree 2 in 4 commuting letters
    assert len(rs.normal_words(2)) == 10


def test_membership_verdicts():
    rs = complete([C * C, C * D + D * C], max_deg=6)
    assert ideal_contains(C * C, rs) is Verdict.YES
    assert ideal_contains(NCPoly.const(1), rs) is Verdict.NO
    assert ideal_contains(2 * C, rs) is Verdict.NO


def test_truncated_system_reports_unknown():
    # this ideal has no finite deg-lex basis (rules a c^k d -> ... keep appearing)
    rs = complete([B, A * D - A, D * A - A, C * D - D * C], max_deg=6)
    assert not rs.converged
    assert ideal_contains(C, rs) is Verdict.UNKNOWN
    assert ideal_contains(A * D * D - A, rs) is Verdict.YES


def test_unknown_generator_rejected():
    rs = complete([C * C], max_deg=4)
    with pytest.raises(UnknownGeneratorError):
        rs.normal_form(A)


def test_max_deg_below_relation_degree():
    with pytest.raises(ValueError):
        complete([C * C * C], max_deg=2)


def test_ideal_equals_examples():
    R = [C * C, C * D + D * C]
    assert ideal_equals(R, list(R)) is Verdict.YES
    assert ideal_equals([C * C], R) is Verdict.NO
    frt = list(frt_presentation(minus_flip(2)).relations)
    assert ideal_equals(frt, commutators(t_alphabet(2))) is Verdict.YES


@pytest.mark.parametrize(
    "target, expected",
    [
        (D * C * D + C * D * D, True),
        (C * D * C, True),
        (D * D * C, False),
        (C * D - D * C, False),
    ],
)
def test_membership_agrees_with_linear_algebra(target, expected):
    rels = [C * C, C * D + D * C]
    rs = complete(rels, max_deg=6)
    assert homogeneous_span_contains(rels, target, [t(2, 1), t(2, 2)]) is expected
    assert (ideal_contains(target, rs) is Verdict.YES) is expected
