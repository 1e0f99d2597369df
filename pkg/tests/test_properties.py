from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import HOMOGENEOUS, presentations
from oracles import homogeneous_span_contains
from qfrt.bialgebra import check_bi_ideal, coideal_verdict, counit
from qfrt.envelope import AntipodeCandidate
from qfrt.ncalg import NCPoly, Verdict, complete, ideal_contains, parse_poly, t

LETTERS = [t(1, 1), t(1, 2), t(2, 1), t(2, 2)]

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
words = st.lists(st.sampled_from(LETTERS), max_size=3).map(tuple)
polys = st.dictionaries(words, coeffs, max_size=5).map(NCPoly)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r
    assert p + q == q + p
    assert p - p == NCPoly()
    assert p * 1 == p == 1 * p


@given(polys)
def test_print_parse_round_trip(p):
    assert parse_poly(str(p)) == p


@given(polys, polys)
def test_counit_is_multiplicative(p, q):
    assert counit(p * q) == counit(p) * counit(q)


@given(polys, polys)
def test_reverse_substitution_is_anti_multiplicative(p, q):
    S = AntipodeCandidate({g: NCPoly.gen(h) for g, h in zip(LETTERS, reversed(LETTERS))})
    assert S.apply(p * q) == S.apply(q) * S.apply(p)


def random_poly(rng: random.Random, letters, max_deg: int, terms: int = 4) -> NCPoly:
    acc = {}
    for _ in range(rng.randint(1, terms)):
        w = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_deg)))
        acc[w] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return NCPoly(acc)


SYSTEMS = sorted(presentations())


@pytest.mark.parametrize("name", SYSTEMS)
def test_normal_form_properties(name):
    """Idempotence everywhere; compatibility with + and * where the completion converged."""
    P = presentations()[name]
    rs = P.system()
    rng = random.Random(f"nf-{name}")
    letters = P.generators()
    for _ in range(100):
        p = random_poly(rng, letters, 3)
        q = random_poly(rng, letters, 2)
        np_ = rs.normal_form(p)
        assert rs.normal_form(np_) == np_
        assert all(rs.is_normal_word(w) for w in np_.words())
        if rs.converged:
            assert rs.normal_form(p + q) == np_ + rs.normal_form(q)
            assert rs.normal_form(p * q) == rs.normal_form(np_ * rs.normal_form(q))


@pytest.mark.parametrize("name", SYSTEMS)
def test_relations_and_rules_generate_bi_ideals(name):
    P = presentations()[name]
    assert check_bi_ideal(P).passed
    rs = P.system()
    for rule in rs.as_polys():
        assert counit(rule) == 0
        assert coideal_verdict(rule, P.dim, rs) is Verdict.YES


@pytest.mark.parametrize("name", [n for n in SYSTEMS if presentations()[n].relations])
def test_random_ideal_combinations_are_members(name):
    P = presentations()[name]
    rs = P.system()
    rng = random.Random(f"comb-{name}")
    letters = P.generators()
    rels = list(P.relations)
    for _ in range(20):
        comb = NCPoly()
        for _ in range(rng.randint(1, 3)):
            r = rng.choice(rels)
            room = max(0, 5 - r.degree())
            a = rng.randint(0, room)
            b = rng.randint(0, room - a)
            u = NCPoly.word(tuple(rng.choice(letters) for _ in range(a)))
            v = NCPoly.word(tuple(rng.choice(letters) for _ in range(b)))
            comb = comb + u * r * v * rng.randint(-3, 3)
        assert ideal_contains(comb, rs) is Verdict.YES


@pytest.mark.parametrize("name", HOMOGENEOUS)
def test_membership_agrees_with_brute_force(name):
    P = presentations()[name]
    rs = P.system()
    letters = sorted(set(P.generators()))
    rels = list(P.relations)
    rng = random.Random(f"oracle-{name}")
    for k in range(12):
        d = rng.randint(2, 5)
        target = NCPoly()
        for _ in range(rng.randint(1, 3)):
            r = rng.choice(rels)
            a = rng.randint(0, d - r.degree())
            u = NCPoly.word(tuple(rng.choice(letters) for _ in range(a)))
            v = NCPoly.word(tuple(rng.choice(letters) for _ in range(d - r.degree() - a)))
            target = target + u * r * v * rng.randint(-3, 3)
        if k % 2:
            # perturb by a random word of the same degree
            target = target + NCPoly.word(tuple(rng.choice(letters) for _ in range(d)))
        if target.is_zero():
            continue
        want = homogeneous_span_contains(rels, target, letters)
        got = ideal_contains(target, rs)
        assert (got is Verdict.YES) == want
        if not want:
            assert got is Verdict.NO or not rs.converged


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(LETTERS), st.sampled_from(LETTERS)), min_size=1, max_size=3),
       st.integers(2, 4))
def test_membership_oracle_on_random_binomial_ideals(pairs, d):
    rels = [NCPoly.word(p) - NCPoly.word(p[::-1]) for p in pairs if p[0] != p[1]] or [NCPoly.word(pairs[0])]
    rs = complete(rels, max_deg=8, alphabet=LETTERS)
    rng = random.Random(repr((pairs, d)))
    target = NCPoly({tuple(rng.choice(LETTERS) for _ in range(d)): 1,
                     tuple(rng.choice(LETTERS) for _ in range(d)): -1})
    if target.is_zero():
        return
    want = homogeneous_span_contains(rels, target, LETTERS)
    assert (ideal_contains(target, rs) is Verdict.YES) == want
