from __future__ import annotations

import pytest

from qfrt import fixtures as fx
from qfrt.bialgebra import Presentation
from qfrt.dvl import hev_presentation
from qfrt.envelope import (
    AntipodeCandidate,
    NormalityError,
    antipode_candidate,
    antipode_verify,
    dinv_grouplike,
    envelope_report,
    is_left_fraction,
    localize,
)
from qfrt.frt import cqt_form, frt_presentation, minus_flip
from qfrt.ncalg import DINV, NCPoly, Verdict, gen, parse_poly, t
from qfrt.wgf import build_wgf, exterior_algebra

A, B, C, D = fx.A, fx.B_, fx.C, fx.D_
DI = gen(DINV)


def setup(c, Bq):
    w = build_wgf(Bq, c)
    P = frt_presentation(c)
    form = cqt_form(c)
    return w, P, form, localize(P, w, form)


@pytest.fixture(scope="module")
def line():
    return setup(*fx.sign_line())


@pytest.fixture(scope="module")
def gl2():
    return setup(minus_flip(2), exterior_algebra(2))


def test_line_localization(line):
    w, P, form, L = line
    T = gen(t(1, 1))
    assert set(L.inversion_relations()) == {T * DI - 1, DI * T - 1}
    assert L.j_images == {t(1, 1): T}
    assert L.system.converged
    assert L.presentation.extra == (DINV,)


def test_gl2_localization(gl2):
    w, P, form, L = gl2
    det = A * D - B * C
    assert L.det == det
    assert L.presentation.contains(det * DI - 1) is Verdict.YES
    assert L.presentation.contains(DI * det - 1) is Verdict.YES
    for g in (t(1, 1), t(1, 2), t(2, 1), t(2, 2)):
        assert L.presentation.contains(gen(g) * DI - DI * gen(g)) is Verdict.YES


def test_localization_refused_when_not_normal():
    c = minus_flip(2)
    P = Presentation(2, ())
    w = build_wgf(exterior_algebra(2), c)
    with pytest.raises(NormalityError):
        localize(P, w, cqt_form(c))


def test_candidate_values(gl2, line):
    S = antipode_candidate(gl2[0])
    assert S(t(1, 1)) == D * DI
    assert S(t(1, 2)) == -(B * DI)
    assert S(t(2, 1)) == -(C * DI)
    assert S(t(2, 2)) == A * DI
    assert S(DINV) == A * D - B * C
    assert antipode_candidate(line[0])(t(1, 1)) == DI


@pytest.mark.parametrize("case", ["line", "gl2"])
def test_candidate_passes(case, line, gl2):
    w, _, _, L = {"line": line, "gl2": gl2}[case]
    S = antipode_candidate(w, L)
    assert S.counit_compatible()
    for rep in antipode_verify(L, S):
        assert rep.passed, rep.name
    assert dinv_grouplike(L) is Verdict.YES


def test_sabotaged_candidate_refuted(line):
    w, _, _, L = line
    S = AntipodeCandidate({t(1, 1): gen(t(1, 1)), DINV: w.det})
    anti, right, left = antipode_verify(L, S)
    assert right.verdict is Verdict.NO
    T = gen(t(1, 1))
    assert L.system.normal_form(T * T - 1) == T * T - 1


def test_antipode_is_anti_multiplicative(gl2):
    S = antipode_candidate(gl2[0])
    assert S.apply(A * B) == S(t(1, 2)) * S(t(1, 1))


def test_lagrange_and_right_axiom_agree(gl2):
    """sum_k t_i^k S(t_k^j) = (sum_k t_i^k T^j_k) Dinv, so the right axiom is
    Lagrange multiplied by Dinv."""
    w, P, _, L = gl2
    S = antipode_candidate(w)
    for i in (1, 2):
        for j in (1, 2):
            lag = NCPoly.sum(gen(t(i, k)) * w.T(j, k) for k in (1, 2))
            right = NCPoly.sum(gen(t(i, k)) * S(t(k, j)) for k in (1, 2))
            assert right == lag * DI


def test_left_fraction_shape():
    assert is_left_fraction((DINV, DINV, t(1, 1), t(2, 2)))
    assert is_left_fraction(())
    assert not is_left_fraction((t(1, 1), DINV))


def test_line_normal_words_are_left_fractions(line):
    rs = line[3].system
    for d in range(4):
        assert all(is_left_fraction(wd) for wd in rs.normal_words(d))


def hev_to_localization(n: int, w) -> dict[int, NCPoly]:
    """t_i^j -> t_i^j, t_{n+i}^{n+k} -> S(t_k^i), mixed blocks -> 0."""
    S = antipode_candidate(w)
    images = {}
    for i in range(1, 2 * n + 1):
        for j in range(1, 2 * n + 1):
            if i <= n and j <= n:
                images[t(i, j)] = gen(t(i, j))
            elif i > n and j > n:
                images[t(i, j)] = S(t(j - n, i - n))
            else:
                images[t(i, j)] = NCPoly()
    return images


@pytest.mark.parametrize("case", ["line", "gl2"])
def test_hev_maps_onto_localization(case, line, gl2):
    w, _, _, L = {"line": line, "gl2": gl2}[case]
    n = w.dim
    h = hev_presentation(n)
    images = hev_to_localization(n, w)
    for r in h.presentation.relations:
        assert L.presentation.contains(r.substitute(images)) is Verdict.YES


# ---------------------------------------------------------------------------
# pipeline


PIPELINES = {
    "sign_line": fx.sign_line,
    "diagonal_minus_one": fx.diagonal_minus_one,
    "exterior_2": lambda: fx.exterior(2),
    "quantum_plane": fx.quantum_plane_exterior,
}


@pytest.mark.parametrize("name", sorted(PIPELINES))
def test_pipeline_passes(name):
    c, Bq = PIPELINES[name]()
    rep = envelope_report(c, Bq)
    assert rep.halted_at is None
    assert rep.verdict is Verdict.YES
    assert [s.name for s in rep.stages] == [
        "check-braid", "frt", "cqt-form", "cqt3", "wgf", "determinant", "minors",
        "lagrange", "normality", "localize", "antipode-candidate", "antipode-verify", "j-form",
    ]


def test_pipeline_diagonal_determinant_degree():
    rep = envelope_report(*fx.diagonal_minus_one())
    D_q = parse_poly(rep.stage("determinant").detail["D"])
    assert D_q.degree() == 2 and D_q.is_homogeneous()


def test_pipeline_halts_on_non_braiding():
    c = fx.perturbed_identity()
    rep = envelope_report(c, exterior_algebra(2))
    assert rep.halted_at == "check-braid"
    assert len(rep.stages) == 1
    assert rep.verdict is Verdict.NO


def test_pipeline_halts_on_wgf_violation():
    rep = envelope_report(*fx.wgf4_violation())
    assert rep.halted_at == "wgf"
    assert rep.stage("wgf").detail["axiom"] == "WGF4"


def test_pipeline_sabotage_is_definitive():
    c, Bq = fx.sign_line()
    rep = envelope_report(c, Bq, antipode_override={t(1, 1): gen(t(1, 1))})
    assert rep.halted_at == "antipode-verify"
    assert rep.verdict is Verdict.NO
