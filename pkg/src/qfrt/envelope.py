"""Localization ``A(c)[D^-1]``, its antipode and the end-to-end pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .bialgebra import (
    CheckReport,
    MapTensor,
    Presentation,
    TensorSquare,
    check_bi_ideal,
    counit,
    delta_on_poly,
    verdict_word,
)
from .frt import (
    Braiding,
    CqtForm,
    NotABraidingError,
    SingularBraidingError,
    check_braid,
    check_cqt3,
    check_normality,
    check_r_descends,
    cqt_form,
    frt_presentation,
    hayashi_images,
)
from .ncalg import DINV, NCPoly, RewriteSystem, Verdict, Word, gen, gen_name, ideal_contains, t
from .wgf import (
    GradedAlgebra,
    WGFData,
    WGFError,
    build_wgf,
    check_minor_counit,
    check_minors_roundtrip,
    check_omega,
    comatrix_check,
    j_form_check,
    lagrange_check,
    quantum_determinant,
)


class NormalityError(ValueError):
    def __init__(self, report: CheckReport):
        bad = ", ".join(f"{lab}: {verdict_word(v)}" for lab, v, _ in report.failures())
        super().__init__(f"D is not normal up to the bound ({bad})")
        self.report = report


@dataclass(frozen=True)
class LocalizedPresentation:
    base: Presentation
    det: NCPoly
    j_images: Mapping[int, NCPoly]
    presentation: Presentation
    max_deg: int | None

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def system(self) -> RewriteSystem:
        return self.presentation.system(self.max_deg)

    def inversion_relations(self) -> list[NCPoly]:
        d = gen(DINV)
        return [self.det * d - 1, d * self.det - 1]


def localize(P: Presentation, w: WGFData, form: CqtForm, max_deg: int | None = None,
             normality_deg: int | None = None) -> LocalizedPresentation:
    """Adjoin ``Dinv`` with ``D Dinv = 1 = Dinv D`` and the commutation rules
    ``t Dinv = Dinv J(t)``, once ``D`` has been checked normal."""
    D = w.det
    rep = check_normality(D, P, form, normality_deg)
    if not rep.passed:
        raise NormalityError(rep)
    J = hayashi_images(D, form)
    d = gen(DINV)
    rels = [D * d - 1, d * D - 1]
    rels += [gen(g) * d - d * img for g, img in sorted(J.items())]
    L = Presentation(P.dim, P.relations + tuple(rels), extra=(DINV,), name=f"{P.name}[D^-1]")
    return LocalizedPresentation(P, D, J, L, max_deg)


def is_left_fraction(word: Word) -> bool:
    """``Dinv^k`` followed by a word without ``Dinv``."""
    seen_t = False
    for g in word:
        if g == DINV:
            if seen_t:
                return False
        else:
            seen_t = True
    return True


@dataclass(frozen=True)
class AntipodeCandidate:
    images: Mapping[int, NCPoly]

    def __call__(self, g: int) -> NCPoly:
        return self.images[g]

    def apply(self, p: NCPoly) -> NCPoly:
        """Anti-multiplicative extension to polynomials."""
        return p.substitute(self.images, reverse=True)

    def counit_compatible(self) -> bool:
        return all(counit(img) == counit(gen(g)) for g, img in self.images.items())


def antipode_candidate(w: WGFData, L: LocalizedPresentation | None = None) -> AntipodeCandidate:
    """``S(t_i^j) = T^j_i Dinv`` and ``S(Dinv) = D``."""
    n = w.dim
    d = gen(DINV)
    images = {t(i, j): w.T(j, i) * d for i in range(1, n + 1) for j in range(1, n + 1)}
    images[DINV] = w.det
    S = AntipodeCandidate(images)
    if not S.counit_compatible():
        raise AssertionError("antipode candidate does not preserve the counit")
    return S


def antipode_verify(L: LocalizedPresentation, S: AntipodeCandidate) -> list[CheckReport]:
    rs = L.system
    n = L.dim
    d = gen(DINV)
    D = L.det
    SD = S.apply(D)

    anti = CheckReport("anti-algebra")
    for k, r in enumerate(L.presentation.relations):
        anti.add(f"relation {k}", ideal_contains(S.apply(r), rs))

    right = CheckReport("right axiom")
    left = CheckReport("left axiom")
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            delta = 1 if i == j else 0
            rp = NCPoly.sum(gen(t(i, k)) * S(t(k, j)) for k in range(1, n + 1)) - delta
            lp = NCPoly.sum(S(t(i, k)) * gen(t(k, j)) for k in range(1, n + 1)) - delta
            right.add(f"t({i},{j})", ideal_contains(rp, rs))
            left.add(f"t({i},{j})", ideal_contains(lp, rs))
    right.add("D", ideal_contains(D * SD - 1, rs))
    right.add("Dinv", ideal_contains(d * S(DINV) - 1, rs))
    left.add("D", ideal_contains(SD * D - 1, rs))
    left.add("Dinv", ideal_contains(S(DINV) * d - 1, rs))
    return [anti, right, left]


def dinv_grouplike(L: LocalizedPresentation) -> Verdict:
    rs = L.system
    d = gen(DINV)
    red = (delta_on_poly(d, L.dim) - TensorSquare.outer(d, d)).reduce(rs)
    if red.is_zero():
        return Verdict.YES
    return Verdict.NO if rs.converged else Verdict.UNKNOWN


# ---------------------------------------------------------------------------
# pipeline


@dataclass
class Stage:
    name: str
    verdict: Verdict
    detail: dict[str, Any] = field(default_factory=dict)
    required: bool = True

    def to_json(self) -> dict:
        out = {"stage": self.name, "verdict": verdict_word(self.verdict)}
        if not self.required:
            out["required"] = False
        out.update(self.detail)
        return out


@dataclass
class EnvelopeReport:
    stages: list[Stage] = field(default_factory=list)
    halted_at: str | None = None

    @property
    def verdict(self) -> Verdict:
        if self.halted_at is not None:
            for s in self.stages:
                if s.name == self.halted_at:
                    return s.verdict
        return Verdict.combine(s.verdict for s in self.stages if s.required)

    def stage(self, name: str) -> Stage:
        for s in self.stages:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_json(self) -> dict:
        out = {"verdict": verdict_word(self.verdict), "stages": [s.to_json() for s in self.stages]}
        if self.halted_at:
            out["halted_at"] = self.halted_at
        return out


def _reports_json(reports) -> list[dict]:
    return [r.to_json() for r in reports]


def envelope_report(
    c: MapTensor | Braiding,
    B: GradedAlgebra,
    max_deg: int | None = None,
    antipode_override: Mapping[int, NCPoly] | None = None,
) -> EnvelopeReport:
    """Run every stage from the braid check to the antipode; the first stage
    that does not pass halts the rest (the J-form stage is informational)."""
    rep = EnvelopeReport()

    def stage(name: str, verdict: Verdict, required: bool = True, **detail) -> bool:
        rep.stages.append(Stage(name, verdict, detail, required))
        if required and verdict is not Verdict.YES:
            rep.halted_at = name
            return False
        return True

    tensor = c.tensor if isinstance(c, Braiding) else c
    try:
        ok = check_braid(tensor)
    except ValueError as e:
        stage("check-braid", Verdict.NO, error=str(e))
        return rep
    if not stage("check-braid", Verdict.YES if ok else Verdict.NO):
        return rep
    braiding = c if isinstance(c, Braiding) else Braiding(tensor)

    P = frt_presentation(braiding)
    rs = P.system(max_deg)
    if not stage("frt", Verdict.YES, relations=[str(p) for p in rs.as_polys()], converged=rs.converged):
        return rep

    try:
        form = cqt_form(braiding)
    except SingularBraidingError as e:
        stage("cqt-form", Verdict.NO, error=str(e))
        return rep
    cqt = check_cqt3(P, form, max_deg)
    if not stage("cqt-form", Verdict.YES if form.inverse_identity_holds() else Verdict.NO,
                 inverse_identity=form.inverse_identity_holds()):
        return rep
    if not stage("cqt3", cqt.verdict, report=cqt.to_json()):
        return rep

    try:
        w = build_wgf(B, braiding, a_max_deg=max_deg)
    except WGFError as e:
        stage("wgf", Verdict.NO, axiom=e.axiom, error=str(e))
        return rep
    ok = check_omega(w) and check_minors_roundtrip(w) and check_minor_counit(w)
    if not stage("wgf", Verdict.YES if ok else Verdict.NO, top=w.top, dims=list(w.dims),
                 volume=str(NCPoly.word(w.volume))):
        return rep

    D, gl = quantum_determinant(w, max_deg)
    if not stage("determinant", gl, D=str(D)):
        return rep
    com = comatrix_check(w, max_deg)
    minors = [[str(w.T(i, j)) for j in range(1, w.dim + 1)] for i in range(1, w.dim + 1)]
    if not stage("minors", com.verdict, T=minors, omega=[str(o) for o in w.omega]):
        return rep
    lag = lagrange_check(w, P, max_deg)
    if not stage("lagrange", lag.verdict, report=lag.to_json()):
        return rep
    norm = check_normality(D, P, form, max_deg)
    if not stage("normality", norm.verdict, report=norm.to_json()):
        return rep

    L = localize(P, w, form, max_deg, normality_deg=max_deg)
    Lrs = L.system
    bi = check_bi_ideal(L.presentation, max_deg)
    loc_verdict = Verdict.combine([bi.verdict, dinv_grouplike(L)])
    if not stage("localize", loc_verdict, converged=Lrs.converged, rules=len(Lrs.rules),
                 J={gen_name(g): str(v) for g, v in sorted(L.j_images.items())}):
        return rep

    if antipode_override is not None:
        images = dict(antipode_candidate(w).images)
        images.update(antipode_override)
        S = AntipodeCandidate(images)
    else:
        S = antipode_candidate(w, L)
    if not stage("antipode-candidate", Verdict.YES if S.counit_compatible() else Verdict.NO,
                 S={gen_name(g): str(v) for g, v in sorted(S.images.items())}):
        return rep
    checks = antipode_verify(L, S)
    if not stage("antipode-verify", Verdict.combine(r.verdict for r in checks), reports=_reports_json(checks)):
        return rep

    jf = j_form_check(w, form, P, max_deg)
    stage("j-form", jf.verdict, required=False, report=jf.to_json())
    return rep


__all__ = [
    "AntipodeCandidate",
    "EnvelopeReport",
    "LocalizedPresentation",
    "NormalityError",
    "NotABraidingError",
    "antipode_candidate",
    "antipode_verify",
    "check_r_descends",
    "dinv_grouplike",
    "envelope_report",
    "is_left_fraction",
    "localize",
]
