"""Hopf algebras attached to a non-degenerate bilinear form.

The form ``b`` is viewed as a map ``V (x) V -> k``; its universal bialgebra
has relations ``sum b_{mu nu} t_lam^mu t_rho^nu = b_{lam rho}``, i.e.
``t B t^T = B`` as matrices. Over a noncommutative ring this only makes
``B t^T B^-1`` a right inverse of ``t``; the left inverse needs the
inverse-form family as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bialgebra import CheckReport, MapTensor, Presentation, colinearity_relations, counit
from .linalg import identity, invert
from .ncalg import NCPoly, Verdict, gen, ideal_contains, parse_scalar, t


class SingularFormError(ValueError):
    pass


@dataclass(frozen=True)
class BilinearForm:
    matrix: tuple[tuple[Fraction, ...], ...]
    inverse: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> BilinearForm:
        m = tuple(tuple(parse_scalar(v) if isinstance(v, str) else Fraction(v) for v in row) for row in rows)
        if any(len(r) != len(m) for r in m):
            raise ValueError("bilinear form matrix must be square")
        inv = invert(m)
        if inv is None:
            raise SingularFormError("bilinear form is degenerate (singular matrix)")
        return cls(m, tuple(tuple(r) for r in inv))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def b(self, i: int, j: int) -> Fraction:
        return self.matrix[i - 1][j - 1]

    def binv(self, i: int, j: int) -> Fraction:
        return self.inverse[i - 1][j - 1]

    def as_map(self) -> MapTensor:
        return MapTensor.from_matrix(self.matrix, name="b")


def _rng(n: int) -> range:
    return range(1, n + 1)


def inverse_family(B: BilinearForm) -> list[NCPoly]:
    """``sum b^{mu nu} t_mu^lam t_nu^rho - b^{lam rho}`` for all ``lam, rho``."""
    n = B.dim
    out = []
    for lam in _rng(n):
        for rho in _rng(n):
            p = NCPoly.sum(
                gen(t(mu, lam)) * gen(t(nu, rho)) * B.binv(mu, nu)
                for mu in _rng(n)
                for nu in _rng(n)
                if B.binv(mu, nu)
            ) - B.binv(lam, rho)
            if not p.is_zero():
                out.append(p)
    return out


def dvl_presentation(B: BilinearForm, with_inverse_family: bool = False) -> Presentation:
    """Colinearity relations of ``b``; optionally also the inverse-form family,
    which is not implied by the first one over a noncommutative ring."""
    rels = []
    n = B.dim
    for lam in _rng(n):
        for rho in _rng(n):
            p = NCPoly.sum(
                gen(t(lam, mu)) * gen(t(rho, nu)) * B.b(mu, nu)
                for mu in _rng(n)
                for nu in _rng(n)
                if B.b(mu, nu)
            ) - B.b(lam, rho)
            if not p.is_zero():
                rels.append(p)
    if with_inverse_family:
        rels += inverse_family(B)
    return Presentation(n, tuple(rels), name="H(b)")


def universal_of_form(B: BilinearForm) -> list[NCPoly]:
    """The same ideal obtained from the general colinearity construction."""
    return colinearity_relations(B.as_map())


def dvl_redundancy_check(B: BilinearForm, max_deg: int | None = None, P: Presentation | None = None) -> CheckReport:
    """The inverse-form family ``b^{mu nu} t^lam_mu t^rho_nu = b^{lam rho}``."""
    P = P or dvl_presentation(B)
    rs = P.system(max_deg)
    rep = CheckReport("redundancy")
    for k, p in enumerate(inverse_family(B)):
        rep.add(f"relation {k}", ideal_contains(p, rs))
    return rep


def dvl_antipode(B: BilinearForm) -> dict[int, NCPoly]:
    """``S(t_i^j) = sum b_{i mu} t_nu^mu b^{nu j}``, the matrix ``B t^T B^-1``.

    This is the right inverse forced by the relations; for symmetric or
    antisymmetric ``b`` it equals ``b^{jk} t_k^l b_{li}``.
    """
    n = B.dim
    out = {}
    for i in _rng(n):
        for j in _rng(n):
            out[t(i, j)] = NCPoly.sum(
                gen(t(nu, mu)) * (B.b(i, mu) * B.binv(nu, j))
                for mu in _rng(n)
                for nu in _rng(n)
                if B.b(i, mu) and B.binv(nu, j)
            )
    return out


def hopf_axiom_reports(
    P: Presentation, S: dict[int, NCPoly], n: int, max_deg: int | None = None
) -> tuple[CheckReport, CheckReport, CheckReport]:
    """Anti-algebra well-definedness, right axiom, left axiom on t-generators."""
    rs = P.system(max_deg)
    anti = CheckReport("anti-algebra")
    for k, r in enumerate(P.relations):
        anti.add(f"relation {k}", ideal_contains(r.substitute(S, reverse=True), rs))
    right = CheckReport("right axiom")
    left = CheckReport("left axiom")
    for i in _rng(n):
        for j in _rng(n):
            d = 1 if i == j else 0
            rp = NCPoly.sum(gen(t(i, k)) * S[t(k, j)] for k in _rng(n)) - d
            lp = NCPoly.sum(S[t(i, k)] * gen(t(k, j)) for k in _rng(n)) - d
            right.add(f"({i},{j})", ideal_contains(rp, rs))
            left.add(f"({i},{j})", ideal_contains(lp, rs))
    return anti, right, left


def dvl_antipode_check(B: BilinearForm, max_deg: int | None = None, P: Presentation | None = None) -> list[CheckReport]:
    """Anti-algebra, right and left reports for ``dvl_antipode``."""
    P = P or dvl_presentation(B)
    S = dvl_antipode(B)
    return list(hopf_axiom_reports(P, S, B.dim, max_deg))


def antipode_counit_ok(B: BilinearForm) -> bool:
    n = B.dim
    S = dvl_antipode(B)
    return all(counit(S[t(i, j)]) == (1 if i == j else 0) for i in _rng(n) for j in _rng(n))


def ev_form(n: int, phi: Sequence[Sequence] | None = None) -> BilinearForm:
    """Block form on ``W = V (+) V*``: ``b(x_i, x^j) = Phi_ij``, ``b(x^i, x_j) = delta``."""
    if phi is None:
        phi = identity(n)
    phi = [[parse_scalar(v) if isinstance(v, str) else Fraction(v) for v in row] for row in phi]
    if len(phi) != n or any(len(r) != n for r in phi):
        raise ValueError(f"Phi must be {n}x{n}")
    if invert(phi) is None:
        raise SingularFormError("Phi is singular")
    rows = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            rows[i][n + j] = phi[i][j]
        rows[n + i][i] = Fraction(1)
    return BilinearForm.from_rows(rows)


def projector_to_v(n: int) -> MapTensor:
    return MapTensor(2 * n, 1, 1, {((i,), (i,)): Fraction(1) for i in _rng(n)}, name="pi_V")


@dataclass(frozen=True)
class HEv:
    n: int
    form: BilinearForm
    presentation: Presentation
    base: Presentation


def hev_presentation(n: int, phi: Sequence[Sequence] | None = None) -> HEv:
    form = ev_form(n, phi)
    base = dvl_presentation(form)
    proj = colinearity_relations(projector_to_v(n))
    P = base.with_relations(proj, name="H(ev_l,ev_r)")
    return HEv(n, form, P, base)


def hev_stability_check(h: HEv, max_deg: int | None = None) -> CheckReport:
    """The antipode of the big form maps the projector ideal into the quotient."""
    S = dvl_antipode(h.form)
    rs = h.presentation.system(max_deg)
    rep = CheckReport("S-stable")
    n = h.n
    for i in _rng(n):
        for j in _rng(n):
            rep.add(f"S(t[{i},{n + j}])", ideal_contains(S[t(i, n + j)], rs))
            rep.add(f"S(t[{n + i},{j}])", ideal_contains(S[t(n + i, j)], rs))
    return rep


def hev_check(h: HEv, max_deg: int | None = None) -> list[CheckReport]:
    """S-stability plus the Hopf axioms of the quotient with the inherited antipode."""
    S = dvl_antipode(h.form)
    return [hev_stability_check(h, max_deg), *hopf_axiom_reports(h.presentation, S, 2 * h.n, max_deg)]


def verdict_of(reports: Sequence[CheckReport]) -> Verdict:
    return Verdict.combine(r.verdict for r in reports)
