"""Weakly graded Frobenius algebras over the FRT bialgebra.

``B`` is given as a quotient of the tensor algebra on ``x_1..x_n`` by
homogeneous relations of degree >= 2; the coaction is the one induced by
``rho(x_i) = sum_j t_i^j (x) x_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bialgebra import CheckReport, Presentation, coaction_on_power, counit
from .frt import Braiding, CqtForm, frt_presentation, grouplike_verdict, hayashi_auto
from .linalg import invert
from .ncalg import (
    NCPoly,
    RewriteSystem,
    Verdict,
    Word,
    _add_into,
    complete,
    gen,
    ideal_contains,
    is_x,
    t,
    x,
    x_alphabet,
    x_index,
)


class WGFError(ValueError):
    """Raised when an axiom fails; ``axiom`` is one of WGF1..WGF4."""

    def __init__(self, axiom: str, message: str):
        super().__init__(f"{axiom}: {message}")
        self.axiom = axiom


@dataclass(frozen=True)
class GradedAlgebra:
    """``T(V) / (relations)`` with ``V`` spanned by ``x_1..x_n``."""

    dim: int
    relations: tuple[NCPoly, ...]
    _systems: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for r in self.relations:
            if not r.is_homogeneous() or r.degree() < 2:
                raise WGFError("WGF2", f"relation {r} is not homogeneous of degree >= 2")
            for g in r.generators():
                if not is_x(g) or x_index(g) > self.dim:
                    raise ValueError(f"relation {r} leaves the x-alphabet of dimension {self.dim}")

    def system(self, max_deg: int) -> RewriteSystem:
        rs = self._systems.get(max_deg)
        if rs is None:
            rs = complete(self.relations, max_deg, x_alphabet(self.dim))
            self._systems[max_deg] = rs
        return rs

    def basis(self, degree: int, max_deg: int) -> list[Word]:
        return self.system(max_deg).normal_words(degree)

    def dims(self, max_deg: int) -> list[int]:
        out = []
        for d in range(max_deg + 1):
            k = len(self.basis(d, max_deg))
            out.append(k)
            if k == 0:
                break
        return out


def exterior_algebra(n: int) -> GradedAlgebra:
    rels = [gen(x(i)) * gen(x(i)) for i in range(1, n + 1)]
    rels += [
        gen(x(i)) * gen(x(j)) + gen(x(j)) * gen(x(i)) for i in range(1, n + 1) for j in range(i + 1, n + 1)
    ]
    return GradedAlgebra(n, tuple(rels))


def rho_poly(p: NCPoly, n: int) -> dict[Word, dict]:
    """Induced coaction of an x-polynomial: map x-word -> t-polynomial (raw)."""
    out: dict[Word, dict] = {}
    for w, c in p.raw.items():
        I = tuple(x_index(g) for g in w)
        for tw, J in coaction_on_power(I, n):
            xw = tuple(x(j) for j in J)
            _add_into(out.setdefault(xw, {}), tw, c)
    return out


def coact_reduce(p: NCPoly, n: int, B: RewriteSystem) -> dict[Word, dict]:
    """``(id (x) pi_B) rho(p)`` as normal x-word -> t-polynomial (raw)."""
    out: dict[Word, dict] = {}
    for xw, tpoly in rho_poly(p, n).items():
        for v, d in B._nf_word(xw).items():
            acc = out.setdefault(v, {})
            for tw, c in tpoly.items():
                _add_into(acc, tw, c * d)
    return {v: tp for v, tp in out.items() if tp}


@dataclass(frozen=True)
class WGFData:
    algebra: GradedAlgebra
    braiding: Braiding
    frt: Presentation
    max_deg: int
    top: int
    dims: tuple[int, ...]
    volume: Word
    basis_top_minus_one: tuple[Word, ...]
    left_pairing: tuple[tuple[Fraction, ...], ...]
    right_pairing: tuple[tuple[Fraction, ...], ...]
    omega: tuple[NCPoly, ...]
    det: NCPoly
    minors: tuple[tuple[NCPoly, ...], ...]

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def T(self, upper: int, lower: int) -> NCPoly:
        """``T^upper_lower``: coefficient of ``omega^lower`` in ``rho(omega^upper)``."""
        return self.minors[upper - 1][lower - 1]


def check_wgf1(B: GradedAlgebra, A: Presentation, max_deg: int, a_max_deg: int | None = None) -> CheckReport:
    """Every relation of ``B`` maps into ``A (x) I_B`` under the coaction."""
    rs_b = B.system(max_deg)
    rs_a = A.system(a_max_deg)
    rep = CheckReport("WGF1")
    for k, r in enumerate(B.relations):
        verdicts = []
        for _, tp in coact_reduce(r, B.dim, rs_b).items():
            verdicts.append(ideal_contains(NCPoly._wrap(tp), rs_a))
        rep.add(f"relation {k}", Verdict.combine(verdicts))
    return rep


def _pairing(B: RewriteSystem, n: int, basis: Sequence[Word], volume: Word, left: bool) -> list[list[Fraction]]:
    M = []
    for i in range(1, n + 1):
        row = []
        for w in basis:
            word = (x(i),) + w if left else w + (x(i),)
            nf = B._nf_word(word)
            extra = set(nf) - {volume}
            if extra:
                raise WGFError("WGF3", "top degree is not one-dimensional")
            row.append(nf.get(volume, Fraction(0)))
        M.append(row)
    return M


def build_wgf(B: GradedAlgebra, c: Braiding, max_deg: int | None = None, a_max_deg: int | None = None) -> WGFData:
    """Validate WGF1-WGF4 and compute volume, determinant, omega-basis and minors."""
    if B.dim != c.dim:
        raise ValueError("algebra and braiding dimensions differ")
    n = B.dim
    if n == 0:
        raise WGFError("WGF3", "zero-dimensional V has no volume element of positive degree")
    if max_deg is None:
        max_deg = max(2 * max((r.degree() for r in B.relations), default=1) + 2, n + 2)
    A = frt_presentation(c)
    rep = check_wgf1(B, A, max_deg, a_max_deg)
    if not rep.passed:
        raise WGFError("WGF1", f"relation ideal is not a subcomodule ({rep.failures()[0][0]}: {rep.verdict.value})")

    rs_b = B.system(max_deg)
    dims = []
    for d in range(max_deg + 1):
        k = len(rs_b.normal_words(d))
        dims.append(k)
        if k == 0:
            break
    if dims[-1] != 0:
        raise WGFError("WGF3", f"dimension did not vanish by max_deg={max_deg}")
    top = len(dims) - 2
    if top < 1:
        raise WGFError("WGF3", "top degree must be positive")
    if dims[top] != 1:
        raise WGFError("WGF3", f"dim B^top = {dims[top]} != 1")
    (volume,) = rs_b.normal_words(top)
    basis = rs_b.normal_words(top - 1)
    if len(basis) != n:
        raise WGFError("WGF4", f"dim B^(top-1) = {len(basis)} differs from dim V = {n}")
    P = _pairing(rs_b, n, basis, volume, left=True)
    Pr = _pairing(rs_b, n, basis, volume, left=False)
    Pinv = invert(P)
    if Pinv is None:
        raise WGFError("WGF4", f"left pairing B^1 x B^(top-1) is degenerate: {_fmt(P)}")
    if invert(Pr) is None:
        raise WGFError("WGF4", f"right pairing B^(top-1) x B^1 is degenerate: {_fmt(Pr)}")

    omega = tuple(
        NCPoly({basis[k]: Pinv[k][j] for k in range(n)}) for j in range(n)
    )
    # determinant: rho(volume) = D (x) volume
    vol_poly = NCPoly.word(volume)
    coacted = coact_reduce(vol_poly, n, rs_b)
    if set(coacted) - {volume}:
        raise WGFError("WGF3", "coaction leaves the top degree")
    D = NCPoly._wrap(coacted.get(volume, {}))
    # minors: rho(omega^i) = sum_j T^i_j (x) omega^j
    minors = []
    for i in range(n):
        co = coact_reduce(omega[i], n, rs_b)
        row = []
        for j in range(n):
            # basis word w_m = sum_j P[j][m] omega^j
            acc: dict = {}
            for m, w in enumerate(basis):
                tp = co.get(w)
                if tp and P[j][m]:
                    for tw, cc in tp.items():
                        _add_into(acc, tw, cc * P[j][m])
            row.append(NCPoly._wrap(acc))
        minors.append(tuple(row))
    return WGFData(
        algebra=B,
        braiding=c,
        frt=A,
        max_deg=max_deg,
        top=top,
        dims=tuple(dims[:-1]),
        volume=volume,
        basis_top_minus_one=tuple(basis),
        left_pairing=tuple(tuple(r) for r in P),
        right_pairing=tuple(tuple(r) for r in Pr),
        omega=omega,
        det=D,
        minors=tuple(minors),
    )


def _fmt(M) -> str:
    return "[" + ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in M) + "]"


def quantum_determinant(w: WGFData, max_deg: int | None = None) -> tuple[NCPoly, Verdict]:
    """``D`` together with the grouplike verdict (counit and coproduct)."""
    return w.det, grouplike_verdict(w.det, w.frt, max_deg)


def omega_basis(w: WGFData) -> tuple[NCPoly, ...]:
    return w.omega


def minors_t(w: WGFData) -> tuple[tuple[NCPoly, ...], ...]:
    return w.minors


def check_omega(w: WGFData) -> bool:
    """``x_i omega^j = delta_i^j volume`` exactly after reduction."""
    rs = w.algebra.system(w.max_deg)
    vol = NCPoly.word(w.volume)
    for i in range(1, w.dim + 1):
        for j in range(1, w.dim + 1):
            lhs = rs.normal_form(gen(x(i)) * w.omega[j - 1])
            if lhs != (vol if i == j else NCPoly()):
                return False
    return True


def check_minors_roundtrip(w: WGFData) -> bool:
    """Re-expand ``sum_j T^i_j (x) omega^j`` and compare with ``rho(omega^i)``."""
    rs = w.algebra.system(w.max_deg)
    n = w.dim
    for i in range(n):
        want = coact_reduce(w.omega[i], n, rs)
        got: dict = {}
        for j in range(n):
            for xw, cx in w.omega[j].raw.items():
                acc = got.setdefault(xw, {})
                for tw, ct in w.minors[i][j].raw.items():
                    _add_into(acc, tw, ct * cx)
        got = {k: v for k, v in got.items() if v}
        if got != want:
            return False
    return True


def check_minor_counit(w: WGFData) -> bool:
    n = w.dim
    return all(counit(w.minors[i][j]) == (1 if i == j else 0) for i in range(n) for j in range(n))


def comatrix_check(w: WGFData, max_deg: int | None = None) -> CheckReport:
    """``Delta(T^i_j) = sum_k T^i_k (x) T^k_j`` modulo the FRT ideal."""
    from .bialgebra import TensorSquare, delta_on_poly

    rs = w.frt.system(max_deg)
    n = w.dim
    rep = CheckReport("comatrix")
    for i in range(n):
        for j in range(n):
            diff = delta_on_poly(w.minors[i][j], n)
            for k in range(n):
                diff = diff - TensorSquare.outer(w.minors[i][k], w.minors[k][j])
            red = diff.reduce(rs)
            v = Verdict.YES if red.is_zero() else (Verdict.NO if rs.converged else Verdict.UNKNOWN)
            rep.add(f"T^{i + 1}_{j + 1}", v)
    return rep


def lagrange_check(w: WGFData, P: Presentation | None = None, max_deg: int | None = None) -> CheckReport:
    """``sum_k t_i^k T^j_k - delta_i^j D`` in the FRT ideal."""
    P = P or w.frt
    rs = P.system(max_deg)
    n = w.dim
    rep = CheckReport("Lagrange")
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            lhs = NCPoly.sum(gen(t(i, k)) * w.T(j, k) for k in range(1, n + 1))
            if i == j:
                lhs = lhs - w.det
            rep.add(f"({i},{j})", ideal_contains(lhs, rs))
    return rep


def j_form_check(w: WGFData, form: CqtForm, P: Presentation | None = None, max_deg: int | None = None) -> CheckReport:
    """``sum_k J(T_i^k) t_k^j - delta_i^j D`` in the FRT ideal (``J = J_D``).

    Not a theorem; mixed outcomes are legitimate."""
    P = P or w.frt
    rs = P.system(max_deg)
    n = w.dim
    rep = CheckReport("J-form")
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            lhs = NCPoly.sum(hayashi_auto(w.det, w.T(k, i), form) * gen(t(k, j)) for k in range(1, n + 1))
            if i == j:
                lhs = lhs - w.det
            rep.add(f"({i},{j})", ideal_contains(lhs, rs))
    return rep
