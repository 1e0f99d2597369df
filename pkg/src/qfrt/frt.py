"""Braidings, the FRT bialgebra A(c), its coquasitriangular form and
Hayashi's automorphism ``J_g``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .bialgebra import (
    CheckReport,
    MapTensor,
    Presentation,
    TensorSquare,
    counit,
    delta_on_poly,
    multi_indices,
)
from .linalg import invert
from .ncalg import (
    DINV,
    NCPoly,
    Verdict,
    Word,
    _add_into,
    gen,
    gen_name,
    ideal_contains,
    is_t,
    t,
    t_indices,
)


class NotABraidingError(ValueError):
    pass


class SingularBraidingError(ValueError):
    pass


def _compose_on_cube(c: MapTensor, first: bool, vec: dict) -> dict:
    """Apply ``c (x) id`` (first=True) or ``id (x) c`` to a vector on V^{(x)3}."""
    out: dict = {}
    for I, v in vec.items():
        if first:
            head, rest = I[:2], I[2:]
        else:
            rest, head = I[:1], I[1:]
        for J, c_ in c.row(head).items():
            K = J + rest if first else rest + J
            _add_into(out, K, v * c_)
    return out


def check_braid(c: MapTensor) -> bool:
    """Exact comparison of ``(c1)(c2)(c1)`` and ``(c2)(c1)(c2)`` on every basis
    vector of ``V^{(x)3}``."""
    if c.in_power != 2 or c.out_power != 2:
        raise ValueError("a braiding must map V(x)V to V(x)V")
    for I in multi_indices(c.dim, 3):
        v = {I: Fraction(1)}
        lhs = _compose_on_cube(c, True, _compose_on_cube(c, False, _compose_on_cube(c, True, v)))
        rhs = _compose_on_cube(c, False, _compose_on_cube(c, True, _compose_on_cube(c, False, v)))
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class Braiding:
    """A solution of the braid equation, validated at construction."""

    tensor: MapTensor
    invertible: bool = field(init=False)

    def __post_init__(self):
        if not check_braid(self.tensor):
            raise NotABraidingError("map does not satisfy the braid equation")
        object.__setattr__(self, "invertible", invert(self.matrix()) is not None)

    @property
    def dim(self) -> int:
        return self.tensor.dim

    def coeff(self, i: int, j: int, k: int, l: int) -> Fraction:
        """``c_{ij}^{kl}``."""
        return self.tensor.coeff((i, j), (k, l))

    def matrix(self) -> list[list[Fraction]]:
        n = self.dim
        pairs = list(multi_indices(n, 2))
        return [[self.tensor.coeff(p, q) for q in pairs] for p in pairs]

    @classmethod
    def from_entries(cls, n: int, entries: Mapping) -> Braiding:
        return cls(MapTensor(n, 2, 2, dict(entries), name="c"))


def minus_flip(n: int) -> Braiding:
    """``c(x_i (x) x_j) = -x_j (x) x_i``."""
    return Braiding.from_entries(n, {((i, j), (j, i)): -1 for i in range(1, n + 1) for j in range(1, n + 1)})


def flip(n: int) -> Braiding:
    return Braiding.from_entries(n, {((i, j), (j, i)): 1 for i in range(1, n + 1) for j in range(1, n + 1)})


def diagonal(q: Sequence[Sequence]) -> Braiding:
    """Diagonal type: ``c(x_i (x) x_j) = q_ij x_j (x) x_i``."""
    n = len(q)
    return Braiding.from_entries(
        n, {((i + 1, j + 1), (j + 1, i + 1)): Fraction(q[i][j]) for i in range(n) for j in range(n)}
    )


def frt_relations(c: Braiding) -> list[NCPoly]:
    """``sum c_{ij}^{kl} t_k^r t_l^s - sum t_i^k t_j^l c_{kl}^{rs}``."""
    n = c.dim
    by_in: dict = {}
    by_out: dict = {}
    for (I, J), v in c.tensor.entries.items():
        by_in.setdefault(I, []).append((J, v))
        by_out.setdefault(J, []).append((I, v))
    rels = []
    for i, j, r, s in itertools.product(range(1, n + 1), repeat=4):
        acc: dict = {}
        for (k, l), v in by_in.get((i, j), ()):
            _add_into(acc, (t(k, r), t(l, s)), v)
        for (k, l), v in by_out.get((r, s), ()):
            _add_into(acc, (t(i, k), t(j, l)), -v)
        if acc:
            rels.append(NCPoly._wrap(acc))
    return rels


def frt_presentation(c: Braiding | MapTensor) -> Presentation:
    if isinstance(c, MapTensor):
        c = Braiding(c)
    return Presentation(c.dim, tuple(frt_relations(c)), name="A(c)")


# ---------------------------------------------------------------------------
# coquasitriangular structure


@dataclass(frozen=True)
class CqtForm:
    """Generator tables ``r(t_i^k, t_j^l) = c_{ji}^{kl}`` and its convolution
    inverse, indexed ``[(i, k)][(j, l)]``.

    ``det`` optionally names a grouplike ``D`` whose inverse is the letter
    ``Dinv``; then ``r(Dinv, b) = rbar(D, b)`` and ``r(a, Dinv) = rbar(a, D)``.
    """

    dim: int
    r: Mapping[tuple[tuple[int, int], tuple[int, int]], Fraction]
    rbar: Mapping[tuple[tuple[int, int], tuple[int, int]], Fraction]
    det: NCPoly | None = None
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def with_det(self, D: NCPoly) -> CqtForm:
        return CqtForm(self.dim, self.r, self.rbar, D)

    def table(self, side: str) -> Mapping:
        return self.r if side == "r" else self.rbar

    def inverse_identity_holds(self) -> bool:
        """``sum_{k,l} r(t_i^k, t_j^l) rbar(t_k^a, t_l^b) = delta_i^a delta_j^b``
        and the mirrored identity."""
        n = self.dim
        rng = range(1, n + 1)
        for i, j, a, b in itertools.product(rng, repeat=4):
            want = int(i == a and j == b)
            s1 = sum(self.r[(i, k), (j, l)] * self.rbar[(k, a), (l, b)] for k in rng for l in rng)
            s2 = sum(self.rbar[(i, k), (j, l)] * self.r[(k, a), (l, b)] for k in rng for l in rng)
            if s1 != want or s2 != want:
                return False
        return True


def cqt_form(c: Braiding) -> CqtForm:
    n = c.dim
    pairs = list(multi_indices(n, 2))
    # rows (i, j), columns (k, l): M = r(t_i^k, t_j^l) = c_{ji}^{kl}
    M = [[c.coeff(j, i, k, l) for (k, l) in pairs] for (i, j) in pairs]
    Minv = invert(M)
    if Minv is None:
        raise SingularBraidingError("braiding not invertible; cqt inverse undefined")
    r, rbar = {}, {}
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            r[(i, k), (j, l)] = M[a][b]
            rbar[(i, k), (j, l)] = Minv[a][b]
    return CqtForm(n, r, rbar)


def _split_delta(w: Word, n: int):
    """Pairs ``(w1, w2)`` of ``Delta(w)`` (all coefficients one)."""
    pieces = []
    for g in w:
        if g == DINV:
            pieces.append([(g, g)])
        else:
            i, j = t_indices(g)
            pieces.append([(t(i, k), t(k, j)) for k in range(1, n + 1)])
    for combo in itertools.product(*pieces):
        yield tuple(a for a, _ in combo), tuple(b for _, b in combo)


def _eps_word(w: Word) -> int:
    for g in w:
        if g == DINV:
            continue
        i, j = t_indices(g)
        if i != j:
            return 0
    return 1


def _eval_words(u: Word, v: Word, form: CqtForm, side: str) -> Fraction:
    key = (u, v, side)
    memo = form._memo
    if key in memo:
        return memo[key]
    n = form.dim
    if not u:
        val = Fraction(_eps_word(v))
    elif not v:
        val = Fraction(_eps_word(u))
    elif len(u) >= 2:
        val = Fraction(0)
        for v1, v2 in _split_delta(v, n):
            if side == "r":
                # r(a u', v) = r(a, v1) r(u', v2)
                a = _eval_words(u[:1], v1, form, side)
                if a:
                    val += a * _eval_words(u[1:], v2, form, side)
            else:
                # rbar(a u', v) = rbar(u', v1) rbar(a, v2)
                a = _eval_words(u[:1], v2, form, side)
                if a:
                    val += a * _eval_words(u[1:], v1, form, side)
    elif len(v) >= 2:
        val = Fraction(0)
        for u1, u2 in _split_delta(u, n):
            if side == "r":
                # r(a, b v') = r(a2, b) r(a1, v')
                a = _eval_words(u2, v[:1], form, side)
                if a:
                    val += a * _eval_words(u1, v[1:], form, side)
            else:
                # rbar(a, b v') = rbar(a1, b) rbar(a2, v')
                a = _eval_words(u1, v[:1], form, side)
                if a:
                    val += a * _eval_words(u2, v[1:], form, side)
    else:
        g, h = u[0], v[0]
        other = "rbar" if side == "r" else "r"
        if g == DINV:
            # r(Dinv, -) and rbar(D, -) are mutually convolution inverse
            val = _eval_poly_word(form.det, v, form, other, left=True)
        elif h == DINV:
            val = _eval_poly_word(form.det, u, form, other, left=False)
        else:
            i, k = t_indices(g)
            j, l = t_indices(h)
            val = form.table(side)[(i, k), (j, l)]
    memo[key] = val
    return val


def _eval_poly_word(D: NCPoly | None, w: Word, form: CqtForm, side: str, left: bool) -> Fraction:
    """``side(D, w)`` if ``left`` else ``side(w, D)``."""
    if D is None:
        raise ValueError("form has no determinant attached; cannot evaluate on Dinv")
    total = Fraction(0)
    for dw, c in D.raw.items():
        total += c * (_eval_words(dw, w, form, side) if left else _eval_words(w, dw, form, side))
    return total


def eval_r(p: NCPoly, q: NCPoly, form: CqtForm, side: str = "r") -> Fraction:
    """Bilinear extension of ``r`` (or ``rbar``) to the free algebra."""
    if side not in ("r", "rbar"):
        raise ValueError("side must be 'r' or 'rbar'")
    for g in p.generators() | q.generators():
        if g != DINV and not (is_t(g) and max(t_indices(g)) <= form.dim):
            raise ValueError(f"unknown generator {gen_name(g)} for the cqt form")
    total = Fraction(0)
    for u, a in p.raw.items():
        for v, b in q.raw.items():
            total += a * b * _eval_words(u, v, form, side)
    return total


def check_cqt3(P: Presentation, form: CqtForm, max_deg: int | None = None) -> CheckReport:
    """``r(a1, b1) a2 b2 - b1 a1 r(a2, b2)`` in the ideal for generator pairs."""
    n = form.dim
    rs = P.system(max_deg)
    rep = CheckReport("CQT3")
    rng = range(1, n + 1)
    for i, j, k, l in itertools.product(rng, repeat=4):
        acc: dict = {}
        for m in rng:
            for p in rng:
                v = form.r[(i, m), (k, p)]
                if v:
                    _add_into(acc, (t(m, j), t(p, l)), v)
                v = form.r[(m, j), (p, l)]
                if v:
                    _add_into(acc, (t(k, p), t(i, m)), -v)
        rep.add(f"t[{i},{j}],t[{k},{l}]", ideal_contains(NCPoly._wrap(acc), rs))
    return rep


def grouplike_verdict(g: NCPoly, P: Presentation, max_deg: int | None = None) -> Verdict:
    """``eps(g) = 1`` and ``Delta(g) - g (x) g`` in ``I (x) A + A (x) I``."""
    if counit(g) != 1:
        return Verdict.NO
    rs = P.system(max_deg)
    diff = delta_on_poly(g, P.dim) - TensorSquare.outer(g, g)
    red = diff.reduce(rs)
    if red.is_zero():
        return Verdict.YES
    return Verdict.NO if rs.converged else Verdict.UNKNOWN


def hayashi_auto(g: NCPoly, a: NCPoly, form: CqtForm) -> NCPoly:
    """``J_g(a) = sum r(a1, g) a2 rbar(a3, g)`` on representatives."""
    n = form.dim
    acc: dict = {}
    for w, c in a.raw.items():
        for w1, rest in _split_delta(w, n):
            left = eval_r(NCPoly.word(w1), g, form, "r")
            if not left:
                continue
            for w2, w3 in _split_delta(rest, n):
                right = eval_r(NCPoly.word(w3), g, form, "rbar")
                if right:
                    _add_into(acc, w2, c * left * right)
    return NCPoly._wrap(acc)


def hayashi_images(g: NCPoly, form: CqtForm) -> dict[int, NCPoly]:
    n = form.dim
    return {t(i, j): hayashi_auto(g, gen(t(i, j)), form) for i in range(1, n + 1) for j in range(1, n + 1)}


def check_normality(g: NCPoly, P: Presentation, form: CqtForm, max_deg: int | None = None) -> CheckReport:
    """``g t_i^j - J_g(t_i^j) g`` in the ideal for every generator."""
    rs = P.system(max_deg)
    rep = CheckReport("normality")
    for tg, img in hayashi_images(g, form).items():
        rep.add(gen_name(tg), ideal_contains(g * gen(tg) - img * g, rs))
    return rep


def check_r_descends(P: Presentation, form: CqtForm) -> CheckReport:
    """``r(w, b) = r(b, w) = 0`` for every relation ``w`` and generator ``b``
    (``Dinv`` included when ``P`` has it and ``form`` knows ``D``)."""
    rep = CheckReport("r descends")
    gens = [gen(t(i, j)) for i in range(1, form.dim + 1) for j in range(1, form.dim + 1)]
    if DINV in P.extra and form.det is not None:
        gens.append(gen(DINV))
    for k, w in enumerate(P.relations):
        ok = all(
            eval_r(w, b, form, s) == 0 and eval_r(b, w, form, s) == 0 for b in gens for s in ("r", "rbar")
        )
        rep.add(f"relation {k}", Verdict.YES if ok else Verdict.NO)
    return rep
