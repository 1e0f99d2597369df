"""Matrix coalgebra, free bialgebra TC and the universal bialgebra A(F).

For a family ``F`` of linear maps ``f: V^{(x)a} -> V^{(x)b}`` the universal
bialgebra is ``TC / I_F`` where ``I_F`` is generated by the colinearity
defects ``sum_J t_I^J f_J^K - f_I^J t_J^K``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .ncalg import (
    DINV,
    EMPTY,
    ONE,
    NCPoly,
    RewriteSystem,
    Verdict,
    Word,
    _add_into,
    complete,
    default_max_deg,
    gen_name,
    ideal_contains,
    is_t,
    t,
    t_alphabet,
    t_indices,
)

MultiIndex = tuple[int, ...]


def multi_indices(n: int, length: int) -> Iterator[MultiIndex]:
    """``{1..n}^length`` in lexicographic order."""
    return itertools.product(range(1, n + 1), repeat=length)


def t_word(I: Sequence[int], J: Sequence[int]) -> Word:
    """The word ``t_I^J = t_{i1}^{j1} ... t_{ia}^{ja}``."""
    return tuple(t(i, j) for i, j in zip(I, J))


@dataclass(frozen=True)
class MapTensor:
    """Sparse coefficients ``f_I^J`` of ``f(x_I) = sum_J f_I^J x_J``."""

    dim: int
    in_power: int
    out_power: int
    entries: Mapping[tuple[MultiIndex, MultiIndex], Fraction] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        if self.dim < 0 or self.in_power < 0 or self.out_power < 0:
            raise ValueError("dimension and powers must be non-negative")
        clean = {}
        for (I, J), c in self.entries.items():
            I, J = tuple(I), tuple(J)
            if len(I) != self.in_power or len(J) != self.out_power:
                raise ValueError(f"multi-index lengths {len(I)},{len(J)} do not match map shape")
            if any(not 1 <= k <= self.dim for k in I + J):
                raise ValueError(f"multi-index entry out of range 1..{self.dim}: {I} -> {J}")
            c = Fraction(c)
            if c:
                clean[(I, J)] = c
        object.__setattr__(self, "entries", clean)

    def coeff(self, I: MultiIndex, J: MultiIndex) -> Fraction:
        return self.entries.get((tuple(I), tuple(J)), Fraction(0))

    def row(self, I: MultiIndex) -> dict[MultiIndex, Fraction]:
        return {J: c for (I2, J), c in self.entries.items() if I2 == tuple(I)}

    def apply(self, vec: Mapping[MultiIndex, Fraction]) -> dict[MultiIndex, Fraction]:
        out: dict[MultiIndex, Fraction] = {}
        for (I, J), c in self.entries.items():
            v = vec.get(I)
            if v:
                _add_into(out, J, v * c)
        return out

    @classmethod
    def identity(cls, n: int, power: int = 1) -> MapTensor:
        return cls(n, power, power, {(I, I): 1 for I in multi_indices(n, power)}, name="id")

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence], name: str = "") -> MapTensor:
        """Bilinear form ``V (x) V -> k`` with ``b(x_i, x_j) = rows[i-1][j-1]``."""
        n = len(rows)
        entries = {((i + 1, j + 1), ()): c for i, r in enumerate(rows) for j, c in enumerate(r)}
        return cls(n, 2, 0, entries, name=name)


# ---------------------------------------------------------------------------
# coalgebra structure of TC


class TensorSquare:
    """Element of ``TC (x) TC`` as a map ``(word, word) -> coefficient``."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[Word, Word], Fraction] | None = None):
        self.terms = terms or {}

    def __sub__(self, other: TensorSquare) -> TensorSquare:
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, -c)
        return TensorSquare(acc)

    def __add__(self, other: TensorSquare) -> TensorSquare:
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return TensorSquare(acc)

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorSquare):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    @classmethod
    def outer(cls, p: NCPoly, q: NCPoly) -> TensorSquare:
        acc: dict = {}
        for w1, c1 in p.raw.items():
            for w2, c2 in q.raw.items():
                _add_into(acc, (w1, w2), c1 * c2)
        return cls(acc)

    def reduce(self, left: RewriteSystem, right: RewriteSystem | None = None) -> TensorSquare:
        """Apply normal forms factorwise; zero iff the element lies in
        ``I (x) TC + TC (x) I`` (exact when both systems converged)."""
        right = right or left
        acc: dict = {}
        for (w1, w2), c in self.terms.items():
            n1 = left._nf_word(w1)
            if not n1:
                continue
            n2 = right._nf_word(w2)
            for v1, d1 in n1.items():
                for v2, d2 in n2.items():
                    _add_into(acc, (v1, v2), c * d1 * d2)
        return TensorSquare(acc)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (w1, w2), c in sorted(self.terms.items()):
            parts.append(f"{c}*({NCPoly.word(w1)} (x) {NCPoly.word(w2)})")
        return " + ".join(parts)


def _delta_gen(g: int, n: int) -> list[tuple[int, int]]:
    if g == DINV:
        return [(g, g)]
    if is_t(g):
        i, j = t_indices(g)
        if not (i <= n and j <= n):
            raise ValueError(f"{gen_name(g)} outside dimension {n}")
        return [(t(i, k), t(k, j)) for k in range(1, n + 1)]
    raise ValueError(f"no comultiplication on generator {gen_name(g)}")


def delta_word(w: Word, n: int) -> dict[tuple[Word, Word], int]:
    """Coproduct of one word; each term has coefficient 1."""
    pieces = [_delta_gen(g, n) for g in w]
    out: dict[tuple[Word, Word], int] = {}
    for combo in itertools.product(*pieces):
        key = (tuple(a for a, _ in combo), tuple(b for _, b in combo))
        out[key] = out.get(key, 0) + 1
    return out


def delta_on_poly(p: NCPoly, n: int) -> TensorSquare:
    """Multiplicative extension of ``Delta(t_i^j) = sum_k t_i^k (x) t_k^j``;
    ``Dinv`` is grouplike."""
    acc: dict = {}
    for w, c in p.raw.items():
        for key, m in delta_word(w, n).items():
            _add_into(acc, key, c * m)
    return TensorSquare(acc)


def counit(p: NCPoly) -> Fraction:
    """``eps(t_i^j) = delta_i^j``, ``eps(Dinv) = 1``."""
    total = Fraction(0)
    for w, c in p.raw.items():
        val = 1
        for g in w:
            if g == DINV:
                continue
            if not is_t(g):
                raise ValueError(f"no counit on generator {gen_name(g)}")
            i, j = t_indices(g)
            if i != j:
                val = 0
                break
        if val:
            total += c
    return total


def coaction_on_power(I: Sequence[int], n: int) -> list[tuple[Word, MultiIndex]]:
    """``rho(x_I) = sum_J t_I^J (x) x_J`` as a list of ``(t-word, J)``."""
    I = tuple(I)
    if any(not 1 <= i <= n for i in I):
        raise ValueError(f"multi-index {I} out of range 1..{n}")
    return [(t_word(I, J), J) for J in multi_indices(n, len(I))]


def colinearity_relations(f: MapTensor) -> list[NCPoly]:
    """``sum_J t_I^J f_J^K - f_I^J t_J^K`` for every ``(I, K)``, zeros dropped."""
    return [p for _, p in _colinearity_items(f)]


def _colinearity_items(f: MapTensor) -> list[tuple[tuple[MultiIndex, MultiIndex], NCPoly]]:
    n, a, b = f.dim, f.in_power, f.out_power
    # f_J^K grouped by K, f_I^J grouped by I
    by_out: dict[MultiIndex, list[tuple[MultiIndex, Fraction]]] = {}
    by_in: dict[MultiIndex, list[tuple[MultiIndex, Fraction]]] = {}
    for (J, K), c in f.entries.items():
        by_out.setdefault(K, []).append((J, c))
        by_in.setdefault(J, []).append((K, c))
    rels = []
    for I in multi_indices(n, a):
        for K in multi_indices(n, b):
            acc: dict[Word, Fraction] = {}
            for J, c in by_out.get(K, ()):
                _add_into(acc, t_word(I, J), c)
            for J, c in by_in.get(I, ()):
                _add_into(acc, t_word(J, K), -c)
            if acc:
                rels.append(((I, K), NCPoly._wrap(acc)))
    return rels


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    """Quotient ``TC[extra] / (relations)`` with the matrix coalgebra on the t's.

    Extra generators (only ``Dinv`` so far) are grouplike.
    """

    dim: int
    relations: tuple[NCPoly, ...]
    extra: tuple[int, ...] = ()
    name: str = ""
    _systems: dict = field(default_factory=dict, repr=False, compare=False)

    def generators(self) -> list[int]:
        return sorted(set(self.extra) | set(t_alphabet(self.dim)))

    def default_max_deg(self) -> int:
        return default_max_deg(self.relations)

    def system(self, max_deg: int | None = None) -> RewriteSystem:
        """Completed rewrite system (cached per degree bound)."""
        if max_deg is None:
            max_deg = self.default_max_deg()
        rs = self._systems.get(max_deg)
        if rs is None:
            rs = complete(self.relations, max_deg, self.generators())
            self._systems[max_deg] = rs
        return rs

    def contains(self, p: NCPoly, max_deg: int | None = None) -> Verdict:
        return ideal_contains(p, self.system(max_deg))

    def with_relations(self, extra_rels: Iterable[NCPoly], name: str | None = None) -> Presentation:
        return Presentation(
            self.dim, self.relations + tuple(extra_rels), self.extra, name or self.name
        )


def universal_bialgebra(F: Sequence[MapTensor], dim: int | None = None, name: str = "A(F)") -> Presentation:
    """``A(F) = TC / sum_f I_f``."""
    dims = {f.dim for f in F}
    if len(dims) > 1:
        raise ValueError(f"maps of different dimensions in family: {sorted(dims)}")
    if dim is None:
        if not dims:
            raise ValueError("empty family needs an explicit dim")
        dim = dims.pop()
    elif dims and dims != {dim}:
        raise ValueError("family dimension disagrees with dim")
    keyed = []
    for idx, f in enumerate(F):
        for (I, K), p in _colinearity_items(f):
            keyed.append(((len(I) + len(K), I, K, idx), p))
    keyed.sort(key=lambda kp: kp[0])
    return Presentation(dim, tuple(p for _, p in keyed), name=name)


def grading_projectors(degrees: Sequence[int]) -> list[MapTensor]:
    n = len(degrees)
    out = []
    for d in sorted(set(degrees)):
        entries = {((i,), (i,)): 1 for i in range(1, n + 1) if degrees[i - 1] == d}
        out.append(MapTensor(n, 1, 1, entries, name=f"e_{d}"))
    return out


def is_graded(f: MapTensor, degrees: Sequence[int]) -> bool:
    for (I, J), _ in f.entries.items():
        if sum(degrees[i - 1] for i in I) != sum(degrees[j - 1] for j in J):
            return False
    return True


@dataclass(frozen=True)
class GradedResult:
    presentation: Presentation
    graded: bool
    offending: tuple[str, ...] = ()


def graded_universal(F: Sequence[MapTensor], degrees: Sequence[int]) -> GradedResult:
    """``A_gr(F) = A(E u F)`` with ``E`` the projectors onto the homogeneous
    components.  Non-graded members of ``F`` are reported, not refused."""
    if F and any(f.dim != len(degrees) for f in F):
        raise ValueError("degrees must assign one degree per basis vector")
    bad = tuple(f.name or f"map#{k}" for k, f in enumerate(F) if not is_graded(f, degrees))
    P = universal_bialgebra(list(grading_projectors(degrees)) + list(F), dim=len(degrees), name="A_gr(F)")
    return GradedResult(P, graded=not bad, offending=bad)


# ---------------------------------------------------------------------------
# checks


@dataclass
class CheckReport:
    """Named collection of per-item verdicts."""

    name: str
    items: list[tuple[str, Verdict, str]] = field(default_factory=list)

    def add(self, label: str, verdict: Verdict, info: str = "") -> None:
        self.items.append((label, verdict, info))

    @property
    def verdict(self) -> Verdict:
        return Verdict.combine(v for _, v, _ in self.items)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.YES

    def failures(self) -> list[tuple[str, Verdict, str]]:
        return [it for it in self.items if it[1] is not Verdict.YES]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "verdict": verdict_word(self.verdict),
            "items": [
                {"label": lab, "verdict": verdict_word(v), **({"info": info} if info else {})}
                for lab, v, info in self.items
            ],
        }


def verdict_word(v: Verdict) -> str:
    return {Verdict.YES: "pass", Verdict.NO: "fail", Verdict.UNKNOWN: "unknown"}[v]


def coideal_verdict(p: NCPoly, n: int, rs: RewriteSystem) -> Verdict:
    red = delta_on_poly(p, n).reduce(rs)
    if red.is_zero():
        return Verdict.YES
    return Verdict.NO if rs.converged else Verdict.UNKNOWN


def check_bi_ideal(P: Presentation, max_deg: int | None = None) -> CheckReport:
    """``eps(r) = 0`` and ``(pi (x) pi) Delta(r) = 0`` for every relation."""
    rs = P.system(max_deg)
    rep = CheckReport("bi-ideal")
    for k, r in enumerate(P.relations):
        e = counit(r)
        if e:
            rep.add(f"relation {k}", Verdict.NO, f"eps = {e}")
            continue
        rep.add(f"relation {k}", coideal_verdict(r, P.dim, rs))
    return rep


def check_colinear(f: MapTensor, P: Presentation, max_deg: int | None = None) -> Verdict:
    if f.dim != P.dim:
        raise ValueError("map and presentation dimensions differ")
    rs = P.system(max_deg)
    return Verdict.combine(ideal_contains(r, rs) for r in colinearity_relations(f))


def map_generators(P: Presentation, images: Mapping[int, NCPoly], target: Presentation,
                   max_deg: int | None = None) -> Verdict:
    """Whether ``t_i^j -> images[t_i^j]`` sends every relation of ``P`` into
    the ideal of ``target`` (the universal-property test)."""
    rs = target.system(max_deg)
    return Verdict.combine(ideal_contains(r.substitute(images), rs) for r in P.relations)
