"""Small worked inputs shared by tests, the CLI corpus and the README.

Naming for 2x2 generator matrices: ``a = t[1,1], b = t[1,2], c = t[2,1],
d = t[2,2]``.
"""

from __future__ import annotations

from fractions import Fraction

from .bialgebra import MapTensor
from .frt import Braiding, diagonal, minus_flip
from .ncalg import NCPoly, gen, t, x
from .wgf import GradedAlgebra, exterior_algebra

A, B_, C, D_ = (gen(t(1, 1)), gen(t(1, 2)), gen(t(2, 1)), gen(t(2, 2)))


def dual_numbers() -> tuple[MapTensor, MapTensor]:
    """Multiplication and unit of ``k[x]/x^2`` on the basis ``1, x``."""
    m = MapTensor(2, 2, 1, {((1, 1), (1,)): 1, ((1, 2), (2,)): 1, ((2, 1), (2,)): 1}, name="m")
    u = MapTensor(2, 0, 1, {((), (1,)): 1}, name="u")
    return m, u


def dual_numbers_expected() -> list[NCPoly]:
    return [A - 1, B_, C * C, C * D_ + D_ * C]


def dual_numbers_trace() -> MapTensor:
    """Trace of left multiplication: ``tr(1) = 2``, ``tr(x) = 0``."""
    return MapTensor(2, 1, 0, {((1,), ()): 2}, name="tr")


def lie_bracket() -> MapTensor:
    """The non-abelian 2-dimensional Lie algebra, ``[x, y] = x``."""
    return MapTensor(2, 2, 1, {((1, 2), (1,)): 1, ((2, 1), (1,)): -1}, name="bracket")


def lie_expected() -> list[NCPoly]:
    return [B_, A * D_ - A, D_ * A - A, C * D_ - D_ * C]


KRONECKER = (2, [(1, 2), (1, 2)])


def kronecker_expected() -> list[NCPoly]:
    """Degree-separating projector relations plus the three path-algebra
    families, on the basis ``e1, e2, alpha, beta`` (both arrows 1 -> 2)."""
    V0, V1 = (1, 2), (3, 4)
    src = {3: 1, 4: 1}
    tgt = {3: 2, 4: 2}
    T = lambda i, j: gen(t(i, j))  # noqa: E731
    rels = [T(i, a) for i in V0 for a in V1] + [T(a, i) for i in V0 for a in V1]
    for i in V0:
        for j in V0:
            for k in V0:
                rels.append(T(i, k) * T(j, k) - (T(i, k) if i == j else 0))
    for i in V0:
        for al in V1:
            for be in V1:
                rels.append(T(i, tgt[be]) * T(al, be) - (T(al, be) if i == tgt[al] else 0))
    for j in V0:
        for al in V1:
            for be in V1:
                rels.append(T(al, be) * T(j, src[be]) - (T(al, be) if j == src[al] else 0))
    return [r for r in rels if not r.is_zero()]


def exterior(n: int) -> tuple[Braiding, GradedAlgebra]:
    return minus_flip(n), exterior_algebra(n)


def sign_line() -> tuple[Braiding, GradedAlgebra]:
    """``n = 1``, ``c = -1``, ``B = k[x]/x^2``."""
    return diagonal([[-1]]), GradedAlgebra(1, (gen(x(1)) * gen(x(1)),))


def diagonal_minus_one() -> tuple[Braiding, GradedAlgebra]:
    return diagonal([[-1, -1], [-1, -1]]), exterior_algebra(2)


def quantum_plane_exterior(q: Fraction = Fraction(2)) -> tuple[Braiding, GradedAlgebra]:
    """Diagonal braiding with ``q11 = q22 = -1``, ``q12 = q``, ``q21 = 1/q``;
    ``B`` is the quantum exterior plane. Hayashi's ``J`` is not the identity."""
    q = Fraction(q)
    x1, x2 = gen(x(1)), gen(x(2))
    return diagonal([[-1, q], [1 / q, -1]]), GradedAlgebra(2, (x1 * x1, x2 * x2, x2 * x1 - (1 / q) * x1 * x2))


def wgf4_violation() -> tuple[Braiding, GradedAlgebra]:
    """``B = <x1 x2, x2 x1, x1^2, x2^3>``: the degree-1 element ``x1`` pairs to
    zero with everything, so the left pairing is singular."""
    x1, x2 = gen(x(1)), gen(x(2))
    return diagonal([[1, 1], [1, 2]]), GradedAlgebra(2, (x1 * x2, x2 * x1, x1 * x1, x2 * x2 * x2))


def perturbed_identity() -> MapTensor:
    """``id`` on ``V (x) V`` (n = 2) with ``c_{11}^{12}`` bumped by one."""
    ent = {(I, I): 1 for I in [(1, 1), (1, 2), (2, 1), (2, 2)]}
    ent[((1, 1), (1, 2))] = 1
    return MapTensor(2, 2, 2, ent, name="c")


DVL_FORMS = {
    "identity": [[1, 0], [0, 1]],
    "symplectic": [[0, 1], [-1, 0]],
    "upper": [[1, 2], [0, 1]],
}

SINGULAR_FORM = [[1, 2], [2, 4]]
