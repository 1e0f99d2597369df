"""Free associative algebra over Q and degree-bounded two-sided ideal rewriting.

Generators are small integers whose natural order *is* the monomial order on
letters:

* ``DINV`` (the adjoined inverse of a quantum determinant) is ``0`` and hence
  the smallest letter;
* ``t(i, j)`` encodes to ``1000 + 100*i + j`` so t-generators are ordered
  row-major by ``(i, j)``;
* ``x(i)`` encodes to ``100000 + i``.

Indices are 1-based and must be below 100.  Words are tuples of generator
codes and are compared degree-lexicographically: first by length, then
lexicographically from the left.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

log = logging.getLogger(__name__)

Word = tuple[int, ...]
Scalar = Fraction
Coeff = Union[int, Fraction]

ONE = Fraction(1)
ZERO = Fraction(0)
EMPTY: Word = ()

DINV = 0
_T_BASE = 1000
_X_BASE = 100000
MAX_INDEX = 99


def t(i: int, j: int) -> int:
    """Generator code of ``t_i^j``."""
    if not (1 <= i <= MAX_INDEX and 1 <= j <= MAX_INDEX):
        raise ValueError(f"t-index out of range: ({i}, {j})")
    return _T_BASE + 100 * i + j


def x(i: int) -> int:
    """Generator code of ``x_i``."""
    if not 1 <= i <= MAX_INDEX:
        raise ValueError(f"x-index out of range: {i}")
    return _X_BASE + i


def is_t(g: int) -> bool:
    return _T_BASE < g < _X_BASE


def is_x(g: int) -> bool:
    return g > _X_BASE


def t_indices(g: int) -> tuple[int, int]:
    if not is_t(g):
        raise ValueError(f"not a t-generator: {gen_name(g)}")
    return divmod(g - _T_BASE, 100)


def x_index(g: int) -> int:
    if not is_x(g):
        raise ValueError(f"not an x-generator: {g}")
    return g - _X_BASE


def gen_name(g: int) -> str:
    if g == DINV:
        return "Dinv"
    if is_t(g):
        i, j = divmod(g - _T_BASE, 100)
        return f"t[{i},{j}]"
    if is_x(g):
        return f"x[{g - _X_BASE}]"
    raise ValueError(f"unknown generator code {g}")


_GEN_RE = re.compile(r"\s*(?:t\[\s*(\d+)\s*,\s*(\d+)\s*\]|x\[\s*(\d+)\s*\]|(Dinv))\s*")


def parse_gen(text: str) -> int:
    m = _GEN_RE.fullmatch(text)
    if not m:
        raise ValueError(f"bad generator name {text!r}")
    if m.group(4):
        return DINV
    if m.group(1):
        return t(int(m.group(1)), int(m.group(2)))
    return x(int(m.group(3)))


def t_alphabet(n: int) -> list[int]:
    return [t(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def x_alphabet(n: int) -> list[int]:
    return [x(i) for i in range(1, n + 1)]


def word_key(w: Word) -> tuple[int, Word]:
    """Sort key realising the degree-lexicographic order."""
    return (len(w), w)


def word_str(w: Word) -> str:
    return "*".join(gen_name(g) for g in w) if w else "1"


_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_scalar(text: str | int) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` exactly.  Floats are refused."""
    if isinstance(text, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.fullmatch(text.strip()):
        raise ValueError(f"not an exact rational: {text!r}")
    num, _, den = text.strip().partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def scalar_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# raw dict helpers (hot paths work on plain dicts)


def _add_into(acc: dict, w: Word, c: Fraction) -> None:
    v = acc.get(w)
    if v is None:
        acc[w] = c
    else:
        v += c
        if v:
            acc[w] = v
        else:
            del acc[w]


def _lead(terms: Mapping[Word, Fraction]) -> Word:
    return max(terms, key=word_key)


class NCPoly:
    """Finitely supported map from words to rationals; immutable.

    Zero coefficients are never stored.  Iteration (``terms()``) runs in
    decreasing monomial order, leading term first.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, Coeff] | None = None):
        clean: dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(w)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict[Word, Fraction]) -> NCPoly:
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def gen(cls, g: int) -> NCPoly:
        return cls._wrap({(g,): ONE})

    @classmethod
    def word(cls, w: Iterable[int], c: Coeff = 1) -> NCPoly:
        return cls({tuple(w): c})

    @classmethod
    def const(cls, c: Coeff) -> NCPoly:
        return cls({EMPTY: c})

    @classmethod
    def sum(cls, polys: Iterable[NCPoly]) -> NCPoly:
        acc: dict[Word, Fraction] = {}
        for p in polys:
            for w, c in p._terms.items():
                _add_into(acc, w, c)
        return cls._wrap(acc)

    # -- inspection -----------------------------------------------------
    @property
    def raw(self) -> Mapping[Word, Fraction]:
        return self._terms

    def terms(self) -> list[tuple[Word, Fraction]]:
        return sorted(self._terms.items(), key=lambda wc: word_key(wc[0]), reverse=True)

    def words(self) -> list[Word]:
        return [w for w, _ in self.terms()]

    def coeff(self, w: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(w), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Maximal word length; ``-1`` for the zero polynomial."""
        return max((len(w) for w in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self._terms}) <= 1

    def leading_word(self) -> Word:
        if not self._terms:
            raise ValueError("zero polynomial has no leading word")
        return _lead(self._terms)

    def leading_coeff(self) -> Fraction:
        return self._terms[self.leading_word()]

    def generators(self) -> set[int]:
        return {g for w in self._terms for g in w}

    def constant_term(self) -> Fraction:
        return self._terms.get(EMPTY, ZERO)

    def monic(self) -> NCPoly:
        if not self._terms:
            return self
        lc = self.leading_coeff()
        if lc == 1:
            return self
        return NCPoly._wrap({w: c / lc for w, c in self._terms.items()})

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> NCPoly | None:
        if isinstance(other, NCPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return NCPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self._terms)
        for w, c in o._terms.items():
            _add_into(acc, w, c)
        return NCPoly._wrap(acc)

    __radd__ = __add__

    def __neg__(self) -> NCPoly:
        return NCPoly._wrap({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c: Coeff) -> NCPoly:
        c = Fraction(c)
        if not c:
            return NCPoly()
        return NCPoly._wrap({w: c * v for w, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        acc: dict[Word, Fraction] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                _add_into(acc, w1 + w2, c1 * c2)
        return NCPoly._wrap(acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> NCPoly:
        out = NCPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, images: Mapping[int, NCPoly], reverse: bool = False) -> NCPoly:
        """Algebra (or, with ``reverse``, anti-algebra) map given on letters.

        Letters missing from ``images`` are kept as they are.
        """
        cache: dict[int, NCPoly] = {}

        def img(g: int) -> NCPoly:
            if g not in cache:
                cache[g] = images[g] if g in images else NCPoly.gen(g)
            return cache[g]

        acc: dict[Word, Fraction] = {}
        for w, c in self._terms.items():
            letters = reversed(w) if reverse else w
            prod = NCPoly.const(c)
            for g in letters:
                prod = prod * img(g)
                if not prod:
                    break
            for w2, c2 in prod._terms.items():
                _add_into(acc, w2, c2)
        return NCPoly._wrap(acc)

    # -- comparison / display ---------------------------------------------
    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, (w, c) in enumerate(self.terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not w:
                body = scalar_str(a)
            elif a == 1:
                body = word_str(w)
            else:
                body = f"{scalar_str(a)}*{word_str(w)}"
            if k == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"NCPoly({str(self)!r})"


def gen(g: int) -> NCPoly:
    return NCPoly.gen(g)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")


def parse_poly(text: str) -> NCPoly:
    """Parse the canonical text form, e.g. ``"t[1,1]*t[2,2] - 2/3*t[1,2] + 1"``."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return NCPoly()
    # split on +/- that are not inside brackets
    tokens: list[str] = []
    depth = 0
    cur = ""
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip():
            tokens.append(cur)
            cur = ch
        else:
            cur += ch
    tokens.append(cur)
    acc: dict[Word, Fraction] = {}
    for tok in tokens:
        tok = tok.replace(" ", "")
        sign = 1
        while tok and tok[0] in "+-":
            if tok[0] == "-":
                sign = -sign
            tok = tok[1:]
        if not tok:
            raise ValueError(f"dangling sign in {text!r}")
        factors = tok.split("*")
        coeff = Fraction(sign)
        letters: list[int] = []
        for f in factors:
            if _RATIONAL_RE.fullmatch(f):
                if letters:
                    raise ValueError(f"scalar after letters in term {tok!r}")
                coeff *= parse_scalar(f)
            else:
                letters.append(parse_gen(f))
        _add_into(acc, tuple(letters), coeff)
    return NCPoly._wrap(acc)


# ---------------------------------------------------------------------------
# rewriting


class Verdict(str, Enum):
    """Three-valued answer.

    For ideal membership ``NO`` means *definitely not* (normal form nonzero
    under a converged system) and ``UNKNOWN`` means *not up to the degree
    bound*.
    """

    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @staticmethod
    def combine(verdicts: Iterable[Verdict]) -> Verdict:
        vs = list(verdicts)
        if any(v is Verdict.NO for v in vs):
            return Verdict.NO
        if any(v is Verdict.UNKNOWN for v in vs):
            return Verdict.UNKNOWN
        return Verdict.YES


class UnknownGeneratorError(ValueError):
    pass


ORDER_NAME = "deglex(Dinv < t row-major < x)"


def _find_reducer(w: Word, rules: Mapping[Word, dict], lengths: tuple[int, ...]):
    n = len(w)
    for L in lengths:
        if L > n:
            break
        for s in range(n - L + 1):
            tail = rules.get(w[s : s + L])
            if tail is not None:
                return s, L, tail
    return None


def _heap_key(w: Word):
    return (-len(w), tuple(-g for g in w))


def _reduce(terms: Mapping[Word, Fraction], rules: Mapping[Word, dict], lengths: tuple[int, ...]) -> dict:
    """Full reduction, largest word first.  ``rules`` maps lead -> tail."""
    if not rules:
        return dict(terms)
    p = dict(terms)
    heap = [(_heap_key(w), w) for w in p]
    heapq.heapify(heap)
    out: dict[Word, Fraction] = {}
    while heap:
        _, w = heapq.heappop(heap)
        c = p.pop(w, None)
        if c is None:
            continue
        hit = _find_reducer(w, rules, lengths)
        if hit is None:
            out[w] = c
            continue
        s, L, tail = hit
        pre, post = w[:s], w[s + L :]
        for m, d in tail.items():
            nw = pre + m + post
            if nw in p:
                v = p[nw] + c * d
                if v:
                    p[nw] = v
                else:
                    del p[nw]
            else:
                p[nw] = c * d
                heapq.heappush(heap, (_heap_key(nw), nw))
    return out


@dataclass(frozen=True)
class RewriteSystem:
    """Inter-reduced rules ``lead -> tail`` for a two-sided ideal.

    ``converged`` is true only when every overlap was resolved, i.e. no
    overlap was discarded because its degree exceeded ``max_deg``.  For
    homogeneous input the rules are nevertheless exact in all degrees
    ``<= max_deg``.
    """

    rules: Mapping[Word, Mapping[Word, Fraction]]
    alphabet: frozenset[int]
    max_deg: int
    converged: bool
    order: str = ORDER_NAME
    homogeneous: bool = False
    _lengths: tuple[int, ...] = field(default=(), repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_lengths", tuple(sorted({len(w) for w in self.rules})))

    def __len__(self) -> int:
        return len(self.rules)

    def leading_words(self) -> list[Word]:
        return sorted(self.rules, key=word_key)

    def as_polys(self) -> list[NCPoly]:
        """Each rule as the monic polynomial ``lead - tail``."""
        out = []
        for lead in self.leading_words():
            tail = self.rules[lead]
            d = {lead: ONE}
            for w, c in tail.items():
                _add_into(d, w, -c)
            out.append(NCPoly._wrap(d))
        return out

    def check_alphabet(self, p: NCPoly) -> None:
        bad = p.generators() - self.alphabet
        if bad:
            names = ", ".join(gen_name(g) for g in sorted(bad))
            raise UnknownGeneratorError(f"generator(s) outside the alphabet: {names}")

    def is_normal_word(self, w: Word) -> bool:
        return _find_reducer(w, self.rules, self._lengths) is None

    def _nf_word(self, w: Word) -> dict:
        cache = self._cache
        if w in cache:
            return cache[w]
        rules, lengths = self.rules, self._lengths
        hits: dict[Word, tuple] = {}
        stack = [w]
        while stack:
            u = stack[-1]
            if u in cache:
                stack.pop()
                continue
            hit = hits.get(u)
            if hit is None:
                found = _find_reducer(u, rules, lengths)
                if found is None:
                    cache[u] = {u: ONE}
                    stack.pop()
                    continue
                s, L, tail = found
                hit = hits[u] = [u[:s] + m + u[s + L :] for m in tail], list(tail.values())
            children, coeffs = hit
            missing = [ch for ch in children if ch not in cache]
            if missing:
                stack.extend(missing)
                continue
            acc: dict[Word, Fraction] = {}
            for ch, d in zip(children, coeffs):
                for v, c in cache[ch].items():
                    _add_into(acc, v, d * c)
            cache[u] = acc
            del hits[u]
            stack.pop()
        return cache[w]

    def reduce_raw(self, terms: Mapping[Word, Fraction]) -> dict:
        acc: dict[Word, Fraction] = {}
        for w, c in terms.items():
            for v, d in self._nf_word(w).items():
                _add_into(acc, v, c * d)
        return acc

    def normal_form(self, p: NCPoly) -> NCPoly:
        self.check_alphabet(p)
        return NCPoly._wrap(self.reduce_raw(p.raw))

    def normal_words(self, degree: int, letters: Iterable[int] | None = None) -> list[Word]:
        """All normal words of exactly ``degree`` letters, in increasing order."""
        letters = sorted(self.alphabet if letters is None else letters)
        level: list[Word] = [EMPTY]
        for _ in range(degree):
            nxt = []
            for w in level:
                for g in letters:
                    v = w + (g,)
                    # w is normal, so only suffixes of v can match a lead
                    if not any(v[len(v) - L :] in self.rules for L in self._lengths if L <= len(v)):
                        nxt.append(v)
            level = nxt
        return sorted(level)


def _overlaps(a: Word, b: Word) -> Iterator[int]:
    """Lengths k of proper overlaps: suffix of ``a`` equals prefix of ``b``."""
    for k in range(1, min(len(a), len(b))):
        if a[-k:] == b[:k]:
            yield k


def complete(
    relations: Iterable[NCPoly],
    max_deg: int | None = None,
    alphabet: Iterable[int] | None = None,
) -> RewriteSystem:
    """Noncommutative Buchberger completion, truncated at ``max_deg``.

    Overlaps are processed FIFO by ``(overlap degree, creation order)``.
    Relations that normalize to zero are dropped with a warning.
    """
    rels = [NCPoly(p.raw) if not isinstance(p, NCPoly) else p for p in relations]
    alpha = set(alphabet) if alphabet is not None else set()
    for p in rels:
        alpha |= p.generators()
    top = max((p.degree() for p in rels), default=0)
    if max_deg is None:
        max_deg = default_max_deg(rels)
    if max_deg < top:
        raise ValueError(f"max_deg={max_deg} below the relation degree {top}")
    homogeneous = all(p.is_homogeneous() for p in rels)

    rules: dict[Word, dict] = {}
    lengths: tuple[int, ...] = ()
    ids: dict[Word, int] = {}
    alive: dict[int, Word] = {}
    counter = itertools.count()
    queue: list = []
    truncated = False

    def refresh_lengths():
        nonlocal lengths
        lengths = tuple(sorted({len(w) for w in rules}))

    def push_pairs(rid: int, lead: Word):
        nonlocal truncated
        for oid, other in list(alive.items()):
            pairs = [(lead, rid, other, oid)]
            if oid != rid:
                pairs.append((other, oid, lead, rid))
            for a, ia, b, ib in pairs:
                for k in _overlaps(a, b):
                    deg = len(a) + len(b) - k
                    if deg > max_deg:
                        truncated = True
                        continue
                    heapq.heappush(queue, (deg, next(counter), ia, ib, k))

    def insert(p: dict) -> None:
        pending = [p]
        while pending:
            r = _reduce(pending.pop(0), rules, lengths)
            if not r:
                continue
            lead = _lead(r)
            lc = r[lead]
            tail = {w: -c / lc for w, c in r.items() if w != lead}
            # drop rules whose lead is now reducible; re-add them afterwards
            for old in [w for w in rules if _contains(w, lead)]:
                old_tail = rules.pop(old)
                del alive[ids.pop(old)]
                poly = {old: ONE}
                for w, c in old_tail.items():
                    _add_into(poly, w, -c)
                pending.append(poly)
            rid = next(counter)
            rules[lead] = tail
            ids[lead] = rid
            alive[rid] = lead
            refresh_lengths()
            push_pairs(rid, lead)

    for p in rels:
        if not p:
            log.warning("dropping zero relation")
            continue
        before = len(rules)
        insert(dict(p.raw))
        if len(rules) == before and not _reduce(p.raw, rules, lengths):
            log.debug("relation %s is redundant", p)

    while queue:
        deg, _, ia, ib, k = heapq.heappop(queue)
        a, b = alive.get(ia), alive.get(ib)
        if a is None or b is None:
            continue
        # S = (a - tail_a) * b[k:] - a[:-k] * (b - tail_b) ; leads cancel
        s: dict[Word, Fraction] = {}
        suffix, prefix = b[k:], a[: len(a) - k]
        for w, c in rules[a].items():
            _add_into(s, w + suffix, c)
        for w, c in rules[b].items():
            _add_into(s, prefix + w, -c)
        if s:
            insert(s)

    # inter-reduce tails
    final: dict[Word, dict] = {}
    for lead in sorted(rules, key=word_key):
        final[lead] = _reduce(rules[lead], rules, lengths)
    return RewriteSystem(
        rules=final,
        alphabet=frozenset(alpha),
        max_deg=max_deg,
        converged=not truncated,
        homogeneous=homogeneous,
    )


def _contains(big: Word, small: Word) -> bool:
    n, m = len(big), len(small)
    if m > n:
        return False
    return any(big[i : i + m] == small for i in range(n - m + 1))


def default_max_deg(relations: Iterable[NCPoly]) -> int:
    return 2 * max((p.degree() for p in relations), default=0) + 2


def normal_form(p: NCPoly, rs: RewriteSystem) -> NCPoly:
    return rs.normal_form(p)


def ideal_contains(p: NCPoly, rs: RewriteSystem) -> Verdict:
    """``YES`` iff the normal form vanishes; ``NO`` only under a converged system."""
    if not rs.normal_form(p):
        return Verdict.YES
    return Verdict.NO if rs.converged else Verdict.UNKNOWN


def ideal_equals(r1: list[NCPoly], r2: list[NCPoly], max_deg: int | None = None) -> Verdict:
    """Compare two ideals by mutual membership of their generators."""
    if max_deg is None:
        max_deg = default_max_deg(list(r1) + list(r2))
    alpha = set()
    for p in list(r1) + list(r2):
        alpha |= p.generators()
    s1 = complete(r1, max_deg, alpha)
    s2 = complete(r2, max_deg, alpha)
    verdicts = [ideal_contains(p, s1) for p in r2] + [ideal_contains(p, s2) for p in r1]
    return Verdict.combine(verdicts)
