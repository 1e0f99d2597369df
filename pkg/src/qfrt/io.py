"""JSON input documents and canonical presentation text."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .bialgebra import MapTensor, Presentation
from .ncalg import (
    DINV,
    NCPoly,
    UnknownGeneratorError,
    gen_name,
    is_t,
    is_x,
    parse_gen,
    parse_poly,
    parse_scalar,
    scalar_str,
    t_indices,
    word_key,
    x,
    x_index,
)
from .wgf import GradedAlgebra

KINDS = ("braiding", "map_family", "bilinear_form", "graded_algebra", "quiver", "pipeline", "presentation")


class InputError(ValueError):
    """Schema violation; ``path`` locates the offending value."""

    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


@dataclass(frozen=True)
class Document:
    kind: str
    dim: int
    payload: Any
    options: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# field helpers


def _get(obj: dict, key: str, path: str, required: bool = True, default: Any = None):
    if not isinstance(obj, dict):
        raise InputError(path, "expected an object")
    if key not in obj:
        if required:
            raise InputError(f"{path}.{key}", "missing")
        return default
    return obj[key]


def _int(v: Any, path: str, lo: int | None = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(path, "expected an integer")
    if lo is not None and v < lo:
        raise InputError(path, f"must be >= {lo}")
    return v


def _scalar(v: Any, path: str) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise InputError(path, "scalars must be strings like \"p/q\" or integers")
    try:
        return parse_scalar(v)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(path, str(e)) from None


def _list(v: Any, path: str) -> list:
    if not isinstance(v, list):
        raise InputError(path, "expected a list")
    return v


def _index(v: Any, n: int, length: int | None, path: str) -> tuple[int, ...]:
    v = _list(v, path)
    if length is not None and len(v) != length:
        raise InputError(path, f"expected a multi-index of length {length}")
    out = []
    for k, e in enumerate(v):
        e = _int(e, f"{path}[{k}]")
        if not 1 <= e <= n:
            raise InputError(f"{path}[{k}]", f"index {e} out of range 1..{n}")
        out.append(e)
    return tuple(out)


def _matrix(v: Any, path: str, n: int | None = None) -> list[list[Fraction]]:
    rows = _list(v, path)
    if n is not None and len(rows) != n:
        raise InputError(path, f"expected {n} rows")
    out = []
    for i, r in enumerate(rows):
        r = _list(r, f"{path}[{i}]")
        if len(r) != len(rows):
            raise InputError(f"{path}[{i}]", "matrix must be square")
        out.append([_scalar(e, f"{path}[{i}][{j}]") for j, e in enumerate(r)])
    return out


def _entries(v: Any, n: int, a: int, b: int, path: str) -> dict:
    out: dict = {}
    for k, e in enumerate(_list(v, path)):
        p = f"{path}[{k}]"
        I = _index(_get(e, "in", p), n, a, f"{p}.in")
        J = _index(_get(e, "out", p), n, b, f"{p}.out")
        c = _scalar(_get(e, "coeff", p), f"{p}.coeff")
        out[(I, J)] = out.get((I, J), Fraction(0)) + c
    return out


def _poly(v: Any, path: str) -> NCPoly:
    if isinstance(v, str):
        try:
            return parse_poly(v)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(path, str(e)) from None
    terms: dict = {}
    for k, e in enumerate(_list(v, path)):
        p = f"{path}[{k}]"
        w = tuple(x(i) for i in _index(_get(e, "word", p), 10**4, None, f"{p}.word"))
        c = _scalar(_get(e, "coeff", p), f"{p}.coeff")
        terms[w] = terms.get(w, Fraction(0)) + c
    return NCPoly(terms)


# ---------------------------------------------------------------------------
# parsing


def parse_document(data: Any, path: str = "$") -> Document:
    if not isinstance(data, dict):
        raise InputError(path, "expected an object")
    kind = _get(data, "kind", path)
    if kind not in KINDS:
        raise InputError(f"{path}.kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    options = _get(data, "options", path, required=False, default={})
    if not isinstance(options, dict):
        raise InputError(f"{path}.options", "expected an object")
    opts = {}
    if "max_deg" in options:
        opts["max_deg"] = _int(options["max_deg"], f"{path}.options.max_deg", 1)
    if "phi" in options:
        opts["phi"] = _matrix(options["phi"], f"{path}.options.phi")
    if "order" in options and options["order"] != "deglex":
        raise InputError(f"{path}.options.order", "only the degree-lexicographic order is supported")

    if kind == "pipeline":
        c = parse_document(_get(data, "braiding", path), f"{path}.braiding")
        b = parse_document(_get(data, "algebra", path), f"{path}.algebra")
        if c.kind != "braiding" or b.kind != "graded_algebra":
            raise InputError(path, "pipeline needs a braiding and a graded_algebra")
        if c.dim != b.dim:
            raise InputError(path, "braiding and algebra dimensions differ")
        override = _get(data, "antipode_override", path, required=False)
        ov = None
        if override is not None:
            if not isinstance(override, dict):
                raise InputError(f"{path}.antipode_override", "expected an object")
            ov = {}
            for k, v in override.items():
                p = f"{path}.antipode_override.{k}"
                try:
                    g = parse_gen(k)
                except (ValueError, UnknownGeneratorError) as e:
                    raise InputError(p, str(e)) from None
                ov[g] = _poly(v, p)
        return Document(kind, c.dim, {"braiding": c.payload, "algebra": b.payload, "antipode_override": ov}, opts)

    if kind == "quiver":
        nv = _int(_get(data, "vertices", path), f"{path}.vertices", 1)
        arrows = []
        for k, a in enumerate(_list(_get(data, "arrows", path), f"{path}.arrows")):
            arrows.append(_index(a, nv, 2, f"{path}.arrows[{k}]"))
        maps = _get(data, "maps", path, required=False, default=["m"])
        for k, m in enumerate(_list(maps, f"{path}.maps")):
            if m not in ("m", "u"):
                raise InputError(f"{path}.maps[{k}]", "expected \"m\" or \"u\"")
        graded = _get(data, "graded", path, required=False, default=True)
        try:
            family, degrees = quiver_family(nv, arrows, tuple(maps))
        except ValueError as e:
            raise InputError(f"{path}.arrows", str(e)) from None
        payload = {"maps": family, "degrees": degrees if graded else None, "test_maps": []}
        return Document("map_family", len(degrees), payload, opts)

    dim = _int(_get(data, "dim", path), f"{path}.dim", 0)

    if kind == "braiding":
        ent = _entries(_get(data, "entries", path), dim, 2, 2, f"{path}.entries")
        return Document(kind, dim, MapTensor(dim, 2, 2, ent, name="c"), opts)

    if kind == "map_family":
        def maps_at(key: str) -> list[MapTensor]:
            out = []
            for k, m in enumerate(_list(_get(data, key, path, required=False, default=[]), f"{path}.{key}")):
                p = f"{path}.{key}[{k}]"
                a = _int(_get(m, "in_power", p), f"{p}.in_power", 0)
                b = _int(_get(m, "out_power", p), f"{p}.out_power", 0)
                ent = _entries(_get(m, "entries", p), dim, a, b, f"{p}.entries")
                out.append(MapTensor(dim, a, b, ent, name=str(_get(m, "name", p, required=False, default=""))))
            return out

        degrees = _get(data, "degrees", path, required=False)
        if degrees is not None:
            degrees = [_int(d, f"{path}.degrees[{k}]", 0) for k, d in enumerate(_list(degrees, f"{path}.degrees"))]
            if len(degrees) != dim:
                raise InputError(f"{path}.degrees", f"expected {dim} degrees")
        payload = {"maps": maps_at("maps"), "degrees": degrees, "test_maps": maps_at("test_maps")}
        return Document(kind, dim, payload, opts)

    if kind == "bilinear_form":
        return Document(kind, dim, _matrix(_get(data, "matrix", path), f"{path}.matrix", dim), opts)

    if kind == "graded_algebra":
        rels = []
        for k, r in enumerate(_list(_get(data, "relations", path), f"{path}.relations")):
            p = _poly(r, f"{path}.relations[{k}]")
            for g in p.generators():
                if not is_x(g) or x_index(g) > dim:
                    raise InputError(f"{path}.relations[{k}]", f"generator {gen_name(g)} outside x[1..{dim}]")
            if not p.is_zero():
                rels.append(p)
        return Document(kind, dim, rels, opts)

    # presentation
    rels = []
    for k, r in enumerate(_list(_get(data, "relations", path), f"{path}.relations")):
        p = _poly(r, f"{path}.relations[{k}]")
        _check_t_alphabet(p, dim, f"{path}.relations[{k}]")
        rels.append(p)
    extra = (DINV,) if any(DINV in p.generators() for p in rels) else ()
    return Document(kind, dim, Presentation(dim, tuple(rels), extra, name=str(data.get("name", ""))), opts)


def _check_t_alphabet(p: NCPoly, dim: int, path: str) -> None:
    for g in p.generators():
        if g == DINV:
            continue
        if not is_t(g) or max(t_indices(g)) > dim:
            raise InputError(path, f"generator {gen_name(g)} outside t[1..{dim},1..{dim}]")


def loads(text: str | bytes) -> Document:
    try:
        data = json.loads(text)
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise InputError("$", f"malformed JSON: {e}") from None
    return parse_document(data)


def load(path: str) -> Document:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise InputError(path, str(e)) from None
    return loads(raw)


def graded_algebra_of(doc: Document) -> GradedAlgebra:
    return GradedAlgebra(doc.dim, tuple(doc.payload))


# ---------------------------------------------------------------------------
# path algebras


def quiver_paths(nv: int, arrows: list[tuple[int, int]]) -> list[tuple[int, tuple[int, ...]]]:
    """All paths as ``(start vertex, arrow indices)``; vertices are empty paths.

    Raises on oriented cycles (the path algebra would be infinite)."""
    out: list[tuple[int, tuple[int, ...]]] = [(v, ()) for v in range(1, nv + 1)]
    frontier = [(s, (k,)) for k, (s, _) in enumerate(arrows)]
    while frontier:
        out.extend(frontier)
        if any(len(p) > len(arrows) for _, p in frontier):
            raise ValueError("quiver has an oriented cycle; the path algebra is infinite")
        nxt = []
        for s, p in frontier:
            end = arrows[p[-1]][1]
            nxt.extend((s, p + (k,)) for k, (s2, _) in enumerate(arrows) if s2 == end)
        frontier = nxt
    return out


def quiver_family(nv: int, arrows: list[tuple[int, int]], maps: Iterable[str] = ("m",)):
    """Structure maps of ``kQ`` on the basis of paths (vertices first, then by
    length). A path ``p`` from ``s`` to ``e`` satisfies ``x_e x_p = x_p = x_p x_s``;
    longer paths compose as ``x_q x_p`` = ``p`` followed by ``q``."""
    paths = quiver_paths(nv, arrows)
    index = {p: k + 1 for k, p in enumerate(paths)}
    n = len(paths)

    def src(p):
        return p[0]

    def tgt(p):
        s, arr = p
        return arrows[arr[-1]][1] if arr else s

    def mult(q, p):  # x_q * x_p: first p, then q
        if tgt(p) != src(q):
            return None
        if not p[1]:
            return q
        if not q[1]:
            return p
        return (p[0], p[1] + q[1])

    family = []
    if "m" in maps:
        ent = {}
        for q in paths:
            for p in paths:
                r = mult(q, p)
                if r is not None:
                    ent[((index[q], index[p]), (index[r],))] = Fraction(1)
        family.append(MapTensor(n, 2, 1, ent, name="m"))
    if "u" in maps:
        family.append(MapTensor(n, 0, 1, {((), (index[(v, ())],)): Fraction(1) for v in range(1, nv + 1)}, name="u"))
    degrees = [len(p[1]) for p in paths]
    return family, degrees


# ---------------------------------------------------------------------------
# canonical text


def canonical_relations(relations: Iterable[NCPoly]) -> list[NCPoly]:
    """Monic, deduplicated, sorted by (degree, leading word)."""
    seen = {}
    for r in relations:
        if r.is_zero():
            continue
        m = r.monic()
        seen[m] = None
    return sorted(seen, key=lambda p: word_key(p.leading_word()) + (str(p),))


def serialize_presentation(P: Presentation) -> str:
    rels = canonical_relations(P.relations)
    gens = " ".join(gen_name(g) for g in P.generators())
    lines = [
        "# presentation" + (f" {P.name}" if P.name else ""),
        f"# dim {P.dim}",
        f"# generators {gens}",
        f"# relations {len(rels)}",
    ]
    lines += [str(r) for r in rels]
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    dim = None
    name = ""
    rels = []
    for k, line in enumerate(text.splitlines()):
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            body = s[1:].strip()
            if body.startswith("dim "):
                dim = int(body[4:])
            elif body.startswith("presentation"):
                name = body[len("presentation"):].strip()
            continue
        try:
            rels.append(parse_poly(s))
        except ValueError as e:
            raise InputError(f"line {k + 1}", str(e)) from None
    if dim is None:
        raise InputError("header", "missing '# dim' line")
    extra = (DINV,) if any(DINV in p.generators() for p in rels) else ()
    for k, p in enumerate(rels):
        _check_t_alphabet(p, dim, f"relation {k}")
    return Presentation(dim, tuple(rels), extra, name=name)


def presentation_json(P: Presentation) -> dict:
    return {"dim": P.dim, "relations": [str(r) for r in canonical_relations(P.relations)]}


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# writers (used to build the fixture corpus)


def braiding_json(c: MapTensor) -> dict:
    return {
        "kind": "braiding",
        "dim": c.dim,
        "entries": [
            {"in": list(I), "out": list(J), "coeff": scalar_str(v)} for (I, J), v in sorted(c.entries.items())
        ],
    }


def map_json(f: MapTensor) -> dict:
    return {
        "name": f.name,
        "in_power": f.in_power,
        "out_power": f.out_power,
        "entries": [
            {"in": list(I), "out": list(J), "coeff": scalar_str(v)} for (I, J), v in sorted(f.entries.items())
        ],
    }


def graded_algebra_json(B: GradedAlgebra) -> dict:
    return {"kind": "graded_algebra", "dim": B.dim, "relations": [str(r) for r in B.relations]}


def form_json(rows) -> dict:
    return {"kind": "bilinear_form", "dim": len(rows), "matrix": [[scalar_str(Fraction(v)) for v in r] for r in rows]}
