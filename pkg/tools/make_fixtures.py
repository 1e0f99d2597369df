"""Regenerate the JSON corpus in ``fixtures/`` from ``qfrt.fixtures``.

Run from the repository root: ``python tools/make_fixtures.py``.
"""

from __future__ import annotations

import json
import pathlib

from qfrt import fixtures as fx
from qfrt import io
from qfrt.frt import minus_flip
from qfrt.ncalg import t, gen

ROOT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def presentation_doc(dim: int, rels, name: str) -> dict:
    return {"kind": "presentation", "name": name, "dim": dim, "relations": [str(r) for r in rels]}


def pipeline(c, B, **extra) -> dict:
    return {"kind": "pipeline", "braiding": io.braiding_json(c.tensor), "algebra": io.graded_algebra_json(B), **extra}


def corpus() -> dict[str, dict]:
    m, u = fx.dual_numbers()
    docs = {
        "dual_numbers.json": {
            "kind": "map_family",
            "dim": 2,
            "maps": [io.map_json(m), io.map_json(u)],
        },
        "dual_numbers_expected.json": presentation_doc(2, fx.dual_numbers_expected(), "k{c,d}/(c^2, cd+dc)"),
        "dual_numbers_trace.json": {
            "kind": "map_family",
            "dim": 2,
            "maps": [io.map_json(m), io.map_json(u)],
            "test_maps": [io.map_json(fx.dual_numbers_trace())],
        },
        "dual_numbers_graded.json": {
            "kind": "map_family",
            "dim": 2,
            "degrees": [0, 1],
            "maps": [io.map_json(m), io.map_json(u)],
        },
        "lie_2d.json": {"kind": "map_family", "dim": 2, "maps": [io.map_json(fx.lie_bracket())]},
        "lie_2d_expected.json": presentation_doc(2, fx.lie_expected(), "A(h)"),
        "kronecker.json": {"kind": "quiver", "vertices": 2, "arrows": [[1, 2], [1, 2]], "maps": ["m"], "graded": True},
        "kronecker_expected.json": presentation_doc(4, fx.kronecker_expected(), "A_gr(m)"),
        "minus_tau_2.json": io.braiding_json(minus_flip(2).tensor),
        "minus_tau_3.json": io.braiding_json(minus_flip(3).tensor),
        "perturbed_identity.json": io.braiding_json(fx.perturbed_identity()),
        "commutators_2.json": presentation_doc(
            2,
            [gen(a) * gen(b) - gen(b) * gen(a) for a in [t(1, 1), t(1, 2), t(2, 1), t(2, 2)]
             for b in [t(1, 1), t(1, 2), t(2, 1), t(2, 2)] if a < b],
            "O(M_2)",
        ),
        "exterior_2.json": pipeline(*fx.exterior(2)),
        "exterior_3.json": pipeline(*fx.exterior(3)),
        "sign_line.json": pipeline(*fx.sign_line()),
        "sign_line_sabotaged.json": pipeline(*fx.sign_line(), antipode_override={"t[1,1]": "t[1,1]"}),
        "diagonal_minus_one_2.json": pipeline(*fx.diagonal_minus_one()),
        "quantum_plane_2.json": pipeline(*fx.quantum_plane_exterior()),
        "wgf4_violation.json": pipeline(*fx.wgf4_violation()),
        "singular_form.json": io.form_json(fx.SINGULAR_FORM),
        "phi_identity_1.json": io.form_json([[1]]),
        "phi_identity_2.json": io.form_json([[1, 0], [0, 1]]),
    }
    for name, rows in fx.DVL_FORMS.items():
        docs[f"form_{name}.json"] = io.form_json(rows)
    return docs


def main() -> None:
    ROOT.mkdir(exist_ok=True)
    for name, doc in corpus().items():
        (ROOT / name).write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
