from __future__ import annotations

import importlib.util
import json
import pathlib

import pytest

from qfrt import io
from qfrt.bialgebra import Presentation
from qfrt.cli import main
from qfrt.frt import frt_presentation, minus_flip
from qfrt.ncalg import parse_poly

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def fx(name: str) -> pathlib.Path:
    return FIX / f"{name}.json"


@pytest.mark.parametrize(
    "argv, code",
    [
        (("check-braid", fx("minus_tau_2")), 0),
        (("check-braid", fx("minus_tau_3")), 0),
        (("check-braid", fx("perturbed_identity")), 1),
        (("universal", fx("dual_numbers"), "--expect", fx("dual_numbers_expected")), 0),
        (("universal", fx("dual_numbers_trace")), 1),
        (("universal", fx("dual_numbers_graded")), 0),
        (("universal", fx("lie_2d"), "--expect", fx("lie_2d_expected")), 0),
        (("universal", fx("kronecker"), "--expect", fx("kronecker_expected")), 0),
        (("frt", fx("minus_tau_2"), "--expect", fx("commutators_2")), 0),
        (("frt", fx("perturbed_identity")), 64),
        (("dvl", fx("form_identity")), 1),
        (("dvl", fx("form_upper")), 2),
        (("dvl", fx("form_upper"), "--inverse-family"), 0),
        (("dvl", fx("form_symplectic"), "--inverse-family"), 0),
        (("dvl", fx("singular_form")), 64),
        (("hev", fx("phi_identity_1")), 0),
        (("hev", fx("phi_identity_2")), 0),
        (("wgf", fx("exterior_2")), 0),
        (("wgf", fx("quantum_plane_2")), 0),
        (("wgf", fx("wgf4_violation")), 1),
        (("envelope", fx("exterior_2")), 0),
        (("envelope", fx("sign_line")), 0),
        (("envelope", fx("diagonal_minus_one_2")), 0),
        (("envelope", fx("sign_line_sabotaged")), 1),
        (("envelope", fx("wgf4_violation")), 1),
    ],
    ids=lambda v: " ".join(pathlib.Path(a).stem for a in v) if isinstance(v, tuple) else str(v),
)
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code, out + err


def test_universal_reports_expected_ideal(capsys):
    _, out, _ = run(capsys, "universal", fx("dual_numbers"), "--expect", fx("dual_numbers_expected"))
    assert "ideal equals expected: pass" in out
    assert "converged: True" in out


def test_frt_prints_six_commutators(capsys):
    code, out, _ = run(capsys, "frt", fx("minus_tau_2"))
    assert code == 0
    text = out[out.index("# presentation"):]
    assert "# relations 6" in text
    body = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    assert len(body) == 6


def test_wgf_names_the_axiom(capsys):
    _, out, _ = run(capsys, "wgf", fx("wgf4_violation"))
    assert "WGF4: fail" in out
    assert "[[0, 0], [0, 1]]" in out


def test_envelope_shows_determinant(capsys):
    _, out, _ = run(capsys, "envelope", fx("exterior_2"), "--json")
    rep = json.loads(out)
    assert rep["verdict"] == "pass"
    assert parse_poly(rep["D"]) == parse_poly("t[1,1]*t[2,2] - t[1,2]*t[2,1]")
    assert rep["stages"][-1]["stage"] == "j-form"


def test_sabotage_report_names_right_axiom(capsys):
    _, out, _ = run(capsys, "envelope", fx("sign_line_sabotaged"), "--json")
    rep = json.loads(out)
    assert rep["halted_at"] == "antipode-verify"
    verify = rep["stages"][-1]
    assert {r["name"]: r["verdict"] for r in verify["reports"]}["right axiom"] == "fail"


def test_hev_axioms_are_informational(capsys):
    _, out, _ = run(capsys, "hev", fx("phi_identity_2"), "--json")
    rep = json.loads(out)
    assert rep["checks"][0] == {"name": "S-stable", "verdict": "pass"}
    assert all(c.get("required") is False for c in rep["checks"][1:])


def test_json_output_is_byte_identical(capsys):
    first = run(capsys, "envelope", fx("quantum_plane_2"), "--json")[1]
    second = run(capsys, "envelope", fx("quantum_plane_2"), "--json")[1]
    assert first == second


def write(tmp_path, doc) -> pathlib.Path:
    p = tmp_path / "doc.json"
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return p


@pytest.mark.parametrize(
    "doc, path",
    [
        ({"kind": "braiding", "dim": 2, "entries": [{"in": [1, 1], "out": [1, 1], "coeff": "1/0"}]},
         "$.entries[0].coeff"),
        ({"kind": "braiding", "dim": 2, "entries": [{"in": [1, 3], "out": [1, 1], "coeff": "1"}]},
         "$.entries[0].in"),
        ({"kind": "braiding", "dim": 2}, "$.entries"),
        ({"kind": "tensor", "dim": 2}, "$.kind"),
        ({"kind": "bilinear_form", "dim": 2, "matrix": [[1, 0]]}, "$.matrix"),
        ({"kind": "braiding", "dim": 1, "entries": [], "options": {"order": "lex"}}, "$.options.order"),
        ("{not json", "$"),
    ],
)
def test_schema_errors_name_the_path(capsys, tmp_path, doc, path):
    code, _, err = run(capsys, "check-braid", write(tmp_path, doc))
    assert code == 64
    assert f"input error: {path}" in err


def test_bad_invocations(capsys, tmp_path):
    assert run(capsys, "frobnicate", fx("minus_tau_2"))[0] == 64
    assert run(capsys, "check-braid", tmp_path / "missing.json")[0] == 64
    assert run(capsys, "check-braid", fx("minus_tau_2"), "--max-deg", "0")[0] == 64
    assert run(capsys, "dvl", fx("minus_tau_2"))[0] == 64


def test_max_deg_option_is_used(capsys, tmp_path):
    doc = json.loads(fx("dual_numbers").read_text())
    doc["options"] = {"max_deg": 5}
    _, out, _ = run(capsys, "universal", write(tmp_path, doc), "--json")
    assert json.loads(out)["max_deg"] == 5


def test_serialization_header_only():
    text = io.serialize_presentation(Presentation(1, (), name="free"))
    assert text == "# presentation free\n# dim 1\n# generators t[1,1]\n# relations 0\n"


def test_serialization_round_trip_is_idempotent():
    P = frt_presentation(minus_flip(2))
    text = io.serialize_presentation(P)
    assert io.serialize_presentation(io.parse_presentation(text)) == text
    assert text.count("\n") == 4 + 6


def test_canonical_relations_normalize():
    P = frt_presentation(minus_flip(2))
    doubled = Presentation(2, tuple(r * 3 for r in P.relations) + P.relations)
    assert io.canonical_relations(doubled.relations) == io.canonical_relations(P.relations)


def test_shipped_corpus_matches_generator():
    spec = importlib.util.spec_from_file_location("make_fixtures", ROOT / "tools" / "make_fixtures.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    corpus = mod.corpus()
    assert sorted(corpus) == sorted(p.name for p in FIX.glob("*.json"))
    for name, doc in corpus.items():
        assert json.loads((FIX / name).read_text()) == doc, name
        io.load(str(FIX / name))
