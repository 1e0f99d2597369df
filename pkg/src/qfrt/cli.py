"""``qfrt`` command line.

Exit codes: 0 every requested property verified, 1 a property refuted,
2 inconclusive at the degree bound, 64 input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Callable

from . import io
from .bialgebra import (
    CheckReport,
    check_bi_ideal,
    check_colinear,
    graded_universal,
    universal_bialgebra,
    verdict_word,
)
from .dvl import (
    BilinearForm,
    SingularFormError,
    dvl_antipode_check,
    dvl_presentation,
    dvl_redundancy_check,
    hev_check,
    hev_presentation,
)
from .envelope import envelope_report
from .frt import Braiding, NotABraidingError, SingularBraidingError, check_braid, check_cqt3, cqt_form, frt_presentation
from .ncalg import NCPoly, Verdict, ideal_equals
from .wgf import (
    WGFError,
    build_wgf,
    check_minor_counit,
    check_minors_roundtrip,
    check_omega,
    j_form_check,
    lagrange_check,
    quantum_determinant,
)

EXIT = {Verdict.YES: 0, Verdict.NO: 1, Verdict.UNKNOWN: 2}
EXIT_INPUT = 64


class Report:
    """Ordered list of named results; only ``required`` ones set the exit code."""

    def __init__(self, command: str, max_deg: int | None):
        self.command = command
        self.max_deg = max_deg
        self.checks: list[tuple[str, Verdict, bool]] = []
        self.data: dict[str, Any] = {}

    def check(self, name: str, verdict: Verdict, required: bool = True) -> None:
        self.checks.append((name, verdict, required))

    def add_report(self, rep: CheckReport, required: bool = True) -> None:
        self.check(rep.name, rep.verdict, required)
        self.data.setdefault("reports", []).append(rep.to_json())

    @property
    def verdict(self) -> Verdict:
        return Verdict.combine(v for _, v, req in self.checks if req)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"command": self.command, "verdict": verdict_word(self.verdict)}
        out["max_deg"] = self.max_deg if self.max_deg is not None else "default"
        out["checks"] = [
            {"name": n, "verdict": verdict_word(v), **({} if req else {"required": False})}
            for n, v, req in self.checks
        ]
        out.update(self.data)
        return out

    def to_text(self) -> str:
        lines = [f"qfrt {self.command}: {verdict_word(self.verdict)}"]
        for n, v, req in self.checks:
            lines.append(f"  {n}: {verdict_word(v)}" + ("" if req else " (informational)"))
        for key, val in self.data.items():
            if key in ("reports", "stages"):
                continue
            if key == "presentation":
                lines.append("")
                lines.append(val.rstrip("\n"))
                continue
            lines.append(f"  {key}: {val}")
        return "\n".join(lines) + "\n"


def _expect(rep: Report, P, args) -> None:
    if not args.expect:
        return
    doc = io.load(args.expect)
    if doc.kind != "presentation":
        raise io.InputError(args.expect, "expected a presentation document")
    if doc.dim != P.dim:
        raise io.InputError(args.expect, "dimension differs from the computed presentation")
    rep.check("ideal equals expected", ideal_equals(list(P.relations), list(doc.payload.relations), args.max_deg))


def _braiding(doc: io.Document) -> Braiding:
    if doc.kind != "braiding":
        raise io.InputError("$.kind", "expected a braiding document")
    return Braiding(doc.payload)


def cmd_check_braid(doc: io.Document, args, rep: Report) -> None:
    if doc.kind != "braiding":
        raise io.InputError("$.kind", "expected a braiding document")
    ok = check_braid(doc.payload)
    rep.check("braid equation", Verdict.YES if ok else Verdict.NO)
    if ok:
        rep.data["invertible"] = Braiding(doc.payload).invertible


def cmd_universal(doc: io.Document, args, rep: Report) -> None:
    if doc.kind != "map_family":
        raise io.InputError("$.kind", "expected a map_family or quiver document")
    maps = doc.payload["maps"]
    degrees = doc.payload["degrees"]
    if degrees is not None:
        res = graded_universal(maps, degrees)
        P = res.presentation
        rep.data["graded"] = res.graded
    else:
        P = universal_bialgebra(maps, dim=doc.dim)
    rep.add_report(check_bi_ideal(P, args.max_deg))
    for f in doc.payload["test_maps"]:
        rep.check(f"colinear {f.name or 'map'}", check_colinear(f, P, args.max_deg))
    _expect(rep, P, args)
    rep.data["converged"] = P.system(args.max_deg).converged
    rep.data["presentation"] = io.serialize_presentation(P)


def cmd_frt(doc: io.Document, args, rep: Report) -> None:
    c = _braiding(doc)
    P = frt_presentation(c)
    rep.add_report(check_bi_ideal(P, args.max_deg))
    if c.invertible:
        form = cqt_form(c)
        rep.check("cqt inverse identity", Verdict.YES if form.inverse_identity_holds() else Verdict.NO)
        rep.add_report(check_cqt3(P, form, args.max_deg))
    else:
        rep.data["cqt"] = "braiding not invertible; cqt inverse undefined"
    _expect(rep, P, args)
    rep.data["converged"] = P.system(args.max_deg).converged
    rep.data["presentation"] = io.serialize_presentation(P)


def _form(doc: io.Document) -> BilinearForm:
    if doc.kind != "bilinear_form":
        raise io.InputError("$.kind", "expected a bilinear_form document")
    return BilinearForm.from_rows(doc.payload)


def cmd_dvl(doc: io.Document, args, rep: Report) -> None:
    B = _form(doc)
    P = dvl_presentation(B, with_inverse_family=args.inverse_family)
    rep.add_report(check_bi_ideal(P, args.max_deg))
    rep.add_report(dvl_redundancy_check(B, args.max_deg, P))
    for r in dvl_antipode_check(B, args.max_deg, P):
        rep.add_report(r)
    _expect(rep, P, args)
    rep.data["converged"] = P.system(args.max_deg).converged
    rep.data["presentation"] = io.serialize_presentation(P)


def cmd_hev(doc: io.Document, args, rep: Report) -> None:
    phi = doc.options.get("phi")
    if doc.kind == "bilinear_form" and phi is None:
        phi = doc.payload
    if args.phi:
        pdoc = io.load(args.phi)
        if pdoc.kind != "bilinear_form":
            raise io.InputError(args.phi, "expected a bilinear_form document holding Phi")
        phi = pdoc.payload
    if phi is not None and len(phi) != doc.dim:
        raise io.InputError("phi", f"Phi must be {doc.dim}x{doc.dim}")
    h = hev_presentation(doc.dim, phi)
    stable, *hopf = hev_check(h, args.max_deg)
    rep.add_report(stable)
    for r in hopf:
        rep.add_report(r, required=False)
    _expect(rep, h.presentation, args)
    rep.data["presentation"] = io.serialize_presentation(h.presentation)


def cmd_wgf(doc: io.Document, args, rep: Report) -> None:
    if doc.kind != "pipeline":
        raise io.InputError("$.kind", "expected a pipeline document (braiding + algebra)")
    c = Braiding(doc.payload["braiding"])
    B = io.graded_algebra_of(io.Document("graded_algebra", doc.dim, doc.payload["algebra"]))
    try:
        w = build_wgf(B, c, a_max_deg=args.max_deg)
    except WGFError as e:
        rep.check(f"{e.axiom}", Verdict.NO)
        rep.data["error"] = str(e)
        return
    rep.check("WGF1-WGF4", Verdict.YES)
    rep.check("omega basis", Verdict.YES if check_omega(w) else Verdict.NO)
    rep.check("minors", Verdict.YES if check_minors_roundtrip(w) and check_minor_counit(w) else Verdict.NO)
    D, gl = quantum_determinant(w, args.max_deg)
    rep.check("D grouplike", gl)
    rep.add_report(lagrange_check(w, max_deg=args.max_deg))
    if c.invertible:
        rep.add_report(j_form_check(w, cqt_form(c), max_deg=args.max_deg), required=False)
    rep.data.update(
        top=w.top,
        dims=list(w.dims),
        volume=str(NCPoly.word(w.volume)),
        D=str(D),
        omega=[str(o) for o in w.omega],
        T=[[str(w.T(i, j)) for j in range(1, w.dim + 1)] for i in range(1, w.dim + 1)],
    )


def cmd_envelope(doc: io.Document, args, rep: Report) -> None:
    if doc.kind != "pipeline":
        raise io.InputError("$.kind", "expected a pipeline document (braiding + algebra)")
    B = io.graded_algebra_of(io.Document("graded_algebra", doc.dim, doc.payload["algebra"]))
    er = envelope_report(doc.payload["braiding"], B, args.max_deg, doc.payload["antipode_override"])
    for s in er.stages:
        rep.check(s.name, s.verdict, s.required)
    if er.halted_at:
        rep.data["halted_at"] = er.halted_at
    rep.data["stages"] = [s.to_json() for s in er.stages]
    try:
        rep.data["D"] = er.stage("determinant").detail["D"]
    except KeyError:
        pass


COMMANDS: dict[str, Callable] = {
    "check-braid": cmd_check_braid,
    "universal": cmd_universal,
    "frt": cmd_frt,
    "dvl": cmd_dvl,
    "hev": cmd_hev,
    "wgf": cmd_wgf,
    "envelope": cmd_envelope,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qfrt", description="Exact FRT / universal bialgebra toolkit over Q.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("input", help="JSON input document")
    p.add_argument("--max-deg", type=int, default=None, help="degree bound for completions")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.add_argument("--expect", metavar="FILE", help="presentation document to compare ideals with")
    p.add_argument("--phi", metavar="FILE", help="bilinear_form document holding Phi (hev)")
    p.add_argument("--inverse-family", action="store_true",
                   help="dvl: also impose the inverse-form relations")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else 0
    try:
        doc = io.load(args.input)
        if args.max_deg is None:
            args.max_deg = doc.options.get("max_deg")
        if args.max_deg is not None and args.max_deg < 1:
            raise io.InputError("--max-deg", "must be positive")
        rep = Report(args.command, args.max_deg)
        COMMANDS[args.command](doc, args, rep)
    except io.InputError as e:
        print(f"qfrt: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (NotABraidingError, SingularBraidingError, SingularFormError, ValueError) as e:
        print(f"qfrt: rejected input: {e}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(io.dumps(rep.to_json()) if args.json else rep.to_text())
    return EXIT[rep.verdict]


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
