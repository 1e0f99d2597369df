"""Every fixture presentation the suites sweep over, built once per session."""

from __future__ import annotations

import functools

from qfrt import fixtures as fx
from qfrt.bialgebra import Presentation, graded_universal, universal_bialgebra
from qfrt.dvl import BilinearForm, dvl_presentation, hev_presentation
from qfrt.envelope import localize
from qfrt.frt import cqt_form, frt_presentation
from qfrt.io import quiver_family
from qfrt.wgf import build_wgf

BRAIDED = {
    "sign_line": fx.sign_line,
    "diagonal_minus_one": fx.diagonal_minus_one,
    "exterior_2": lambda: fx.exterior(2),
    "exterior_3": lambda: fx.exterior(3),
    "quantum_plane": fx.quantum_plane_exterior,
}


def _localized(name: str) -> Presentation:
    c, B = BRAIDED[name]()
    P = frt_presentation(c)
    form = cqt_form(c)
    return localize(P, build_wgf(B, c), form).presentation


@functools.lru_cache(maxsize=None)
def presentations() -> dict[str, Presentation]:
    maps, degrees = quiver_family(*fx.KRONECKER)
    out = {
        "dual_numbers": universal_bialgebra(list(fx.dual_numbers())),
        "dual_numbers_graded": graded_universal(list(fx.dual_numbers()), [0, 1]).presentation,
        "lie_2d": universal_bialgebra([fx.lie_bracket()]),
        "kronecker": graded_universal(maps, degrees).presentation,
        "hev_1": hev_presentation(1).presentation,
    }
    for name, make in BRAIDED.items():
        out[f"frt_{name}"] = frt_presentation(make()[0])
    for name in ("sign_line", "exterior_2", "quantum_plane"):
        out[f"loc_{name}"] = _localized(name)
    for name, rows in fx.DVL_FORMS.items():
        out[f"dvl_{name}"] = dvl_presentation(BilinearForm.from_rows(rows))
        out[f"dvl_{name}_full"] = dvl_presentation(BilinearForm.from_rows(rows), with_inverse_family=True)
    return out


HOMOGENEOUS = ("frt_diagonal_minus_one", "frt_exterior_2", "frt_quantum_plane")
