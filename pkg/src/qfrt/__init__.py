"""Exact universal bialgebras, FRT bialgebras and their Hopf envelopes over Q."""

from __future__ import annotations

from .bialgebra import MapTensor, Presentation, universal_bialgebra
from .frt import Braiding, cqt_form, frt_presentation
from .ncalg import NCPoly, RewriteSystem, Verdict, complete, ideal_contains, ideal_equals, normal_form

__version__ = "0.1.0"

__all__ = [
    "Braiding",
    "MapTensor",
    "NCPoly",
    "Presentation",
    "RewriteSystem",
    "Verdict",
    "complete",
    "cqt_form",
    "frt_presentation",
    "ideal_contains",
    "ideal_equals",
    "normal_form",
    "universal_bialgebra",
]
