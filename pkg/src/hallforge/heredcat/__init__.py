"""Finitary hereditary categories of nilpotent quiver representations over F_q."""

from hallforge.heredcat.base import CategoryProvider, CrossTerm, IsoClass
from hallforge.heredcat.bruteforce import QuiverProvider
from hallforge.heredcat.jordan import JordanProvider
from hallforge.heredcat.presets import PRESETS, load_quiver, make_provider, preset
from hallforge.heredcat.quiver import K0Class, QuiverSpec, Rep

__all__ = [
    "CategoryProvider",
    "CrossTerm",
    "IsoClass",
    "JordanProvider",
    "K0Class",
    "PRESETS",
    "QuiverProvider",
    "QuiverSpec",
    "Rep",
    "load_quiver",
    "make_provider",
    "preset",
]
