"""Decorated cospans of finite sets, with circuit and vector-field decorations."""
from .circuits import CIRCUIT, CircuitBackend, LGraph, csv_export, dot_export
from .cospan import (
    Cospan,
    CospanMap,
    GlobularIso,
    associator,
    braiding_cell,
    hcompose,
    identity_cospan,
    interchanger,
    left_unitor,
    right_unitor,
    tensor,
)
from .decoration import (
    DecoratedCospan,
    DecoratedMap,
    DecorationBackend,
    check_decorated_map,
    dcompose,
    didentity,
    dtensor,
)
from .dynam import VECTFIELD, Polynomial, PolyVectorField, VectFieldBackend
from .errors import CospanError
from .finset import FinFunction, FinSet, pushout

__version__ = "0.1.0"

BACKENDS = {CIRCUIT.name: CIRCUIT, VECTFIELD.name: VECTFIELD}

__all__ = [
    "BACKENDS",
    "CIRCUIT",
    "CircuitBackend",
    "Cospan",
    "CospanError",
    "CospanMap",
    "DecoratedCospan",
    "DecoratedMap",
    "DecorationBackend",
    "FinFunction",
    "FinSet",
    "GlobularIso",
    "LGraph",
    "PolyVectorField",
    "Polynomial",
    "VECTFIELD",
    "VectFieldBackend",
    "associator",
    "braiding_cell",
    "check_decorated_map",
    "csv_export",
    "dcompose",
    "didentity",
    "dot_export",
    "dtensor",
    "hcompose",
    "identity_cospan",
    "interchanger",
    "left_unitor",
    "pushout",
    "right_unitor",
    "tensor",
]
