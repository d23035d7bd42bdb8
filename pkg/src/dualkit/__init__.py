"""Finite Stone-Priestley duality workbench."""

from . import context, formats, poset, setfam, spectra, tail, ualg
from .context import IncidenceStructure, column_classes, galois_lattice, rows_family
from .errors import DualkitError
from .poset import Poset, build_poset
from .sets import SetFamily, Subset
from .setfam import generate_boolean, generate_bounded_lattice
from .spectra import prime_filters, ultrafilters, verify_duality
from .tail import birkhoff_iso, check_pps, free_boolean, tailalg, taillat
from .ualg import FiniteAlgebra, Operation, Relation, ValuedMatrix

__version__ = "0.1.0"

__all__ = [
    "context",
    "formats",
    "poset",
    "setfam",
    "spectra",
    "tail",
    "ualg",
    "IncidenceStructure",
    "column_classes",
    "galois_lattice",
    "rows_family",
    "DualkitError",
    "Poset",
    "build_poset",
    "SetFamily",
    "Subset",
    "generate_boolean",
    "generate_bounded_lattice",
    "prime_filters",
    "ultrafilters",
    "verify_duality",
    "birkhoff_iso",
    "check_pps",
    "free_boolean",
    "tailalg",
    "taillat",
    "FiniteAlgebra",
    "Operation",
    "Relation",
    "ValuedMatrix",
]
