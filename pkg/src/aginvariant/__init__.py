"""Avella-Alaminos--Geiss invariants of gentle algebras from bound quivers
and from (m+2)-angulations of marked surfaces."""

import logging

from .quiver import AGFunction, Arrow, BoundQuiver, parse_quiver, serialize_quiver
from .angulation import Angulation, parse_angulation, serialize_angulation
from .construct import build_quiver, build_quiver_partial, inflate
from .walk import ag_invariant_direct
from .bridging import ag_invariant_formula, remove_boundary_bridges

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    "AGFunction",
    "Angulation",
    "Arrow",
    "BoundQuiver",
    "ag_invariant_direct",
    "ag_invariant_formula",
    "build_quiver",
    "build_quiver_partial",
    "inflate",
    "parse_angulation",
    "parse_quiver",
    "remove_boundary_bridges",
    "serialize_angulation",
    "serialize_quiver",
]
