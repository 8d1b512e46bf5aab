"""Steiner Tree and Connected Dominating Set on undirected path graphs:
hardness gadgets, an exact diameter-2 solver and brute-force oracles."""

from __future__ import annotations

from .diam2 import SolveTrace, SteinerInstance, solve
from .errors import (
    ClassError,
    ContractError,
    InstanceError,
    IntegrityError,
    ParseError,
    RangeError,
    SizeError,
    WorkbenchError,
)
from .graph import Graph
from .oracle import Witness, cds_min, ds_min, dominating_clique_min, steiner_min, three_dm
from .report import VerificationReport
from .threedm import ThreeDMInstance
from .treemodel import TreeModel

__version__ = "0.1.0"

__all__ = [
    "ClassError",
    "ContractError",
    "Graph",
    "InstanceError",
    "IntegrityError",
    "ParseError",
    "RangeError",
    "SizeError",
    "SolveTrace",
    "SteinerInstance",
    "ThreeDMInstance",
    "TreeModel",
    "VerificationReport",
    "Witness",
    "WorkbenchError",
    "cds_min",
    "dominating_clique_min",
    "ds_min",
    "solve",
    "steiner_min",
    "three_dm",
]
