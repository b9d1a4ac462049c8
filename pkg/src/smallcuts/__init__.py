"""Compact representations of all sets of small value of a connectivity function."""

from .bisection import CardinalityQuery, minimum_bisection, solve
from .encoder import EncodingTriple, Representation, encode, enumerate_family, member
from .errors import BackendError, BudgetExceeded, ContractError, InputError, SmallCutsError
from .ground import GroundSet
from .interpolation import FStar, find_base, fstar
from .oracles import (
    ConnectivityFn,
    Gf2Matrix,
    Graph,
    check_axioms,
    cut_rank_oracle,
    edge_cut_oracle,
    matroid_connectivity_oracle,
    table_oracle,
    vertex_cut_oracle,
)
from .sfm import EXHAUSTIVE, MIN_NORM_POINT, SfmBackend

__all__ = [
    "BackendError",
    "BudgetExceeded",
    "CardinalityQuery",
    "ConnectivityFn",
    "ContractError",
    "EXHAUSTIVE",
    "EncodingTriple",
    "FStar",
    "Gf2Matrix",
    "Graph",
    "GroundSet",
    "InputError",
    "MIN_NORM_POINT",
    "Representation",
    "SfmBackend",
    "SmallCutsError",
    "check_axioms",
    "cut_rank_oracle",
    "edge_cut_oracle",
    "encode",
    "enumerate_family",
    "find_base",
    "fstar",
    "matroid_connectivity_oracle",
    "member",
    "minimum_bisection",
    "solve",
    "table_oracle",
    "vertex_cut_oracle",
]
