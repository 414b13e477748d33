"""Finite simplicial sets, twisted arrows, effective Burnside quasi-categories
and marbled fibrations, with checkable certificates for saturated classes."""

from .simplicial import ChainSSet, Simplex, SimplicialMap, SimplicialSet, VirtualSSet
from .suite import SELECTIONS, run_suite

__version__ = "0.1.0"

__all__ = ["ChainSSet", "SELECTIONS", "Simplex", "SimplicialMap", "SimplicialSet", "VirtualSSet",
           "run_suite"]
