"""Cutting planes for binary polynomial optimization over the multilinear polytope."""
import numba

# the system TBB is older than numba supports; skip probing it
if numba.config.THREADING_LAYER == "default":
    numba.config.THREADING_LAYER = "omp"

from .hypergraph import Hypergraph, build_hypergraph, enumerate_triples, is_beta_cycle, is_cycle_hypergraph

__version__ = "0.1.0"

__all__ = ["Hypergraph", "build_hypergraph", "enumerate_triples", "is_beta_cycle", "is_cycle_hypergraph",
           "__version__"]
