from .model import BACKENDS, TOLERANCES, LpModel, LpSolution, LpTolerances, export_lp, solve
from .simplex import simplex_solve

__all__ = ["BACKENDS", "TOLERANCES", "LpModel", "LpSolution", "LpTolerances", "export_lp", "simplex_solve", "solve"]
