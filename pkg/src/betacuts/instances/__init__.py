from .generators import (BASES, PERTURBATIONS, ImageParams, LabsParams, base_image, blurred_image,
                         checkerboard_window_costs, gen_cycle_hypergraph, gen_image, gen_labs,
                         labs_energy, window_polynomial)
from .polynomial import (Instance, Polynomial, instance_from_profits, linearize, multiply,
                         parse_polynomial, write_polynomial)

__all__ = [
    "BASES", "PERTURBATIONS", "ImageParams", "Instance", "LabsParams", "Polynomial", "base_image",
    "blurred_image", "checkerboard_window_costs", "gen_cycle_hypergraph", "gen_image", "gen_labs",
    "instance_from_profits", "labs_energy", "linearize", "multiply", "parse_polynomial",
    "window_polynomial", "write_polynomial",
]
