"""Exact counts, enclosures and determinant-method machinery for consecutive k-free integers."""

from .constants import Enclosure, dirichlet_partial, euler_product_ck, zeta_enclosure
from .dioph import Box, Quadruple, count_N, dyadic_boxes, enumerate_solutions, exact_M, inclusion_exclusion_Astar, main_term
from .exponents import maximize_bilinear, phi, psi, region_vertices, theorem_exponent
from .sieve import count_consecutive_kfree, count_kfree, count_star, is_kfree, moebius, sieve_segment

__version__ = "0.1.0"
