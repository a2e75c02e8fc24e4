"""Exact computations in the bicyclic monoid C(p, q), its interassociates
C_{m,n}, their zero extensions, and continuity checks for topologies on them."""
from .interassociate import (
    InterassociateParams,
    find_idempotents,
    in_star_core,
    iota,
    star,
    star_ext,
    star_zero_mult,
    variant,
)
from .monoid import ONE, ZERO, Element, format_element, multiply, parse_element, reduce_word
from .solver import product_fiber, simplicity_witness, solve_left, solve_right

__all__ = [
    "ONE", "ZERO", "Element", "InterassociateParams", "find_idempotents", "format_element",
    "in_star_core", "iota", "multiply", "parse_element", "product_fiber", "reduce_word",
    "simplicity_witness", "solve_left", "solve_right", "star", "star_ext", "star_zero_mult",
    "variant",
]
