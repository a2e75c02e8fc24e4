"""Interassociates ``a *_{m,n} b = a q^m p^n b`` of the bicyclic monoid.

Also: the core subsemigroup C*_{m,n} = {q^{n+k} p^{m+l}}, the embedding
``iota`` of the bicyclic monoid onto it, the adjoined-zero semigroup and the
zero-multiplication interassociate ``a * b = a 0 b``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .monoid import ZERO, Element, ExtElement, multiply, multiply_arrays


@dataclass(frozen=True)
class InterassociateParams:
    m: int = 0
    n: int = 0

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError(f"m and n must be non-negative, got ({self.m}, {self.n})")

    @property
    def sandwich(self) -> Element:
        return Element(self.m, self.n)

    @property
    def identity(self) -> Element:
        """``iota(1) = q^n p^m``, the two-sided identity of C*_{m,n}."""
        return Element(self.n, self.m)

    @classmethod
    def from_sandwich(cls, c: Element) -> "InterassociateParams":
        # every variant a c b of the bicyclic monoid is some *_{m,n}: c = q^m p^n
        return cls(c.i, c.j)

    def __str__(self):
        return f"(m={self.m}, n={self.n})"


def variant(c: Element, a: Element, b: Element) -> Element:
    """The sandwich operation ``a c b``."""
    return multiply(multiply(a, c), b)


def star(params: InterassociateParams, a: Element, b: Element) -> Element:
    return multiply(multiply(a, params.sandwich), b)


def star_closed(params: InterassociateParams, a: Element, b: Element) -> Element:
    """``star`` written out as one case split on the exponents."""
    i, j = a
    k, l = b
    m, n = params.m, params.n
    # a q^m = q^{i-j+m} if j < m, else q^i p^{j-m}; then p^n b
    if j < m:
        i, j = i - j + m, n
    else:
        j = j - m + n
    if j < k:
        return Element(i - j + k, l)
    return Element(i, j - k + l)


def star_arrays(params: InterassociateParams, i, j, k, l):
    ci, cj = multiply_arrays(i, j, params.m, params.n)
    return multiply_arrays(ci, cj, k, l)


def star_ext(params: InterassociateParams, a: ExtElement, b: ExtElement) -> ExtElement:
    if a is ZERO or b is ZERO:
        return ZERO
    return star(params, a, b)


def star_zero_mult(a: ExtElement, b: ExtElement) -> ExtElement:
    """The interassociate ``a * b = a . 0 . b`` of the bicyclic monoid with zero."""
    return ZERO


def iota(params: InterassociateParams, x: Element) -> Element:
    return Element(params.n + x.i, params.m + x.j)


def iota_inverse(params: InterassociateParams, x: Element) -> Element:
    if not in_star_core(params, x):
        raise ValueError(f"{x} is not in C*{params}")
    return Element(x.i - params.n, x.j - params.m)


def in_star_core(params: InterassociateParams, x: Element) -> bool:
    return x.i >= params.n and x.j >= params.m


def find_idempotents(params: InterassociateParams, w: int) -> set[Element]:
    """Brute-force ``{e : e * e = e}`` over exponents up to ``w``."""
    if w < 1:
        raise ValueError("window must be >= 1")
    i, j = np.meshgrid(np.arange(w + 1), np.arange(w + 1), indexing="ij")
    ri, rj = star_arrays(params, i, j, i, j)
    hits = (ri == i) & (rj == j)
    return {Element(int(a), int(b)) for a, b in zip(i[hits], j[hits])}


def idempotent_formula(params: InterassociateParams, w: int) -> set[Element]:
    """Closed form ``{q^{n+k} p^{m+k}}``; checked against :func:`find_idempotents`."""
    top = w - max(params.m, params.n)
    return {Element(params.n + k, params.m + k) for k in range(top + 1)}
