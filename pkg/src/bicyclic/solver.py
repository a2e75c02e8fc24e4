"""Translation equations ``a * x = b`` / ``x * a = b``, two-sided witnesses
``x * a * y = b`` and product fibers ``D_c = {(x, y) : x * y = c}``."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .interassociate import InterassociateParams, star
from .monoid import Element, format_element, multiply

LEFT = "left"
RIGHT = "right"


class SearchBoundExceeded(RuntimeError):
    def __init__(self, bound: int, message: str):
        super().__init__(message)
        self.bound = bound


@dataclass(frozen=True)
class SolutionSet:
    side: str
    params: InterassociateParams
    a: Element
    b: Element
    solutions: tuple[Element, ...]
    search_bound: int
    method: str = "closed-form"

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)

    def __contains__(self, x):
        return x in self.solutions

    def as_set(self) -> set[Element]:
        return set(self.solutions)

    def to_dict(self) -> dict:
        return {
            "side": self.side,
            "m": self.params.m,
            "n": self.params.n,
            "a": format_element(self.a),
            "b": format_element(self.b),
            "solutions": [format_element(x) for x in self.solutions],
            "search_bound": self.search_bound,
            "method": self.method,
        }


def solution_bound(params: InterassociateParams, a: Element, b: Element) -> int:
    """No solution of either translation equation has an exponent above this."""
    return a.i + a.j + b.i + b.j + params.m + params.n + 1


def _left_closed_form(d: Element, b: Element) -> list[Element]:
    # d x = b with x = q^i p^j
    out = []
    if b.i > d.i:  # branch d.j < i
        out.append(Element(b.i - d.i + d.j, b.j))
    if b.i == d.i:  # branch i <= d.j: result q^{d.i} p^{d.j - i + j}
        for i in range(max(0, d.j - b.j), d.j + 1):
            out.append(Element(i, b.j - d.j + i))
    return out


def _right_closed_form(e: Element, b: Element) -> list[Element]:
    # x e = b with x = q^i p^j
    out = []
    if b.j == e.j:  # branch j < e.i: result q^{i - j + e.i} p^{e.j}
        for j in range(max(0, e.i - b.i), e.i):
            out.append(Element(b.i + j - e.i, j))
    if b.j >= e.j:  # branch j >= e.i
        out.append(Element(b.i, b.j + e.i - e.j))
    return out


def _scan(side, params, a, b, bound):
    out = []
    for i in range(bound + 1):
        for j in range(bound + 1):
            x = Element(i, j)
            prod = star(params, a, x) if side == LEFT else star(params, x, a)
            if prod == b:
                out.append(x)
    return out


def _solve(side, params, a, b, bound):
    if bound is not None:
        return SolutionSet(side, params, a, b, tuple(_scan(side, params, a, b, bound)),
                           bound, method="scan")
    if side == LEFT:
        sols = _left_closed_form(multiply(a, params.sandwich), b)
    else:
        sols = _right_closed_form(multiply(params.sandwich, a), b)
    limit = solution_bound(params, a, b)
    assert all(max(x) <= limit for x in sols), (side, params, a, b, sols)
    return SolutionSet(side, params, a, b, tuple(sorted(sols)), limit)


def solve_left(params: InterassociateParams, a: Element, b: Element,
               bound: int | None = None) -> SolutionSet:
    """All ``x`` with ``a * x = b``.

    Without ``bound`` the set is read off the multiplication case split and is
    complete; ``search_bound`` then reports :func:`solution_bound`.  With an
    explicit ``bound`` every ``x`` with exponents up to it is tried instead.
    """
    return _solve(LEFT, params, a, b, bound)


def solve_right(params: InterassociateParams, a: Element, b: Element,
                bound: int | None = None) -> SolutionSet:
    """All ``x`` with ``x * a = b``; see :func:`solve_left`."""
    return _solve(RIGHT, params, a, b, bound)


def solve(side: str, params, a, b, bound=None) -> SolutionSet:
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return _solve(side, params, a, b, bound)


def witness_bound(params: InterassociateParams, a: Element, b: Element) -> int:
    """Total exponent of the explicit witness ``x = q^{b.i} p^{g.i}``,
    ``y = q^{g.j} p^{b.j}`` where ``g = c a c``; the search never needs more."""
    c = params.sandwich
    g = multiply(multiply(c, a), c)
    return b.i + b.j + g.i + g.j


@dataclass(frozen=True)
class Witness:
    x: Element
    y: Element
    total: int
    bound: int


def simplicity_witness(params: InterassociateParams, a: Element, b: Element,
                       max_total: int | None = None) -> Witness:
    """First ``(x, y)`` with ``x * a * y = b``, in increasing total exponent
    ``x.i + x.j + y.i + y.j``, ties broken lexicographically."""
    limit = witness_bound(params, a, b) if max_total is None else max_total
    c = params.sandwich
    g = multiply(multiply(c, a), c)  # x * a * y = x g y
    for total in range(limit + 1):
        for xi, xj, yi in _compositions(total):
            yj = total - xi - xj - yi
            x, y = Element(xi, xj), Element(yi, yj)
            if multiply(multiply(x, g), y) == b:
                return Witness(x, y, total, limit)
    raise SearchBoundExceeded(
        limit, f"no witness with total exponent <= {limit} for "
               f"x*{format_element(a)}*y = {format_element(b)}")


def _compositions(total):
    # (xi, xj, yi) lexicographic with xi + xj + yi <= total
    for xi in range(total + 1):
        for xj in range(total - xi + 1):
            for yi in range(total - xi - xj + 1):
                yield xi, xj, yi


def product_fiber(params: InterassociateParams, c: Element, w: int) -> set[tuple[Element, Element]]:
    """Pairs ``(x, y)`` with ``x * y = c`` and every exponent at most ``w``."""
    if w < 1:
        raise ValueError("window must be >= 1")
    out = set()
    for xi, xj in itertools.product(range(w + 1), repeat=2):
        x = Element(xi, xj)
        for y in solve_left(params, x, c):
            if y.i <= w and y.j <= w:
                out.add((x, y))
    return out


def identity_fiber_family(params: InterassociateParams, w: int) -> list[tuple[Element, Element]]:
    """``(q^n p^{m+i}, q^{n+i} p^m)`` for ``0 <= i <= w - max(m, n)``; all lie in D_{q^n p^m},
    so that fiber is infinite."""
    m, n = params.m, params.n
    return [(Element(n, m + i), Element(n + i, m)) for i in range(w - max(m, n) + 1)]
