"""Normal forms and exact multiplication in the bicyclic monoid <p, q | pq = 1>.

Every element is written uniquely as ``q^i p^j``; an :class:`Element` stores the
exponent pair ``(i, j)``.  Exponents are Python ints, so there is no overflow.
"""
from __future__ import annotations

import re
from typing import NamedTuple, Union

import numpy as np


class Element(NamedTuple):
    """The normal form q^i p^j."""

    i: int
    j: int

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return NotImplemented

    def __str__(self):
        return format_element(self)


class _Zero:
    """The adjoined zero.  There is exactly one instance, :data:`ZERO`."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    def __str__(self):
        return "0"

    def __reduce__(self):
        return (_Zero, ())


ZERO = _Zero()
ONE = Element(0, 0)
P = Element(0, 1)
Q = Element(1, 0)

ExtElement = Union[Element, _Zero]


def is_zero(x) -> bool:
    return x is ZERO


def multiply(a: Element, b: Element) -> Element:
    i, j = a
    k, l = b
    if j < k:
        return Element(i - j + k, l)
    return Element(i, j - k + l)


def power(a: Element, e: int) -> Element:
    result = ONE
    for _ in range(e):
        result = multiply(result, a)
    return result


def reduce_word(word: str) -> Element:
    """Reduce a word over {p, q} to normal form.

    Single left-to-right pass: a ``q`` arriving after pending ``p``'s cancels
    one of them (``pq = 1``), otherwise it extends the leading run of q's.
    """
    qs = ps = 0
    for pos, ch in enumerate(word):
        if ch == "p":
            ps += 1
        elif ch == "q":
            if ps:
                ps -= 1
            else:
                qs += 1
        else:
            raise WordParseError(f"invalid letter {ch!r} at position {pos}", pos)
    return Element(qs, ps)


def element_word(x: Element) -> str:
    return "q" * x.i + "p" * x.j


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position


class ElementParseError(ParseError):
    pass


class WordParseError(ParseError):
    pass


_FACTOR = re.compile(r"([qp])(?:\^(\d+))?")


def parse_element(text: str) -> ExtElement:
    """Parse ``q^Ip^J`` (either factor optional, bare letter = exponent 1),
    ``1`` for the identity or ``0`` for the adjoined zero."""
    s = text.strip()
    if s == "0":
        return ZERO
    if s == "1":
        return ONE
    if not s:
        raise ElementParseError("empty element", 0)
    offset = len(text) - len(text.lstrip())
    exps = {"q": None, "p": None}
    pos = 0
    expected = "qp"
    while pos < len(s):
        match = _FACTOR.match(s, pos)
        if match is None or match.group(1) not in expected:
            raise ElementParseError(
                f"unexpected {s[pos]!r} at position {pos + offset} in {text!r}",
                pos + offset,
            )
        letter, digits = match.groups()
        exps[letter] = int(digits) if digits is not None else 1
        expected = "p" if letter == "q" else ""
        pos = match.end()
    return Element(exps["q"] or 0, exps["p"] or 0)


def format_element(x: ExtElement) -> str:
    if x is ZERO:
        return "0"
    i, j = x
    if i == 0 and j == 0:
        return "1"
    return (f"q^{i}" if i else "") + (f"p^{j}" if j else "")


def window(w: int):
    """All elements with both exponents at most ``w``, in lexicographic order."""
    return [Element(i, j) for i in range(w + 1) for j in range(w + 1)]


def multiply_arrays(i, j, k, l):
    """Vectorised :func:`multiply` on integer arrays (broadcasting allowed)."""
    i, j, k, l = np.broadcast_arrays(i, j, k, l)
    lt = j < k
    return np.where(lt, i - j + k, i), np.where(lt, l, j - k + l)
