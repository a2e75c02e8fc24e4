"""Exact arithmetic on unions of integer boxes in N0 x N0.

A :class:`Box` is ``[ilo, ihi] x [jlo, jhi]`` over exponent pairs, with
``math.inf`` as an upper end for unbounded sides.  Translating a box by a fixed
bicyclic element, or multiplying two boxes together, gives a finite union of
boxes again, so images of tubes, rays and cofinite sets can be compared exactly
instead of being sampled.
"""
from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, NamedTuple

from .monoid import Element

INF = math.inf


class Box(NamedTuple):
    ilo: int
    ihi: float
    jlo: int
    jhi: float

    @classmethod
    def point(cls, x: Element) -> "Box":
        return cls(x.i, x.i, x.j, x.j)

    def is_empty(self) -> bool:
        return self.ilo > self.ihi or self.jlo > self.jhi

    def is_finite(self) -> bool:
        return self.ihi != INF and self.jhi != INF

    def size(self) -> float:
        if self.is_empty():
            return 0
        if not self.is_finite():
            return INF
        return (self.ihi - self.ilo + 1) * (self.jhi - self.jlo + 1)

    def __contains__(self, x) -> bool:
        i, j = x
        return self.ilo <= i <= self.ihi and self.jlo <= j <= self.jhi

    def points(self) -> Iterator[Element]:
        """Every point; rows first for finite boxes, by anti-diagonals otherwise."""
        if self.is_empty():
            return
        if self.is_finite():
            for i in range(self.ilo, int(self.ihi) + 1):
                for j in range(self.jlo, int(self.jhi) + 1):
                    yield Element(i, j)
            return
        for d in itertools.count():
            for di in range(d + 1):
                i, j = self.ilo + di, self.jlo + d - di
                if i <= self.ihi and j <= self.jhi:
                    yield Element(i, j)
            if self.ilo + d > self.ihi and self.jlo + d > self.jhi:
                return

    def __str__(self):
        def side(lo, hi):
            return f"[{lo},inf)" if hi == INF else (f"{{{lo}}}" if lo == hi else f"[{lo},{int(hi)}]")
        return f"{side(self.ilo, self.ihi)}x{side(self.jlo, self.jhi)}"


QUADRANT = Box(0, INF, 0, INF)


def _box(ilo, ihi, jlo, jhi):
    if ilo == INF or jlo == INF:
        return None
    b = Box(max(ilo, 0), ihi, max(jlo, 0), jhi)
    return None if b.is_empty() else b


def intersect(a: Box, b: Box) -> Box | None:
    return _box(max(a.ilo, b.ilo), min(a.ihi, b.ihi), max(a.jlo, b.jlo), min(a.jhi, b.jhi))


def subtract(a: Box, b: Box) -> list[Box]:
    """``a \\ b`` as at most four disjoint boxes."""
    ailo, aihi, ajlo, ajhi = a
    bilo, bihi, bjlo, bjhi = b
    if bilo > aihi or bihi < ailo or bjlo > ajhi or bjhi < ajlo:
        return [a]
    ilo, ihi = max(ailo, bilo), min(aihi, bihi)
    jlo, jhi = max(ajlo, bjlo), min(ajhi, bjhi)
    out = []
    if ailo < ilo:
        out.append(Box(ailo, ilo - 1, ajlo, ajhi))
    if ihi < aihi:
        out.append(Box(ihi + 1, aihi, ajlo, ajhi))
    if ajlo < jlo:
        out.append(Box(ilo, ihi, ajlo, jlo - 1))
    if jhi < ajhi:
        out.append(Box(ilo, ihi, jhi + 1, ajhi))
    return out


def difference(boxes: Iterable[Box], minus: Iterable[Box]) -> list[Box]:
    rest = list(boxes)
    for b in minus:
        rest = [piece for r in rest for piece in subtract(r, b)]
        if not rest:
            break
    return rest


def is_subset(boxes: Iterable[Box], of: Iterable[Box]) -> bool:
    return not difference(boxes, list(of))


def union_contains(boxes: Iterable[Box], x) -> bool:
    return any(x in b for b in boxes)


def is_finite_union(boxes: Iterable[Box]) -> bool:
    return all(b.is_finite() for b in boxes)


def union_points(boxes: Iterable[Box]) -> Iterator[Element]:
    """Points of the union without repeats (finite boxes first)."""
    seen = set()
    ordered = sorted(boxes, key=lambda b: (not b.is_finite(), b))
    finite = [b for b in ordered if b.is_finite()]
    for b in finite:
        for x in b.points():
            if x not in seen:
                seen.add(x)
                yield x
    infinite = [b.points() for b in ordered if not b.is_finite()]
    # interleave the infinite enumerations so each box keeps contributing
    while infinite:
        alive = []
        for it in infinite:
            x = next(it, None)
            if x is None:
                continue
            alive.append(it)
            if x not in seen:
                seen.add(x)
                yield x
        infinite = alive


def left_image(box: Box, d: Element) -> list[Box]:
    """``{d . x : x in box}`` for the bicyclic product: at most two boxes."""
    out = []
    # x.i > d.j: q^{d.i - d.j + x.i} p^{x.j}
    lo = max(box.ilo, d.j + 1)
    if lo <= box.ihi:
        out.append(Box(d.i - d.j + lo, d.i - d.j + box.ihi, box.jlo, box.jhi))
    # x.i <= d.j: q^{d.i} p^{d.j - x.i + x.j}; the columns for consecutive x.i
    # overlap, so their union is one column segment
    top = min(box.ihi, d.j)
    if box.ilo <= top:
        out.append(Box(d.i, d.i, d.j - top + box.jlo, d.j - box.ilo + box.jhi))
    return out


def right_image(box: Box, e: Element) -> list[Box]:
    """``{x . e : x in box}`` for the bicyclic product: at most two boxes."""
    out = []
    # x.j >= e.i: q^{x.i} p^{x.j - e.i + e.j}
    lo = max(box.jlo, e.i)
    if lo <= box.jhi:
        out.append(Box(box.ilo, box.ihi, lo - e.i + e.j, box.jhi - e.i + e.j))
    # x.j < e.i: q^{x.i - x.j + e.i} p^{e.j}, one row segment
    top = min(box.jhi, e.i - 1)
    if box.jlo <= top:
        out.append(Box(box.ilo - top + e.i, box.ihi - box.jlo + e.i, e.j, e.j))
    return out


def product_image(x: Box, y: Box) -> list[Box]:
    """``{a . b : a in x, b in y}``: at most two boxes."""
    out = []
    # a.j < b.i: q^{a.i + (b.i - a.j)} p^{b.j}
    dmin = max(1, y.ilo - x.jhi)
    dmax = y.ihi - x.jlo
    if dmin <= dmax:
        out.append(Box(x.ilo + dmin, x.ihi + dmax, y.jlo, y.jhi))
    # a.j >= b.i: q^{a.i} p^{(a.j - b.i) + b.j}
    emin = max(0, x.jlo - y.ihi)
    emax = x.jhi - y.ilo
    if emin <= emax:
        out.append(Box(x.ilo, x.ihi, y.jlo + emin, y.jhi + emax))
    return out
