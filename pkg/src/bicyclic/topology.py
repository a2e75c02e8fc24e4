"""Candidate topologies on C_{m,n} and C^0_{m,n} and exact continuity checks.

A :class:`TopologyModel` has one non-isolated point (the distinguished point)
and a decreasing family ``basic(s)`` of basic neighbourhoods there; every other
point is isolated.  Continuity of a translation ``x -> a * x`` (or ``x * a``)
at the distinguished point asks, for each target neighbourhood ``V`` of the
image point, for some ``s'`` with ``a * basic(s') <= V``.  Containment is
decided on the box images from :mod:`bicyclic.regions`, so a "verified"
verdict holds on the whole (infinite) carrier, not just a sampled window.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .interassociate import InterassociateParams, star_ext
from .monoid import ZERO, Element, ExtElement, format_element, multiply
from .regions import (
    INF,
    QUADRANT,
    Box,
    difference,
    is_finite_union,
    is_subset,
    left_image,
    product_image,
    right_image,
    union_contains,
    union_points,
)
from .solver import LEFT, RIGHT, solve_left, solve_right

DISCRETE = "discrete"
ALEXANDROFF = "alexandroff"
TUBE = "tube"
CUSTOM_RAY = "custom-ray"
KINDS = (DISCRETE, ALEXANDROFF, TUBE, CUSTOM_RAY)

VERIFIED = "verified"
VIOLATION = "violation"
INCONCLUSIVE = "inconclusive"


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class Ray:
    """``{q^fixed p^l}`` (axis ``"q"``) or ``{q^l p^fixed}`` (axis ``"p"``)."""

    axis: str
    fixed: int

    def __post_init__(self):
        if self.axis not in ("q", "p"):
            raise ModelError(f"ray axis must be 'q' or 'p', got {self.axis!r}")
        if self.fixed < 0:
            raise ModelError("ray exponent must be non-negative")

    def tail(self, s: int) -> Box:
        """Ray points whose free exponent exceeds ``s``."""
        if self.axis == "q":
            return Box(self.fixed, self.fixed, s + 1, INF)
        return Box(s + 1, INF, self.fixed, self.fixed)

    def point(self, l: int) -> Element:
        return Element(self.fixed, l) if self.axis == "q" else Element(l, self.fixed)

    def __str__(self):
        if self.axis == "q":
            return f"{{q^{self.fixed}p^l}}"
        return f"{{q^lp^{self.fixed}}}"


@dataclass(frozen=True)
class Neighborhood:
    """Union of boxes, optionally with the zero, minus a finite excluded set."""

    boxes: tuple[Box, ...]
    zero: bool = False
    excluded: frozenset = frozenset()

    def __contains__(self, x) -> bool:
        if x is ZERO:
            return self.zero
        return union_contains(self.boxes, x) and x not in self.excluded

    def points(self) -> Iterable[ExtElement]:
        if self.zero:
            yield ZERO
        for x in union_points(self.boxes):
            if x not in self.excluded:
                yield x

    def is_finite(self) -> bool:
        return is_finite_union(self.boxes)


@dataclass(frozen=True)
class TopologyModel:
    kind: str
    params: InterassociateParams
    with_zero: bool
    point: ExtElement
    rays: tuple[Ray, ...] = ()
    excluded: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ModelError(f"unknown model kind {self.kind!r}")
        if self.point is ZERO and not self.with_zero:
            raise ModelError("the zero is only available on C^0_{m,n}")
        if self.kind in (ALEXANDROFF, TUBE) and self.point is not ZERO:
            raise ModelError(f"{self.kind} models live at the adjoined zero")
        if self.point in self.excluded:
            raise ModelError("the distinguished point cannot be excluded")

    # constructors -----------------------------------------------------------

    @classmethod
    def discrete(cls, params, with_zero=True, point=None):
        if point is None:
            point = ZERO if with_zero else params.identity
        return cls(DISCRETE, params, with_zero, point)

    @classmethod
    def alexandroff(cls, params):
        return cls(ALEXANDROFF, params, True, ZERO)

    @classmethod
    def tube(cls, params):
        return cls(TUBE, params, True, ZERO)

    @classmethod
    def custom_ray(cls, params, rays, point=None, excluded=(), with_zero=False):
        if point is None:
            point = params.identity
        return cls(CUSTOM_RAY, params, with_zero, point, tuple(rays), frozenset(excluded))

    # neighbourhoods ---------------------------------------------------------

    def basic(self, s: int) -> Neighborhood:
        zero = self.point is ZERO
        own = () if zero else (Box.point(self.point),)
        if self.kind == DISCRETE:
            return Neighborhood(own, zero)
        if self.kind == ALEXANDROFF:
            # complement of the box [0, s]^2: cofinal among cofinite sets
            return Neighborhood((Box(s + 1, INF, 0, INF), Box(0, s, s + 1, INF)), True)
        if self.kind == TUBE:
            m, n = self.params.m, self.params.n
            return Neighborhood((Box(n + s + 1, INF, m + s + 1, INF),), True)
        return Neighborhood(own + tuple(r.tail(s) for r in self.rays), zero, self.excluded)

    def cofinite(self, forbidden: Iterable[Element]) -> Neighborhood:
        """The open set ``C^0 \\ F`` around the zero, for finite ``F``."""
        if not self.with_zero:
            raise ModelError("cofinite neighbourhoods of 0 need the zero carrier")
        return Neighborhood((QUADRANT,), True, frozenset(forbidden))

    def carrier_points(self, w: int) -> list[ExtElement]:
        pts = [Element(i, j) for i in range(w + 1) for j in range(w + 1)]
        return ([ZERO] if self.with_zero else []) + pts

    def describe(self) -> str:
        where = "C^0" if self.with_zero else "C"
        extra = ""
        if self.rays:
            extra = " rays=" + ",".join(str(r) for r in self.rays)
        if self.excluded:
            extra += " excluded=" + ",".join(format_element(x) for x in sorted(self.excluded))
        return (f"{self.kind} on {where}_{{{self.params.m},{self.params.n}}} at "
                f"{format_element(self.point)}{extra}")


# translation images ---------------------------------------------------------


def translate(params: InterassociateParams, a: ExtElement, x: ExtElement, side: str) -> ExtElement:
    return star_ext(params, a, x) if side == LEFT else star_ext(params, x, a)


def _image_boxes(params, a: Element, boxes, side):
    if side == LEFT:
        d = multiply(a, params.sandwich)
        return [img for b in boxes for img in left_image(b, d)]
    e = multiply(params.sandwich, a)
    return [img for b in boxes for img in right_image(b, e)]


def _preimages(params, a: Element, y: Element, side):
    sols = solve_left(params, a, y) if side == LEFT else solve_right(params, a, y)
    return sols.solutions


@dataclass(frozen=True)
class Containment:
    """Outcome of deciding ``a * N <= V`` (or ``N * a <= V``)."""

    holds: bool
    unbounded: bool = False
    escape: tuple | None = None  # (w, translate of w) with w in N, translate not in V


def image_containment(params, a: ExtElement, side: str, nbhd: Neighborhood,
                      target: Neighborhood, image=None) -> Containment:
    """Decide exactly whether the translate of ``nbhd`` by ``a`` lies in ``target``."""
    if a is ZERO:
        if target.zero:
            return Containment(True)
        w = next(iter(nbhd.points()))
        return Containment(False, False, (w, ZERO))
    if nbhd.zero and not target.zero:
        return Containment(False, False, (ZERO, ZERO))
    img = _image_boxes(params, a, nbhd.boxes, side) if image is None else image
    rest = difference(img, target.boxes)
    unbounded = not is_finite_union(rest)
    # y in rest has a preimage in nbhd.boxes; it is a genuine escape unless all
    # such preimages were excluded, which happens for at most |excluded| points.
    budget = len(nbhd.excluded) + 1
    for y in union_points(rest):
        w = _good_preimage(params, a, y, side, nbhd)
        if w is not None:
            return Containment(False, unbounded, (w, y))
        if unbounded:
            budget -= 1
            if budget == 0:
                raise AssertionError("escape enumeration exceeded the excluded-set budget")
    for f in sorted(target.excluded):
        w = _good_preimage(params, a, f, side, nbhd)
        if w is not None:
            return Containment(False, unbounded, (w, f))
    return Containment(True)


def _good_preimage(params, a, y, side, nbhd):
    for x in _preimages(params, a, y, side):
        if union_contains(nbhd.boxes, x) and x not in nbhd.excluded:
            return x
    return None


# separate continuity --------------------------------------------------------


@dataclass
class PairCheck:
    a: ExtElement
    side: str
    image_point: ExtElement
    target: object  # basic index t, "isolated", or a label for explicit targets
    verdict: str
    witness: int | None = None
    escapes: list = field(default_factory=list)  # (s', w, translate of w)

    def to_dict(self) -> dict:
        return {
            "a": format_element(self.a),
            "side": self.side,
            "image": format_element(self.image_point),
            "target": self.target,
            "verdict": self.verdict,
            "witness": self.witness,
            "escapes": [[s, format_element(w), format_element(y)] for s, w, y in self.escapes],
        }


@dataclass
class ContinuityReport:
    model: TopologyModel
    window: int
    s_max: int
    reach: int
    checks: list[PairCheck]

    def count(self, verdict: str) -> int:
        return sum(1 for c in self.checks if c.verdict == verdict)

    @property
    def verdict(self) -> str:
        if any(c.verdict == VIOLATION for c in self.checks):
            return VIOLATION
        if any(c.verdict == INCONCLUSIVE for c in self.checks):
            return INCONCLUSIVE
        return VERIFIED

    def first(self, verdict: str) -> PairCheck | None:
        return next((c for c in self.checks if c.verdict == verdict), None)

    def to_dict(self, all_checks: bool = False) -> dict:
        shown = self.checks if all_checks else [c for c in self.checks if c.verdict != VERIFIED]
        return {
            "model": self.model.describe(),
            "m": self.model.params.m,
            "n": self.model.params.n,
            "window": self.window,
            "s_max": self.s_max,
            "reach": self.reach,
            "verdict": self.verdict,
            "checked": len(self.checks),
            "verified": self.count(VERIFIED),
            "violation": self.count(VIOLATION),
            "inconclusive": self.count(INCONCLUSIVE),
            "checks": [c.to_dict() for c in shown],
        }


def default_reach(model: TopologyModel, window: int, s_max: int) -> int:
    # enough for the tube witness s + j + n and for preimages of [0, s]^2
    return s_max + window + model.params.m + model.params.n + 1


class _TranslateSearch:
    """Cached images of ``basic(s')`` under one translation."""

    def __init__(self, model, a, side):
        self.model, self.a, self.side = model, a, side
        self._images = {}

    def containment(self, s, target):
        image = None
        if self.a is not ZERO:
            image = self._images.get(s)
            if image is None:
                image = _image_boxes(self.model.params, self.a, self.model.basic(s).boxes, self.side)
                self._images[s] = image
        return image_containment(self.model.params, self.a, self.side,
                                 self.model.basic(s), target, image=image)

    def smallest(self, target, lo, hi):
        """Least ``s'`` in ``[lo, hi]`` whose basic set maps into ``target``."""
        if not self.containment(hi, target).holds:
            return None
        while lo < hi:
            mid = (lo + hi) // 2
            if self.containment(mid, target).holds:
                hi = mid
            else:
                lo = mid + 1
        return lo


def check_translation(model: TopologyModel, a: ExtElement, side: str, s_max: int,
                      reach: int, targets=None) -> list[PairCheck]:
    """Continuity of translation by ``a`` at the distinguished point.

    ``targets`` optionally replaces the basic sets ``basic(t)``, ``t <= s_max``,
    as neighbourhoods of the image point when that is the distinguished point;
    pass ``(label, Neighborhood)`` pairs.
    """
    x0 = model.point
    y = translate(model.params, a, x0, side)
    search = _TranslateSearch(model, a, side)
    if y == x0:
        if targets is None:
            targets = [(t, model.basic(t)) for t in range(s_max + 1)]
    else:
        iso = Neighborhood((), True) if y is ZERO else Neighborhood((Box.point(y),))
        targets = [("isolated", iso)]
    out = []
    lo = 0
    for label, target in targets:
        s = search.smallest(target, lo if isinstance(label, int) else 0, reach)
        if s is not None:
            out.append(PairCheck(a, side, y, label, VERIFIED, witness=s))
            if isinstance(label, int):
                lo = s  # targets shrink with t, so witnesses never decrease
            continue
        escapes = []
        for sp in range(min(s_max, reach) + 1):
            c = search.containment(sp, target)
            escapes.append((sp,) + c.escape)
        final = search.containment(certificate_level(model, a, target, reach), target)
        verdict = INCONCLUSIVE if final.holds else VIOLATION
        out.append(PairCheck(a, side, y, label, verdict, escapes=escapes))
    return out


def _finite_coords(boxes):
    return [int(v) for b in boxes for v in b if v != INF]


def certificate_level(model: TopologyModel, a: ExtElement, target: Neighborhood, reach: int) -> int:
    """A level past every finite coordinate in play.

    The points of ``basic(s')`` whose translates miss ``target`` form
    ``basic(s')`` intersected with a fixed finite union of boxes, and those boxes
    have finite coordinates below this level.  Every basic family here only
    moves lower ends of the form ``s' + c``, so a box meeting ``basic(L)`` at
    this level meets ``basic(s')`` for all larger ``s'`` as well.  An escape
    at this level therefore certifies a violation.
    """
    m, n = model.params.m, model.params.n
    coords = _finite_coords(difference([QUADRANT], target.boxes))
    coords += [v for x in target.excluded | model.excluded for v in x]
    coords += [r.fixed for r in model.rays]
    if model.point is not ZERO:
        coords += list(model.point)
    shift = 0 if a is ZERO else a.i + a.j
    return max([reach] + coords) + shift + m + n + 2


def check_separate_continuity(model: TopologyModel, window: int, s_max: int,
                              reach: int | None = None, points=None,
                              targets=None) -> ContinuityReport:
    """Check left and right translations by every carrier point with exponents
    up to ``window`` (or by ``points``) at the distinguished point."""
    if window < 1 or s_max < 1:
        raise ValueError("window and s_max must be >= 1")
    if reach is None:
        reach = default_reach(model, window, s_max)
    reach = max(reach, s_max)
    if points is None:
        points = model.carrier_points(window)
    checks = []
    for a in points:
        for side in (LEFT, RIGHT):
            checks.extend(check_translation(model, a, side, s_max, reach, targets))
    return ContinuityReport(model, window, s_max, reach, checks)


def translation_preimage(params, a: Element, forbidden: Iterable[Element], side: str) -> set[Element]:
    """``{x : a * x in F}`` (or ``x * a``); finite since translations are finite-to-one."""
    return {x for f in forbidden for x in _preimages(params, a, f, side)}


# joint continuity at zero ---------------------------------------------------


@dataclass
class JointCheck:
    target: object
    verdict: str
    witness: int | None = None
    escapes: list = field(default_factory=list)  # (s', x, y, x * y)

    def to_dict(self):
        return {
            "target": self.target,
            "verdict": self.verdict,
            "witness": self.witness,
            "escapes": [[s] + [format_element(v) for v in rest] for s, *rest in self.escapes],
        }


def _product_boxes(params, boxes):
    left = [b for box in boxes for b in right_image(box, params.sandwich)]
    return [img for x in left for y in boxes for img in product_image(x, y)]


def _factor_pair(params, c: Element, nbhd: Neighborhood, limit: int = 20000):
    """Some ``(x, y)`` in ``nbhd`` squared with ``x * y = c``, if found."""
    for x in itertools.islice((p for p in nbhd.points() if p is not ZERO), limit):
        for y in solve_left(params, x, c).solutions:
            if y in nbhd:
                return x, y
    return None


def _joint_containment(model, s, target):
    params = model.params
    nbhd = model.basic(s)
    img = _product_boxes(params, nbhd.boxes)
    rest = difference(img, target.boxes)
    unbounded = not is_finite_union(rest)
    candidates = itertools.chain(
        itertools.islice(union_points(rest), 64), sorted(target.excluded))
    for c in candidates:
        pair = _factor_pair(params, c, nbhd)
        if pair is not None:
            return False, unbounded, pair + (c,)
    if rest or any(union_contains(img, f) for f in target.excluded):
        # the product image meets the complement but no factor pair was found;
        # only possible with excluded points, which these models do not use
        return False, unbounded, None
    return True, False, None


def check_zero_joint_continuity(model: TopologyModel, s_max: int, reach: int | None = None,
                                targets=None) -> list[JointCheck]:
    """For each target ``basic(t)`` (or explicit target) find ``s'`` with
    ``basic(s') * basic(s') <= target``; continuity of ``*`` at ``(0, 0)``."""
    if model.point is not ZERO:
        raise ModelError("joint continuity is checked at the adjoined zero")
    if reach is None:
        reach = 2 * s_max + model.params.m + model.params.n + 1
    if targets is None:
        targets = [(t, model.basic(t)) for t in range(s_max + 1)]
    out = []
    for label, target in targets:
        found = None
        for s in range(reach + 1):
            if _joint_containment(model, s, target)[0]:
                found = s
                break
        if found is not None:
            out.append(JointCheck(label, VERIFIED, witness=found))
            continue
        escapes = []
        for s in range(min(s_max, reach) + 1):
            esc = _joint_containment(model, s, target)[2]
            if esc is not None:
                escapes.append((s,) + esc)
        certified = any(_sliding_escape(model, target, e[1:], reach) for e in escapes)
        out.append(JointCheck(label, VIOLATION if certified else INCONCLUSIVE, escapes=escapes))
    return out


def _sliding_escape(model, target, pair, reach) -> bool:
    """Whether the escape ``x * y = c`` slides to every level.

    With ``x_t = q^i p^(j+t)`` and ``y_t = q^(k+t) p^l`` the product stays
    ``c`` once ``j + t >= m``.  If both tails sit inside ``basic(L)`` for a
    level ``L`` past all finite coordinates, they do so at every level.
    """
    x, y, c = pair
    params = model.params
    if c in target:
        return False
    coords = _finite_coords(difference([QUADRANT], target.boxes))
    coords += [v for f in target.excluded for v in f]
    level = max([reach] + coords + list(x) + list(y)) + params.m + params.n + 1
    t = level + 1 + max(0, params.m - x.j)
    if star_ext(params, Element(x.i, x.j + t), Element(y.i + t, y.j)) != c:
        return False
    boxes = model.basic(level).boxes
    return (is_subset([Box(x.i, x.i, x.j + level + 1, INF)], boxes)
            and is_subset([Box(y.i + level + 1, INF, y.j, y.j)], boxes))


# compactness shape ----------------------------------------------------------


@dataclass(frozen=True)
class CofiniteVerdict:
    cofinite: bool
    witness_ray: Ray | None = None
    at: int | None = None  # basic index whose complement contains the ray

    def __bool__(self):
        return self.cofinite


def check_cofinite_base(model: TopologyModel, s_max: int = 25) -> CofiniteVerdict:
    """Whether every basic neighbourhood ``basic(s)``, ``s <= s_max``, has
    finite complement in the carrier; otherwise report an infinite ray in the
    complement."""
    for s in range(s_max + 1):
        rest = difference([QUADRANT], model.basic(s).boxes)
        for box in rest:
            if box.is_finite():
                continue
            if box.jhi == INF:
                ray = Ray("q", box.ilo)
            else:
                ray = Ray("p", box.jlo)
            return CofiniteVerdict(False, ray, s)
    return CofiniteVerdict(True)
