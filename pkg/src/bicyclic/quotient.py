"""Finite ideals adjoined to C_{m,n} and the Rees quotient collapsing them.

An :class:`IdealModel` describes ``S = C_{m,n} + I`` for a finite set ``I`` of
labels: the internal table ``I x I -> I`` and the two actions ``x . t`` and
``t . x`` of window elements on labels.  Entries that are not labels are
bicyclic elements, i.e. products escaping the ideal.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Union

from .interassociate import InterassociateParams, star, star_ext
from .monoid import ZERO, Element, ElementParseError, format_element, parse_element, window

Entry = Union[str, Element]


class IdealAxiomViolation(ValueError):
    def __init__(self, message: str, triple: tuple):
        super().__init__(message)
        self.triple = triple


class IdealFileError(ValueError):
    pass


@dataclass
class IdealModel:
    labels: tuple[str, ...]
    table: dict  # (s, t) -> entry
    left: Callable[[Element, str], Entry]  # x . t
    right: Callable[[str, Element], Entry]  # t . x

    def __post_init__(self):
        self.labels = tuple(self.labels)
        if not self.labels:
            raise IdealFileError("an ideal needs at least one element")
        if len(set(self.labels)) != len(self.labels):
            raise IdealFileError("duplicate ideal labels")
        missing = [p for p in itertools.product(self.labels, repeat=2) if p not in self.table]
        if missing:
            raise IdealFileError(f"internal table has no entry for {missing[0]}")

    def is_label(self, e) -> bool:
        return isinstance(e, str) and e in self.labels

    def validate(self, params: InterassociateParams, w: int) -> None:
        """Raise :class:`IdealAxiomViolation` unless every product involving ``I``
        (window elements only) lands in ``I`` and the internal table is associative."""
        for s, t in itertools.product(self.labels, repeat=2):
            e = self.table[s, t]
            if not self.is_label(e):
                raise IdealAxiomViolation(
                    f"{s} * {t} = {_show(e)} leaves the ideal", (s, t, e))
        for x in window(w):
            for t in self.labels:
                e = self.left(x, t)
                if not self.is_label(e):
                    raise IdealAxiomViolation(
                        f"{format_element(x)} * {t} = {_show(e)} leaves the ideal", (x, t, e))
                e = self.right(t, x)
                if not self.is_label(e):
                    raise IdealAxiomViolation(
                        f"{t} * {format_element(x)} = {_show(e)} leaves the ideal", (t, x, e))
        for r, s, t in itertools.product(self.labels, repeat=3):
            lhs = self.table[self.table[r, s], t]
            rhs = self.table[r, self.table[s, t]]
            if lhs != rhs:
                raise IdealAxiomViolation(
                    f"internal table not associative: ({r}{s}){t} = {lhs} but {r}({s}{t}) = {rhs}",
                    (r, s, t))

    def mixed_associativity_failures(self, params: InterassociateParams, w: int,
                                     limit: int = 10) -> list[tuple]:
        """Triples mixing window elements and labels where ``S`` fails to be
        associative.  Only the ideal closure is needed for the quotient, so these
        are reported rather than raised."""
        fails = []
        pts = window(w)
        mul = self.product_fn(params)
        for triple in itertools.product(list(self.labels) + pts, repeat=3):
            if all(isinstance(v, Element) for v in triple):
                continue
            r, s, t = triple
            rs, st = mul(r, s), mul(s, t)
            if _outside(rs, w) or _outside(st, w):
                continue
            if mul(rs, t) != mul(r, st):
                fails.append(triple)
                if len(fails) >= limit:
                    break
        return fails

    def product_fn(self, params):
        def mul(u, v):
            if isinstance(u, Element) and isinstance(v, Element):
                return star(params, u, v)
            if isinstance(u, Element):
                return self.left(u, v)
            if isinstance(v, Element):
                return self.right(u, v)
            return self.table[u, v]
        return mul

    # construction ------------------------------------------------------------

    @classmethod
    def from_dict(cls, data: dict) -> "IdealModel":
        try:
            labels = [str(v) for v in data["labels"]]
            rows = data["table"]
        except (KeyError, TypeError) as exc:
            raise IdealFileError(f"ideal description needs 'labels' and 'table': {exc}") from exc
        if len(rows) != len(labels) or any(len(r) != len(labels) for r in rows):
            raise IdealFileError("table must be square with one row per label")

        def entry(v):
            v = str(v)
            if v in labels:
                return v
            try:
                return parse_element(v)
            except ElementParseError as exc:
                raise IdealFileError(f"table entry {v!r} is neither a label nor an element") from exc

        table = {(s, t): entry(rows[a][b])
                 for a, s in enumerate(labels) for b, t in enumerate(labels)}
        left = _action(data.get("left"), entry, "left")
        right = _action(data.get("right"), entry, "right")
        return cls(tuple(labels), table,
                   lambda x, t: left(format_element(x), t),
                   lambda t, x: right(t, format_element(x)))

    @classmethod
    def from_file(cls, path) -> "IdealModel":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise IdealFileError(f"cannot read ideal file {path}: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def null(cls, labels=("z",), sink=None) -> "IdealModel":
        """Every product involving the ideal equals ``sink`` (first label by default)."""
        sink = labels[0] if sink is None else sink
        table = {(s, t): sink for s in labels for t in labels}
        return cls(tuple(labels), table, lambda x, t: sink, lambda t, x: sink)


def _action(desc, entry, side):
    """Action table: a constant entry, or ``{"default": e, "entries": {"x t": e}}``
    (``"t x"`` for the right action)."""
    if desc is None:
        raise IdealFileError(f"missing '{side}' action table")
    if isinstance(desc, str):
        const = entry(desc)
        return lambda u, v: const
    if not isinstance(desc, dict):
        raise IdealFileError(f"'{side}' action must be a label or an object")
    default = entry(desc["default"]) if "default" in desc else None
    entries = {}
    for key, val in desc.get("entries", {}).items():
        parts = key.split()
        if len(parts) != 2:
            raise IdealFileError(f"'{side}' entry key {key!r} must be two space-separated items")
        u, v = parts
        if side == "left":
            u = format_element(parse_element(u))
        else:
            v = format_element(parse_element(v))
        entries[u, v] = entry(val)

    def act(u, v):
        e = entries.get((u, v), default)
        if e is None:
            raise IdealFileError(f"'{side}' action has no entry for {u} {v}")
        return e
    return act


def _show(e):
    return format_element(e) if isinstance(e, Element) else str(e)


def _outside(e, w):
    return isinstance(e, Element) and (e.i > w or e.j > w)


@dataclass
class QuotientReport:
    params: InterassociateParams
    window: int
    ideal_size: int
    well_defined: bool
    matches: bool
    mismatches: list = field(default_factory=list)
    fiber_sizes: dict = field(default_factory=dict)
    mixed_associativity_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.well_defined and self.matches

    def to_dict(self) -> dict:
        return {
            "m": self.params.m,
            "n": self.params.n,
            "window": self.window,
            "ideal_size": self.ideal_size,
            "well_defined": self.well_defined,
            "matches_C0_table": self.matches,
            "mismatches": [[_show(u) if u is not ZERO else "0" for u in row]
                           for row in self.mismatches],
            "fiber_sizes": {("0" if k is ZERO else format_element(k)): v
                            for k, v in self.fiber_sizes.items() if k is ZERO or v != 1},
            "all_other_fibers_singletons": all(v == 1 for k, v in self.fiber_sizes.items()
                                               if k is not ZERO),
            "mixed_associativity_failures": [[_show(v) for v in t]
                                             for t in self.mixed_associativity_failures],
        }


def natural_map(ideal: IdealModel, s):
    """``pi``: labels go to the zero, window elements to themselves."""
    return ZERO if isinstance(s, str) else s


def rees_quotient(params: InterassociateParams, ideal: IdealModel, w: int) -> QuotientReport:
    """Collapse ``I`` to a zero and compare the quotient with ``star_ext`` on
    ``C^0_{m,n}`` restricted to exponents ``<= w``."""
    ideal.validate(params, w)
    mul = ideal.product_fn(params)
    carrier = list(ideal.labels) + window(w)
    classes = {}
    for s in carrier:
        classes.setdefault(natural_map(ideal, s), []).append(s)

    table, well_defined = {}, True
    for u, v in itertools.product(classes, repeat=2):
        images = {natural_map(ideal, mul(s, t)) for s in classes[u] for t in classes[v]}
        if len(images) != 1:
            well_defined = False
        table[u, v] = images.pop()

    mismatches = []
    for (u, v), got in table.items():
        want = star_ext(params, u, v)
        if got != want:
            mismatches.append((u, v, got, want))
    return QuotientReport(
        params, w, len(ideal.labels), well_defined, not mismatches, mismatches,
        {k: len(v) for k, v in classes.items()},
        ideal.mixed_associativity_failures(params, min(w, 3)),
    )
