"""Open subsets of the point, the unit interval and the circle R/Z.

An open set is stored as a sorted tuple of pairwise disjoint connected
components (arcs) with rational endpoints.  Internally every arc is lifted to
open intervals of the real line inside ``(-1, 2)``: a component of ``[0, 1]``
containing 0 gets left end ``-1``, one containing 1 gets right end ``2``.
Union, containment and membership then reduce to plain interval arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from enum import Enum
from fractions import Fraction

LO = Fraction(-1)
HI = Fraction(2)


class Space(Enum):
    POINT = "point"
    INTERVAL = "interval"
    CIRCLE = "circle"


PROPER = "proper"
LEFTCLOSED = "leftclosed"
RIGHTCLOSED = "rightclosed"
FULL = "full"


@dataclass(frozen=True)
class Arc:
    """A connected open subset.

    Interval: ``proper`` is ``(a, b)`` with ``0 <= a < b <= 1``; ``leftclosed``
    is ``[0, b)``; ``rightclosed`` is ``(a, 1]``; ``full`` is ``[0, 1]``.

    Circle: ``proper`` runs counterclockwise from ``a`` to ``b`` (both reduced
    mod 1).  ``a == b`` is the circle minus one point.
    """

    space: Space
    kind: str
    a: Fraction | None = None
    b: Fraction | None = None

    def __post_init__(self):
        a = None if self.a is None else Fraction(self.a)
        b = None if self.b is None else Fraction(self.b)
        sp, kind = self.space, self.kind
        if kind == FULL:
            a = b = None
        elif sp is Space.POINT:
            raise ValueError("the point space has only the full arc")
        elif sp is Space.CIRCLE:
            if kind != PROPER:
                raise ValueError(f"{kind} arcs exist only on the interval")
            a, b = a % 1, b % 1
        elif kind == PROPER:
            if not 0 <= a < b <= 1:
                raise ValueError(f"bad interval arc ({a}, {b})")
        elif kind == LEFTCLOSED:
            a = None
            if not 0 < b <= 1:
                raise ValueError(f"bad arc [0, {b})")
        elif kind == RIGHTCLOSED:
            b = None
            if not 0 <= a < 1:
                raise ValueError(f"bad arc ({a}, 1]")
        else:
            raise ValueError(f"unknown arc kind {kind!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @cached_property
    def length(self) -> Fraction:
        if self.kind == FULL:
            return Fraction(1)
        if self.space is Space.CIRCLE:
            return (self.b - self.a) % 1 or Fraction(1)
        lo = 0 if self.kind == LEFTCLOSED else self.a
        hi = 1 if self.kind == RIGHTCLOSED else self.b
        return hi - lo

    def lift(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return self._lifted

    @cached_property
    def _lifted(self):
        if self.kind == FULL:
            return ((LO, HI),)
        if self.kind == LEFTCLOSED:
            return ((LO, self.b),)
        if self.kind == RIGHTCLOSED:
            return ((self.a, HI),)
        if self.space is Space.INTERVAL:
            return ((self.a, self.b),)
        end = self.a + self.length
        if end <= 1:
            return ((self.a, end),)
        return ((self.a, HI), (LO, end - 1))

    def __repr__(self):
        if self.kind == FULL:
            return f"Full({self.space.value})"
        if self.kind == LEFTCLOSED:
            return f"[0,{self.b})"
        if self.kind == RIGHTCLOSED:
            return f"({self.a},1]"
        return f"({self.a},{self.b})"


def proper(space: Space, a, b) -> Arc:
    return Arc(space, PROPER, Fraction(a), Fraction(b))


def leftclosed(b) -> Arc:
    return Arc(Space.INTERVAL, LEFTCLOSED, None, Fraction(b))


def rightclosed(a) -> Arc:
    return Arc(Space.INTERVAL, RIGHTCLOSED, Fraction(a), None)


def full(space: Space) -> Arc:
    return Arc(space, FULL)


def _inside(piece, pieces) -> bool:
    lo, hi = piece
    return any(l <= lo and hi <= r for l, r in pieces)


def arc_contains(outer: Arc, inner: Arc) -> bool:
    return all(_inside(piece, outer.lift()) for piece in inner.lift())


@dataclass(frozen=True)
class OpenSet:
    space: Space
    arcs: tuple[Arc, ...] = ()

    def __iter__(self):
        return iter(self.arcs)

    def __len__(self):
        return len(self.arcs)

    def __bool__(self):
        return bool(self.arcs)

    @property
    def is_full(self) -> bool:
        return len(self.arcs) == 1 and self.arcs[0].kind == FULL

    def contains(self, x) -> bool:
        """Point membership; on the circle ``x`` is read mod 1."""
        if self.space is Space.POINT:
            return bool(self.arcs)
        x = Fraction(x)
        if self.space is Space.CIRCLE:
            x %= 1
        for arc in self.arcs:
            for l, r in arc.lift():
                if l < x < r or (self.space is Space.CIRCLE and x == 0 and l < 1 < r):
                    return True
        return False

    def subset_of(self, other: OpenSet) -> bool:
        return match_components(self, other) is not None

    def endpoints(self) -> set[Fraction]:
        pts = set()
        for arc in self.arcs:
            for e in (arc.a, arc.b):
                if e is not None:
                    pts.add(e % 1 if self.space is Space.CIRCLE else e)
        return pts

    def __repr__(self):
        return f"OpenSet({self.space.value}, {list(self.arcs)})"


def empty(space: Space) -> OpenSet:
    return OpenSet(space, ())


def whole(space: Space) -> OpenSet:
    return OpenSet(space, (full(space),))


def _merge(pieces):
    pieces = sorted(pieces)
    out = []
    for l, r in pieces:
        if out and l < out[-1][1]:
            if r > out[-1][1]:
                out[-1] = (out[-1][0], r)
        else:
            out.append((l, r))
    return out


def canonicalize(space: Space, raw) -> OpenSet:
    """Canonical open set with the same union as the given arcs.

    Only overlapping arcs are merged: ``(0, 1/2)`` and ``(1/2, 1)`` stay two
    components because their union misses ``1/2``.
    """
    raw = list(raw)
    for arc in raw:
        if arc.space is not space:
            raise ValueError(f"arc {arc!r} does not live in {space.value}")
    if space is Space.POINT:
        return whole(space) if raw else empty(space)
    merged = _merge(piece for arc in raw for piece in arc.lift())
    if not merged:
        return empty(space)
    if space is Space.INTERVAL:
        arcs = []
        for l, r in merged:
            if l == LO and r == HI:
                arcs.append(full(space))
            elif l == LO:
                arcs.append(leftclosed(r))
            elif r == HI:
                arcs.append(rightclosed(l))
            else:
                arcs.append(proper(space, l, r))
        return OpenSet(space, tuple(arcs))
    if merged[0] == (LO, HI):
        return whole(space)
    arcs = []
    if merged[0][0] == LO:
        # a component through the base point: its halves sit at both ends
        first, last = merged[0], merged[-1]
        assert last[1] == HI
        merged = merged[1:-1]
        arcs.append(proper(space, last[0], first[1]))
    arcs += [proper(space, l, r) for l, r in merged]
    arcs.sort(key=lambda arc: arc.a)
    return OpenSet(space, tuple(arcs))


def open_set(space: Space, *arcs: Arc) -> OpenSet:
    return canonicalize(space, arcs)


def union(v: OpenSet, w: OpenSet) -> OpenSet:
    return canonicalize(v.space, v.arcs + w.arcs)


def component_counts(v: OpenSet) -> tuple[int, int]:
    """``(n, m)``: number of components, and number of components lying
    strictly inside the open interval (0, 1).  On the circle and the point
    every component counts for ``m``."""
    n = len(v.arcs)
    if v.space is Space.INTERVAL:
        return n, sum(1 for arc in v.arcs if arc.kind == PROPER)
    return n, n


def match_components(v: OpenSet, w: OpenSet):
    """For ``v`` inside ``w``, the list ``[(i, j)]`` pairing each component of
    ``v`` with the component of ``w`` containing it; ``None`` when ``v`` is not
    contained in ``w``."""
    if v.space is not w.space:
        raise ValueError("open sets over different spaces")
    out = []
    for i, arc in enumerate(v.arcs):
        for j, big in enumerate(w.arcs):
            if arc_contains(big, arc):
                out.append((i, j))
                break
        else:
            return None
    return out


def shrink_arc(arc: Arc, eps: Fraction) -> Arc | None:
    """Pull each open end of the arc inwards by ``eps``; None if it vanishes."""
    if arc.kind == FULL:
        return arc
    if arc.kind == LEFTCLOSED:
        return leftclosed(arc.b - eps) if arc.b > eps else None
    if arc.kind == RIGHTCLOSED:
        return rightclosed(arc.a + eps) if arc.a + eps < 1 else None
    if arc.length <= 2 * eps:
        return None
    return proper(arc.space, arc.a + eps, arc.a + arc.length - eps)


def shrink(v: OpenSet, eps: Fraction) -> OpenSet:
    return canonicalize(v.space, [a for a in (shrink_arc(arc, eps) for arc in v.arcs) if a is not None])
