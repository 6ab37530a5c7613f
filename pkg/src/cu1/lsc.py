"""Lower semicontinuous step functions with values in a Cuntz value scale.

A :class:`StepFn` on the interval stores breakpoints ``0 = x_0 < ... < x_k = 1``,
the value on each open piece ``(x_{i-1}, x_i)`` and the value at every
breakpoint.  On the circle the breakpoints are cyclic (an empty list means the
function is constant); on the point there is a single value.

Lower semicontinuity is the condition that every breakpoint value is at most
the values of the two adjacent pieces.  Canonical form drops every breakpoint
whose two pieces and point value coincide, so equality of functions is
equality of dataclasses.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from . import arcs
from .arcs import OpenSet, Space
from .errors import InvalidChain, MixedScaleError, NotRepresentable

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class StepFn:
    space: Space
    scale: object
    breaks: tuple = ()
    pieces: tuple = ()
    points: tuple = ()

    def at(self, x) -> object:
        """Value at the point ``x`` (ignored on the point space)."""
        if self.space is Space.POINT:
            return self.points[0]
        x = Fraction(x)
        if self.space is Space.CIRCLE:
            x %= 1
            if not self.breaks:
                return self.pieces[0]
        i = bisect_left(self.breaks, x)
        if i < len(self.breaks) and self.breaks[i] == x:
            return self.points[i]
        return self.pieces[i - 1]  # i == 0 only on the circle: the wrap piece

    @cached_property
    def support(self) -> OpenSet:
        zero = self.scale.zero
        return _open_from_cells(self.space, self.breaks,
                                [v != zero for v in self.pieces],
                                [v != zero for v in self.points])

    @cached_property
    def values(self) -> list:
        """Distinct values taken, sorted increasingly."""
        vals = set(self.pieces) | set(self.points)
        return sorted(vals, key=lambda v: v._key())

    def level_set(self, v) -> OpenSet:
        """The open set ``{f >= v}``."""
        leq = self.scale.leq
        return _open_from_cells(self.space, self.breaks,
                                [leq(v, w) for w in self.pieces],
                                [leq(v, w) for w in self.points])

    @property
    def is_zero(self) -> bool:
        return not self.support

    def __add__(self, other):
        return lsc_add(self, other)

    def __le__(self, other):
        return lsc_leq(self, other)

    def __repr__(self):
        if self.space is Space.POINT:
            return f"StepFn({self.points[0]!r})"
        if self.space is Space.CIRCLE and not self.breaks:
            return f"StepFn(circle, const {self.pieces[0]!r})"
        parts = []
        for i, x in enumerate(self.breaks):
            parts.append(f"@{x}:{self.points[i]!r}")
            if i < len(self.pieces):
                parts.append(f"{self.pieces[i]!r}")
        return f"StepFn({self.space.value}, {' '.join(parts)})"


# ------------------------------------------------------------------ grids


def _mids(space: Space, grid) -> list[Fraction]:
    """Midpoints of the open pieces of a grid."""
    if space is Space.INTERVAL:
        return [(a + b) / 2 for a, b in zip(grid, grid[1:])]
    if not grid:
        return [Fraction(0)]
    out = [(a + b) / 2 for a, b in zip(grid, grid[1:])]
    out.append(((grid[-1] + grid[0] + 1) / 2) % 1)
    return out


def _merge_grid(space: Space, *fns) -> tuple:
    pts = set()
    for f in fns:
        pts.update(f.breaks)
    return tuple(sorted(pts))


def _cells(f: StepFn, grid) -> tuple[list, list]:
    """Values of ``f`` on the pieces and points of a grid refining its own."""
    if f.space is Space.POINT:
        return [], [f.points[0]]
    if f.breaks == grid:
        return list(f.pieces), list(f.points)
    fb, fp, fq = f.breaks, f.pieces, f.points
    if not fb:  # constant circle function
        return [fp[0]] * max(len(grid), 1), [fp[0]] * len(grid)
    pieces, points = [], []
    j = -1  # index of the last breakpoint of f at or before x; -1 is the wrap piece
    for x in grid:
        while j + 1 < len(fb) and fb[j + 1] <= x:
            j += 1
        points.append(fq[j] if j >= 0 and fb[j] == x else fp[j])
        pieces.append(fp[j] if j < len(fp) else None)
    if f.space is Space.INTERVAL:
        pieces.pop()
    return pieces, points


def _check_same(f: StepFn, g: StepFn):
    if f.space is not g.space:
        raise ValueError(f"functions over {f.space.value} and {g.space.value}")
    if f.scale != g.scale:
        raise MixedScaleError(f"functions over {f.scale!r} and {g.scale!r}")


def _neighbours(space: Space, pieces, i):
    """Pieces adjacent to grid point ``i``."""
    if space is Space.INTERVAL:
        left = pieces[i - 1] if i > 0 else None
        right = pieces[i] if i < len(pieces) else None
        return [v for v in (left, right) if v is not None]
    return [pieces[i - 1], pieces[i]]


def build(space: Space, scale, grid, pieces, points) -> StepFn:
    """Validate lower semicontinuity and return the canonical function."""
    grid, pieces, points = tuple(grid), list(pieces), list(points)
    for v in pieces + points:
        if not scale.owns(v):
            raise MixedScaleError(f"value {v!r} is not in {scale!r}")
    if space is Space.POINT:
        if len(points) != 1 or pieces or grid:
            raise ValueError("a function on the point has exactly one value")
        return StepFn(space, scale, (), (), (points[0],))
    if space is Space.INTERVAL:
        if len(grid) < 2 or grid[0] != 0 or grid[-1] != 1:
            raise ValueError("interval grids run from 0 to 1")
        if len(pieces) != len(grid) - 1 or len(points) != len(grid):
            raise ValueError("grid/value length mismatch")
    else:
        if any(not 0 <= x < 1 for x in grid):
            raise ValueError("circle breakpoints live in [0, 1)")
        if len(pieces) != max(len(grid), 1) or len(points) != len(grid):
            raise ValueError("grid/value length mismatch")
    if any(a >= b for a, b in zip(grid, grid[1:])):
        raise ValueError("breakpoints must increase")
    leq = scale.leq
    for i, w in enumerate(points):
        for v in _neighbours(space, pieces, i):
            if not leq(w, v):
                raise ValueError(f"not lower semicontinuous at {grid[i]}: {w!r} > {v!r}")
    return _canonical(space, scale, grid, pieces, points)


def _canonical(space, scale, grid, pieces, points) -> StepFn:
    k = len(grid)
    if space is Space.INTERVAL:
        keep = [0] + [i for i in range(1, k - 1)
                      if not pieces[i - 1] == pieces[i] == points[i]] + [k - 1]
        new_pieces = [pieces[i] for i in keep[:-1]]
        return StepFn(space, scale, tuple(grid[i] for i in keep), tuple(new_pieces),
                      tuple(points[i] for i in keep))
    if k == 0:
        return StepFn(space, scale, (), (pieces[0],), ())
    keep = [i for i in range(k) if not pieces[i - 1] == pieces[i] == points[i]]
    if not keep:
        return StepFn(space, scale, (), (pieces[0],), ())
    return StepFn(space, scale, tuple(grid[i] for i in keep), tuple(pieces[i] for i in keep),
                  tuple(points[i] for i in keep))


def _tabulate(space: Space, scale, grid, value_at) -> StepFn:
    """Function determined by its values at grid points and piece midpoints."""
    if space is Space.POINT:
        return build(space, scale, (), (), [value_at(Fraction(0))])
    grid = sorted(set(grid) | ({Fraction(0), Fraction(1)} if space is Space.INTERVAL else set()))
    if space is Space.CIRCLE:
        grid = sorted({x % 1 for x in grid})
    return build(space, scale, grid, [value_at(m) for m in _mids(space, grid)],
                 [value_at(x) for x in grid])


def _open_from_cells(space: Space, grid, piece_mask, point_mask) -> OpenSet:
    """The open set made of the marked cells of a grid.

    The marking must be open: a marked point has marked neighbours.
    """
    if space is Space.POINT:
        return arcs.whole(space) if point_mask[0] else arcs.empty(space)
    if all(piece_mask) and all(point_mask):
        return arcs.whole(space)
    raw = []
    k = len(grid)
    if space is Space.INTERVAL:
        for i, on in enumerate(piece_mask):
            if on:
                raw.append(arcs.proper(space, grid[i], grid[i + 1]))
        for i, on in enumerate(point_mask):
            if not on:
                continue
            if i == 0:
                raw.append(arcs.leftclosed(grid[1]))
            elif i == k - 1:
                raw.append(arcs.rightclosed(grid[-2]))
            else:
                raw.append(arcs.proper(space, grid[i - 1], grid[i + 1]))
        return arcs.canonicalize(space, raw)
    if k == 0:
        return arcs.empty(space)
    for i, on in enumerate(piece_mask):
        if on:
            raw.append(arcs.proper(space, grid[i], grid[(i + 1) % k]))
    for i, on in enumerate(point_mask):
        if on:
            raw.append(arcs.proper(space, grid[i - 1], grid[(i + 1) % k]))
    return arcs.canonicalize(space, raw)


# ------------------------------------------------------------ constructors


def zero(space: Space, scale) -> StepFn:
    return constant(space, scale, scale.zero)


def constant(space: Space, scale, v) -> StepFn:
    if space is Space.INTERVAL:
        return build(space, scale, (Fraction(0), Fraction(1)), [v], [v, v])
    if space is Space.CIRCLE:
        return build(space, scale, (), [v], [])
    return build(space, scale, (), (), [v])


def indicator(v: OpenSet, value, scale) -> StepFn:
    """``value`` on the open set ``v`` and zero elsewhere."""
    z = scale.zero
    return _tabulate(v.space, scale, v.endpoints(), lambda x: value if v.contains(x) else z)


def from_pieces(space: Space, scale, pieces, points=None) -> StepFn:
    """Build from ``[(a, b, value), ...]`` open pieces and a ``{x: value}`` map.

    Uncovered regions are zero.  Point values not given default to the
    smaller of the two neighbouring values.  On the circle a piece with
    ``a > b`` wraps through 0 and ``a == b`` is the circle minus a point.
    """
    points = {Fraction(x) % 1 if space is Space.CIRCLE else Fraction(x): v
              for x, v in (points or {}).items()}
    if space is Space.POINT:
        vals = list(points.values()) + [v for *_, v in pieces]
        return build(space, scale, (), (), [vals[0] if vals else scale.zero])
    opens = []
    for a, b, v in pieces:
        arc = arcs.proper(space, a, b)
        opens.append((arcs.canonicalize(space, [arc]), v))
    grid = set(points)
    for o, _ in opens:
        grid |= o.endpoints()
    if space is Space.INTERVAL:
        grid |= {Fraction(0), Fraction(1)}
    grid = sorted(grid)
    mids = _mids(space, grid)

    def piece_value(m):
        hits = [v for o, v in opens if o.contains(m)]
        if len(hits) > 1:
            raise ValueError(f"overlapping pieces at {m}")
        return hits[0] if hits else scale.zero

    pvals = [piece_value(m) for m in mids]
    tmp = [None] * len(grid)
    for i, x in enumerate(grid):
        if x in points:
            tmp[i] = points[x]
        else:
            tmp[i] = min(_neighbours(space, pvals, i), key=lambda w: w._key())
    return build(space, scale, grid, pvals, tmp)


# -------------------------------------------------------------- operations


def _pointwise(f: StepFn, g: StepFn, op) -> StepFn:
    _check_same(f, g)
    if f.space is Space.POINT:
        return build(f.space, f.scale, (), (), [op(f.points[0], g.points[0])])
    grid = _merge_grid(f.space, f, g)
    fp, fq = _cells(f, grid)
    gp, gq = _cells(g, grid)
    return build(f.space, f.scale, grid, [op(a, b) for a, b in zip(fp, gp)],
                 [op(a, b) for a, b in zip(fq, gq)])


def lsc_add(f: StepFn, g: StepFn) -> StepFn:
    return _pointwise(f, g, f.scale.add)


def lsc_max(f: StepFn, g: StepFn) -> StepFn:
    return _pointwise(f, g, lambda a, b: b if f.scale.leq(a, b) else a)


def lsc_leq(f: StepFn, g: StepFn) -> bool:
    _check_same(f, g)
    leq = f.scale.leq
    if f.space is Space.POINT:
        return leq(f.points[0], g.points[0])
    grid = _merge_grid(f.space, f, g)
    fp, fq = _cells(f, grid)
    gp, gq = _cells(g, grid)
    return all(map(leq, fp, gp)) and all(map(leq, fq, gq))


def upper_envelope(f: StepFn) -> list:
    """At each breakpoint, the largest value of ``f`` on small neighbourhoods."""
    key = lambda v: v._key()  # noqa: E731
    return [max([w] + _neighbours(f.space, f.pieces, i), key=key) for i, w in enumerate(f.points)]


def lsc_waybelow(f: StepFn, g: StepFn, *, closure: bool = True) -> bool:
    """``f << g``.

    Decided pointwise on the merged grid: on every piece the value of ``f``
    must be way below that of ``g``, and at every breakpoint the largest value
    ``f`` takes nearby (its upper envelope) must be way below ``g`` there.  On
    the extended naturals this is the level-set criterion: ``f`` is finite and
    the closure of each ``{f >= t}`` sits inside ``{g >= t}``.

    ``closure=False`` compares point values directly and exists only as a
    deliberately broken variant for negative controls.
    """
    _check_same(f, g)
    wb = f.scale.waybelow
    if f.space is Space.POINT:
        return wb(f.points[0], g.points[0])
    grid = _merge_grid(f.space, f, g)
    fp, fq = _cells(f, grid)
    gp, gq = _cells(g, grid)
    if not all(map(wb, fp, gp)):
        return False
    if closure:
        key = lambda v: v._key()  # noqa: E731
        fq = [max([w] + _neighbours(f.space, fp, i), key=key) for i, w in enumerate(fq)]
    return all(map(wb, fq, gq))


def is_full_in(f: StepFn, v: OpenSet) -> bool:
    return f.support == v


def scale_values(f: StepFn, c) -> StepFn:
    mul = f.scale.mul
    return StepFn(f.space, f.scale, f.breaks, tuple(mul(v, c) for v in f.pieces),
                  tuple(mul(v, c) for v in f.points)) if c else zero(f.space, f.scale)


def map_values(f: StepFn, scale, fn) -> StepFn:
    """Apply a monotone value map, landing in ``scale``."""
    return build(f.space, scale, f.breaks, [fn(v) for v in f.pieces], [fn(v) for v in f.points])


def top_on(v: OpenSet, scale) -> StepFn:
    return indicator(v, scale.top, scale)


# ------------------------------------------------------------ approximation


@lru_cache(maxsize=8192)
def approximate(f: StepFn, n: int) -> StepFn:
    """The n-th cut-down of ``f``.

    Every level set ``{f >= v}`` is shrunk by ``1/n`` at each open end and its
    level replaced by the largest grid value ``a(v, n)`` way below ``v``
    (``min(v, n)`` on the extended naturals).  The result is
    ``max_v a(v, n) 1_{shrink(f >= v)}``; the sequence is ``<<``-increasing
    with supremum ``f``.
    """
    if n < 1:
        raise ValueError("approximation index starts at 1")
    scale = f.scale
    if f.space is Space.POINT:
        return build(f.space, scale, (), (), [scale.approx(f.points[0], n)])
    eps = Fraction(1, n)
    levels = []
    for v in f.values:
        if v == scale.zero:
            continue
        a = scale.approx(v, n)
        if a == scale.zero:
            continue
        shrunk = arcs.shrink(f.level_set(v), eps)
        if shrunk:
            levels.append((a, shrunk))
    if not levels:
        return zero(f.space, scale)
    grid = set()
    for _, s in levels:
        grid |= s.endpoints()

    def value_at(x):
        best = scale.zero
        for a, s in levels:  # increasing in a
            if s.contains(x):
                best = a
        return best

    return _tabulate(f.space, scale, grid, value_at)


# ----------------------------------------------------------------- chains


@dataclass(frozen=True)
class ApproximationChain:
    """The chain ``approximate(f, n)``, n = 1, 2, ...; its supremum is ``f``."""

    f: StepFn

    def term(self, n: int) -> StepFn:
        return approximate(self.f, n)


@dataclass(frozen=True)
class LinearChain:
    """The chain ``base + n * step``; its supremum is ``base + inf * 1_{supp step}``."""

    base: StepFn
    step: StepFn

    def term(self, n: int) -> StepFn:
        return lsc_add(self.base, scale_values(self.step, n))


def lsc_sup_chain(chain) -> StepFn:
    """Supremum of an increasing chain.

    A plain list stands for an eventually constant sequence and must end with
    a repeated term (a one-element list is a constant chain); otherwise the
    supremum is not determined by the data and :class:`NotRepresentable` is
    raised.
    """
    if isinstance(chain, ApproximationChain):
        return chain.f
    if isinstance(chain, LinearChain):
        _check_same(chain.base, chain.step)
        return lsc_add(chain.base, top_on(chain.step.support, chain.step.scale))
    chain = list(chain)
    if not chain:
        raise InvalidChain("empty chain")
    for a, b in zip(chain, chain[1:]):
        if not lsc_leq(a, b):
            raise InvalidChain(f"chain is not increasing: {a!r} > {b!r}")
    if len(chain) > 1 and chain[-1] != chain[-2]:
        raise NotRepresentable("finite chain has not stabilized; supremum undetermined")
    return chain[-1]


def grid_points(space: Space, den: int) -> list[Fraction]:
    """All points of the base space with denominator dividing ``den``."""
    if space is Space.POINT:
        return [Fraction(0)]
    top = den + 1 if space is Space.INTERVAL else den
    return [Fraction(i, den) for i in range(top)]
