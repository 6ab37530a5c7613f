"""Reference implementations that avoid the library's internal grid walks.

Everything here works by sampling on a grid fine enough to contain every
breakpoint, so a step function is pinned down by its values at grid points
and cell midpoints.
"""
from fractions import Fraction
from math import lcm

from cu1 import lsc
from cu1.arcs import Space

N_SEQ = 16


def _den(fs):
    d = 1
    for f in fs:
        for b in f.breaks:
            d = lcm(d, b.denominator)
    return 2 * d


def sample_points(space, fs):
    """Breakpoints and cell midpoints of a common refinement."""
    if space is Space.POINT:
        return [Fraction(0)], []
    d = _den(fs)
    top = d if space is Space.INTERVAL else d - 1
    pts = [Fraction(i, d) for i in range(top + 1)]
    mids = [Fraction(2 * i + 1, 2 * d) for i in range(d)]
    return pts, mids


def dense_leq(f, g) -> bool:
    pts, mids = sample_points(f.space, [f, g])
    leq = f.scale.leq
    return all(leq(f.at(x), g.at(x)) for x in pts + mids)


def dense_add(f, g, x):
    return f.scale.add(f.at(x), g.at(x))


def _nearby(space, pts, mids, i):
    """Cells adjacent to the i-th grid point."""
    if space is Space.INTERVAL:
        return [mids[j] for j in (i - 1, i) if 0 <= j < len(mids)]
    return [mids[i - 1], mids[i]]


def levelset_waybelow(f, g) -> bool:
    """Extended naturals only: ``f`` is bounded and for each level ``t`` the
    closure of ``{f >= t}`` sits inside ``{g >= t}``."""
    if any(not v.is_finite for v in f.values):
        return False
    if f.space is Space.POINT:
        return f.points[0] <= g.points[0]
    pts, mids = sample_points(f.space, [f, g])
    for t in f.values:
        if t.n == 0:
            continue
        for x in mids:
            if f.at(x).n >= t.n and not g.at(x) >= t:
                return False
        for i, x in enumerate(pts):
            in_closure = f.at(x).n >= t.n or any(f.at(m).n >= t.n for m in _nearby(f.space, pts, mids, i))
            if in_closure and not g.at(x) >= t:
                return False
    return True


def grid_key(v):
    """Integer stand-in for an extended natural."""
    return 1 << 30 if v.n is None else v.n


def grid_vector(f, den: int):
    """Values of ``f`` at ``i / den``; exact for functions whose breakpoints
    have denominators dividing ``den / 2``."""
    top = den + 1 if f.space is Space.INTERVAL else den
    return tuple(grid_key(f.at(Fraction(i, den))) for i in range(top))


def sequential_waybelow(f, g, n_max: int = N_SEQ) -> bool:
    """``f`` sits below some term of the cut-down chain of ``g``.

    The chain increases, so it is enough to look at the last term; scanning
    every index keeps the oracle honest if that ever breaks.
    """
    return any(dense_leq(f, lsc.approximate(g, n)) for n in range(1, n_max + 1))


def components(v, extra=()):
    """Connected components of an open set found by sampling membership on a
    grid through every endpoint; each is returned as a list of sample points."""
    space = v.space
    if space is Space.POINT:
        return [[Fraction(0)]] if v else []
    den = 1
    for e in list(v.endpoints()) + list(extra):
        den = lcm(den, e.denominator)
    n = den + 1 if space is Space.INTERVAL else den
    xs = [Fraction(i, 2 * den) for i in range(2 * n - (1 if space is Space.INTERVAL else 0))]
    inside = [v.contains(x) for x in xs]
    runs, cur = [], []
    for x, on in zip(xs, inside):
        if on:
            cur.append(x)
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    if space is Space.CIRCLE and len(runs) > 1 and inside[0] and inside[-1]:
        runs[0] = runs.pop() + runs[0]
    return sorted(runs, key=lambda c: c[0])


def rank_oracle(v) -> int:
    """Components not touching the ends of the interval (every component on
    the circle and the point)."""
    comps = components(v)
    if v.space is Space.INTERVAL:
        return sum(1 for c in comps if c[0] != 0 and c[-1] != 1)
    return len(comps)


def inclusion_matrix(v, w):
    """Rows: components of ``w``; columns: components of ``v``; entry 1 when
    the component of ``v`` sits in the component of ``w``.  Only components
    counted by :func:`rank_oracle` appear."""
    common = v.endpoints() | w.endpoints()

    def carriers(u):
        comps = components(u, common)
        if u.space is Space.INTERVAL:
            comps = [c for c in comps if c[0] != 0 and c[-1] != 1]
        return comps

    cv, cw = carriers(v), carriers(w)
    return tuple(tuple(1 if set(c) <= set(d) else 0 for c in cv) for d in cw)
