"""Compact elements, the Grothendieck construction, H_* and the recovery squares.

For every catalog model the compact elements are the constants ``q 1_X``
(``q`` in N or N[1/p]) paired with a coefficient of ``K1(X)``.  When ``K1(X)``
is nonzero the zero element carries no coefficient, so the monoid is
*pointed*: ``{0} u ((P minus 0) x G)`` rather than ``P x G``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import lsc
from .arcs import Space
from .core import Cu1Element, Cu1Model, Cu1Morphism, morphism_max
from .errors import NotCancellative
from .values import (EXTNAT, FgAbGroup, IntegerRing, PadicRing, UhfScale,
                     UhfValue, fraction_str)

# ------------------------------------------------------------ the monoid S_c


@dataclass(frozen=True)
class CompactMonoid:
    """``P x G`` (``pointed=False``) or ``{0} u ((P minus 0) x G)``.

    ``base`` is ``"N"``, ``"N[1/p]"`` or ``"0"``; ``group`` is the coefficient
    group of ``K1(X)`` or ``None``.  Elements are pairs ``(q, g)`` with
    ``g = None`` when there is no group.
    """

    base: str
    group: object = None
    pointed: bool = False
    p: int | None = None

    @property
    def zero(self):
        return (Fraction(0), self._gzero)

    @property
    def unit(self):
        return (Fraction(0) if self.base == "0" else Fraction(1), self._gzero)

    @property
    def _gzero(self):
        return None if self.group is None else self.group.zero

    def _base_ok(self, q) -> bool:
        if self.base == "0":
            return q == 0
        if q < 0:
            return False
        if self.base == "N":
            return q.denominator == 1
        d = q.denominator
        while d % self.p == 0:
            d //= self.p
        return d == 1

    def contains(self, e) -> bool:
        q, g = e
        if not self._base_ok(Fraction(q)):
            return False
        if self.group is None:
            return g is None
        try:
            g = self.group.check(g)
        except (ValueError, TypeError):
            return False
        return not (self.pointed and q == 0 and g != self.group.zero)

    def add(self, a, b):
        g = None if self.group is None else self.group.add(a[1], b[1])
        return (a[0] + b[0], g)

    def leq(self, a, b) -> bool:
        """Order inherited from Cu1: coefficients must agree unless ``a`` is 0."""
        if a == self.zero:
            return b[1] == self._gzero
        return a[0] <= b[0] and a[1] == b[1]

    def describe(self) -> str:
        base = self.base.replace("p", str(self.p)) if self.p else self.base
        if self.group is None:
            return base
        g = self.group.name
        if self.pointed:
            return f"{{0}} u ({base}+ x {g})"
        return f"{base} x {g}"

    def elements(self, bound: int = 3, den: int = 1):
        """Small elements: ``q = i/den`` with ``0 <= q <= bound``, group
        coordinates bounded by ``bound``."""
        if self.base == "0":
            qs = [Fraction(0)]
        else:
            den = den if self.base != "N" else 1
            qs = [Fraction(i, den) for i in range(bound * den + 1)]
        for q in qs:
            for g in _group_elements(self.group, bound):
                e = (q, g)
                if self.contains(e):
                    yield e


def _group_elements(group, bound):
    if group is None:
        return [None]
    if isinstance(group, FgAbGroup):
        return list(group.elements(bound))
    if isinstance(group, PadicRing):
        return [Fraction(i, group.p) for i in range(-bound * group.p, bound * group.p + 1)]
    return list(range(-bound, bound + 1))


def _base_of(scale):
    if isinstance(scale, UhfScale):
        return "N[1/p]", scale.p
    if scale == EXTNAT:
        return "N", None
    return "0", None


def compacts_of(model: Cu1Model) -> CompactMonoid:
    """Closed form of ``S_c`` for a catalog model."""
    base, p = _base_of(model.scale)
    if model.kind == "zero" or base == "0":
        return CompactMonoid("0")
    group = model.k1(model.full).ring if model.k1(model.full).rank else None
    if group is not None and group.is_trivial:
        group = None
    return CompactMonoid(base, group, pointed=group is not None, p=p)


def embed(model: Cu1Model, e) -> Cu1Element:
    """The element of ``model`` named by a compact pair ``(q, g)``."""
    q, g = e
    if q == 0:
        return model.zero
    scale = model.scale
    v = UhfValue(scale.p, False, Fraction(q)) if isinstance(scale, UhfScale) else scale.mul(scale.unit, int(q))
    k = None if g is None else [g]
    return model.constant(v, k)


def read_compact(model: Cu1Model, s: Cu1Element):
    """Inverse of :func:`embed`; ``None`` when ``s`` is not compact."""
    if not model.is_compact(s):
        return None
    m = compacts_of(model)
    if s.x.is_zero:
        return m.zero
    vals = s.x.values
    if len(vals) != 1:
        return None
    v = vals[0]
    q = Fraction(v.n) if hasattr(v, "n") else v.mag
    g = s.k[0] if m.group is not None else None
    return (q, g)


# ------------------------------------------------------- Grothendieck groups


def _ring_name(base, p):
    return {"N": "Z", "N[1/p]": f"Z[1/{p}]", "0": "0"}[base]


@dataclass(frozen=True)
class ScaledGroup:
    """``Gr(S_c)`` with its positive cone and order unit.

    Elements are pairs ``(a, g)``: ``a`` in Z, Z[1/p] or 0 and ``g`` in the
    coefficient group (``None`` when absent).
    """

    monoid: CompactMonoid

    @property
    def zero(self):
        return self.monoid.zero

    @property
    def unit(self):
        return self.monoid.unit

    def add(self, x, y):
        return self.monoid.add(x, y)

    def neg(self, x):
        g = None if self.monoid.group is None else self.monoid.group.neg(x[1])
        return (-x[0], g)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def in_cone(self, x) -> bool:
        return self.monoid.contains(x)

    def split(self, x):
        """Compacts ``(s, t)`` with ``s - t = x``."""
        a, g = x
        m = self.monoid
        if m.base == "0":
            return m.zero, m.zero
        n = Fraction(max(1, math.floor(-a) + 1))
        return (a + n, g), (n, m._gzero)

    @property
    def group_name(self) -> str:
        m = self.monoid
        r = _ring_name(m.base, m.p)
        if m.group is None:
            return r
        g = m.group.name
        if g == r:
            return f"{r}^2"
        return f"{r} x {g}"

    def to_json(self):
        m = self.monoid
        unit = _num(self.unit[0])
        if m.group is not None:
            unit = [unit] + _flat(m.group, self.unit[1])
        return {"group": self.group_name, "cone": m.describe(), "unit": unit}


def _num(q):
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else fraction_str(q)


def _flat(group, g):
    if isinstance(group, FgAbGroup):
        return list(g)
    return [_num(g)]


def grothendieck(m: CompactMonoid, *, bound: int = 2) -> ScaledGroup:
    """Formal differences of ``m``; cancellation is witnessed on small elements."""
    small = list(m.elements(bound))
    for s, t, u in product(small, repeat=3):
        if m.add(s, u) == m.add(t, u) and s != t:
            raise NotCancellative(f"{s} + {u} == {t} + {u}")
    return ScaledGroup(m)


def pair_classes(m: CompactMonoid, bound: int = 3) -> dict:
    """Brute-force Grothendieck: classes of pairs ``(s, t)`` under
    ``s + t' == s' + t``, keyed by a representative pair."""
    pairs = [(s, t) for s in m.elements(bound) for t in m.elements(bound)]
    classes: list[list] = []
    for pr in pairs:
        for cls in classes:
            s2, t2 = cls[0]
            if m.add(pr[0], t2) == m.add(s2, pr[1]):
                cls.append(pr)
                break
        else:
            classes.append([pr])
    return {cls[0]: cls for cls in classes}


def h_star(model: Cu1Model) -> ScaledGroup:
    return grothendieck(compacts_of(model))


# --------------------------------------------------------------- K_* oracles


@dataclass(frozen=True)
class KStar:
    """``K0 (+) K1`` with the graded order: ``(a, b) >= 0`` iff ``a > 0`` or
    ``(a, b) = 0``, and order unit ``[1]``."""

    k0: str  # "Z", "Z[1/p]" (with the prime) or "0"
    k1: object = None  # coefficient group, None for K1 = 0
    p: int | None = None

    def positive(self, x) -> bool:
        a, b = x
        if self.k1 is None:
            return a >= 0
        return a > 0 or (a == 0 and b == self.k1.zero)

    @property
    def unit(self):
        return (Fraction(0) if self.k0 == "0" else Fraction(1), None if self.k1 is None else self.k1.zero)


def k_star_oracle(model: Cu1Model) -> KStar:
    """K-theory of the underlying algebra, recorded per model.

    interval   C[0,1]: contractible, K0 = Z, K1 = 0.
    circle     C(T): K0 = Z (rank), K1 = Z (winding number of z).
    uhf-*      tensor with M_{p^inf}: Kunneth multiplies both by Z[1/p].
    af / simple: K0 from the scale, K1 as declared by the model.
    """
    kind = model.kind
    if kind == "zero":
        return KStar("0")
    if kind == "interval":
        return KStar("Z")
    if kind == "circle":
        return KStar("Z", IntegerRing())
    if kind == "uhf-interval":
        return KStar(f"Z[1/{model.scale.p}]", p=model.scale.p)
    if kind == "uhf-circle":
        return KStar(f"Z[1/{model.scale.p}]", PadicRing(model.scale.p), model.scale.p)
    k0 = f"Z[1/{model.scale.p}]" if isinstance(model.scale, UhfScale) else "Z"
    p = model.scale.p if isinstance(model.scale, UhfScale) else None
    if kind == "af":
        return KStar(k0, p=p)
    group = model.ring if not model.ring.is_trivial else None
    return KStar(k0, group, p)


def compare_with_oracle(model: Cu1Model, bound: int = 3) -> list[str]:
    """Disagreements between ``h_star(model)`` and the K_* oracle on a box of
    group elements; empty when they match."""
    gr = h_star(model)
    ks = k_star_oracle(model)
    m = gr.monoid
    bad = []
    if _ring_name(m.base, m.p) != ks.k0:
        bad.append(f"K0 {_ring_name(m.base, m.p)} != {ks.k0}")
    if (m.group is None) != (ks.k1 is None) or (m.group is not None and m.group != ks.k1):
        bad.append(f"K1 {m.group!r} != {ks.k1!r}")
        return bad
    if gr.unit != ks.unit:
        bad.append(f"unit {gr.unit} != {ks.unit}")
    den = m.p if m.p else 1
    aa = [Fraction(i, den) for i in range(-bound * den, bound * den + 1)] if m.base != "0" else [Fraction(0)]
    for a in aa:
        for g in _group_elements(m.group, bound):
            x = (a, g)
            if gr.in_cone(x) != ks.positive(x):
                bad.append(f"cone disagrees at {x}")
    return bad


# ------------------------------------------------------------- induced maps


def compact_map(alpha: Cu1Morphism):
    """``alpha_c`` on compact pairs."""
    def f(e):
        out = read_compact(alpha.target, alpha.apply(embed(alpha.source, e)))
        if out is None:
            raise ValueError(f"{alpha.kind} does not preserve compactness at {e}")
        return out
    return f


def gr_map(alpha: Cu1Morphism):
    """``Gr(alpha_c)``, evaluated through differences of compacts."""
    src, tgt = h_star(alpha.source), h_star(alpha.target)
    ac = compact_map(alpha)

    def f(x):
        s, t = src.split(x)
        return tgt.sub(ac(s), ac(t))
    return f


def _declared_k1(alpha: Cu1Morphism):
    """The K1(X) -> K1(Y) map each catalog kind stands for."""
    tgt = alpha.target
    if tgt.k1(tgt.full).rank == 0 or alpha.source.k1(alpha.source.full).rank == 0:
        return lambda g: tgt.k1(tgt.full).zero
    ring = tgt.ring
    kind = alpha.kind
    if kind in ("identity", "rotate"):
        return lambda g: tuple(g)
    if kind == "zero":
        return lambda g: (ring.zero,)
    m = alpha.k1_factor if kind == "scale" else -1
    return lambda g: tuple(ring.mul(m, x) for x in g)


def _declared_value(alpha: Cu1Morphism, v):
    kind = alpha.kind
    scale = alpha.target.scale
    if kind == "zero":
        return scale.zero
    if kind == "scale":
        return scale.mul(v, alpha.c)
    return v


def _source_point(alpha: Cu1Morphism, y):
    kind = alpha.kind
    if kind == "rotate":
        return (y - alpha.shift) % 1
    if kind == "reflect":
        return (1 - y) % 1 if alpha.source.space is Space.CIRCLE else 1 - y
    return y


def _probe_points(f, g):
    pts = {Fraction(0), Fraction(1, 2)}
    for h in (f, g):
        bs = list(h.breaks)
        pts |= set(bs)
        for a, b in zip(bs, bs[1:] + [bs[0] + 1] if bs else []):
            pts.add(((a + b) / 2) % 1 if h.space is Space.CIRCLE else (a + b) / 2)
    if f.space is Space.INTERVAL or g.space is Space.INTERVAL:
        pts.add(Fraction(1))
    return sorted(p for p in pts if 0 <= p <= 1)


def check_recovery_square(alpha: Cu1Morphism, samples=None, *, seed: int = 0, count: int = 40) -> dict:
    """Check the squares relating ``alpha`` to its images under the functors.

    ``nu_plus``   the Cu part of ``alpha`` on positive elements agrees with
                  the pointwise formula of its kind;
    ``nu_c``      compact elements go to compact elements;
    ``nu_max``    ``alpha(z) + e`` on maximal elements equals the declared
                  K1(X) -> K1(Y) map, and so does ``morphism_max``;
    ``h_star``    ``Gr(alpha_c)`` agrees with the K_* map of the kind.
    """
    from .axiomlab import SampleConfig, Sampler  # sampling lives with the harness

    src, tgt = alpha.source, alpha.target
    if samples is None:
        samples = Sampler(src, SampleConfig(seed=seed, samples=count)).elements(count)
    squares = []

    # nu_plus
    ok, why = True, None
    for s in samples:
        s = Cu1Element(s.x, src.k1(s.ideal).zero)
        try:
            t = alpha.apply(s)
        except Exception as exc:  # noqa: BLE001 - reported, not raised
            ok, why = False, f"{type(exc).__name__}: {exc}"
            break
        if not tgt.is_positive(t):
            ok, why = False, f"image of positive {s!r} is not positive"
            break
        for y in _probe_points(s.x, t.x):
            if tgt.space is Space.POINT:
                want = _declared_value(alpha, s.x.at(0))
            else:
                want = _declared_value(alpha, s.x.at(_source_point(alpha, y)))
            if t.x.at(y) != want:
                ok, why = False, f"value at {y}: {t.x.at(y)!r} != {want!r}"
                break
        if not ok:
            break
    squares.append(_square("nu_plus", ok, why))

    # nu_c
    mono = compacts_of(src)
    ok, why = True, None
    for e in mono.elements(2, den=src.scale.p if isinstance(src.scale, UhfScale) else 1):
        t = alpha.apply(embed(src, e))
        if not tgt.is_compact(t):
            ok, why = False, f"compact {e} maps to non-compact {t!r}"
            break
    squares.append(_square("nu_c", ok, why))

    # nu_max
    ok, why = True, None
    declared = _declared_k1(alpha)
    gfull = src.k1(src.full)
    hmax = morphism_max(alpha)
    for g in _k1_box(gfull):
        z = Cu1Element(src.top.x, g)
        got = tgt.add(alpha.apply(z), tgt.top)
        want = declared(g)
        if got != Cu1Element(tgt.top.x, want) or hmax(g) != want:
            ok, why = False, f"K1 {list(g)}: got {list(got.k)}, matrix {list(hmax(g))}, declared {list(want)}"
            break
    squares.append(_square("nu_max", ok, why))

    # h_star
    ok, why, unit = True, None, None
    hs, ht = h_star(src), h_star(tgt)
    tgroup = ht.monoid.group
    try:
        f = gr_map(alpha)
        for x in _gr_box(hs):
            a, g = x
            if tgroup is None:
                k = None
            elif g is None:
                k = tgroup.zero
            else:
                k = declared((g,))[0]
            want = (_gr_value(alpha, a), k)
            got = f(x)
            if got != want:
                ok, why = False, f"Gr map at {x}: {got} != {want}"
                break
        u = f(hs.unit)
        unit = "preserved" if u == ht.unit else ("below" if ht.in_cone(ht.sub(ht.unit, u)) else "not below")
    except Exception as exc:  # noqa: BLE001
        ok, why = False, f"{type(exc).__name__}: {exc}"
    squares.append(_square("h_star", ok, why))
    return {"squares": squares, "unit": unit}


def _gr_value(alpha, a):
    if alpha.kind == "zero":
        return Fraction(0)
    if alpha.kind == "scale":
        return a * Fraction(alpha.c)
    return a


def _square(name, ok, why):
    out = {"name": name, "pass": ok}
    if why:
        out["detail"] = why
    return out


def _k1_box(g):
    if not g.rank:
        return [()]
    return [(x,) for x in _group_elements(g.ring, 2)]


def _gr_box(gr: ScaledGroup):
    m = gr.monoid
    den = m.p if m.p else 1
    aa = [Fraction(i, den) for i in range(-2 * den, 2 * den + 1)] if m.base != "0" else [Fraction(0)]
    return [(a, g) for a in aa for g in _group_elements(m.group, 2)]
