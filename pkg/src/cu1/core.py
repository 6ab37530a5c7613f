"""The unitary Cuntz semigroup in the ideal-lattice picture.

An element is a pair ``(x, k)``: ``x`` a step function (the Cuntz part) and
``k`` a coefficient vector in K1 of the ideal ``supp(x)``.  With ``delta`` the
inclusion-induced maps on K1,

    (x, k) + (y, l) = (x + y, delta(k) + delta(l))
    (x, k) <= (y, l)  iff  x <= y and delta(k) = l
    (x, k) << (y, l)  iff  x << y and delta(k) = l

A model fixes the base space, the value scale and the K1 coefficients.  The
simple and AF models are the point-space instances (with and without a K1
group), so one code path serves every model.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import arcs, lsc
from .arcs import OpenSet, Space
from .errors import (InconsistentChain, InvalidChain, ModelMismatch,
                     NaturalityViolation, NotRepresentable)
from .ktheory import GroupHom, K1Group, delta_hom, k1_of_ideal
from .lsc import StepFn
from .values import (EXTNAT, FgAbGroup, IntegerRing, PadicRing, TrivialScale,
                     UhfScale)

FAULTS = ("waybelow-no-closure", "delta-nonfunctorial")


@dataclass(frozen=True)
class Cu1Element:
    x: StepFn
    k: tuple = ()

    @property
    def ideal(self) -> OpenSet:
        return self.x.support

    def __repr__(self):
        return f"({self.x!r}, {list(self.k)})"


@dataclass(frozen=True)
class Cu1Model:
    kind: str
    space: Space
    scale: object
    ring: object = None
    fault: str | None = None
    params: tuple = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.fault is not None and self.fault not in FAULTS:
            raise ValueError(f"unknown fault {self.fault!r}")

    # ---------------------------------------------------------- structure

    @property
    def full(self) -> OpenSet:
        return arcs.whole(self.space)

    def k1(self, v: OpenSet) -> K1Group:
        key = ("k1", v)
        if key not in self._cache:
            self._cache[key] = k1_of_ideal(self.space, v, self.ring)
        return self._cache[key]

    def delta(self, v: OpenSet, w: OpenSet) -> GroupHom:
        key = ("delta", v, w)
        if key not in self._cache:
            self._cache[key] = delta_hom(self.k1(v), self.k1(w), fault=self.fault)
        return self._cache[key]

    def push(self, k, v: OpenSet, w: OpenSet) -> tuple:
        if v == w and self.fault is None:
            return tuple(k)
        return self.delta(v, w)(k)

    def element(self, x: StepFn, k=None) -> Cu1Element:
        if x.space is not self.space or x.scale != self.scale:
            raise ModelMismatch(f"{x!r} does not belong to the {self.kind} model")
        g = self.k1(x.support)
        return Cu1Element(x, g.zero if k is None else g.check(k))

    def check(self, s: Cu1Element) -> Cu1Element:
        if not isinstance(s, Cu1Element):
            raise ModelMismatch(f"not an element: {s!r}")
        return self.element(s.x, s.k)

    @property
    def zero(self) -> Cu1Element:
        return Cu1Element(lsc.zero(self.space, self.scale), ())

    @property
    def top(self) -> Cu1Element:
        """The neutral element ``(inf 1_X, 0)`` of the maximal elements."""
        return self.element(lsc.constant(self.space, self.scale, self.scale.top))

    @property
    def unit(self) -> Cu1Element:
        return self.element(lsc.constant(self.space, self.scale, self.scale.unit))

    def constant(self, v, k=None) -> Cu1Element:
        return self.element(lsc.constant(self.space, self.scale, v), k)

    # --------------------------------------------------------- operations

    def add(self, s: Cu1Element, t: Cu1Element) -> Cu1Element:
        x = lsc.lsc_add(s.x, t.x)
        w = x.support
        g = self.k1(w)
        k = g.add(self.push(s.k, s.ideal, w), self.push(t.k, t.ideal, w)) if g.rank else ()
        return Cu1Element(x, k)

    def sum(self, items) -> Cu1Element:
        out = self.zero
        for s in items:
            out = self.add(out, s)
        return out

    def _k_matches(self, s: Cu1Element, t: Cu1Element) -> bool:
        if not s.ideal.subset_of(t.ideal):
            return False
        return self.push(s.k, s.ideal, t.ideal) == tuple(t.k)

    def leq(self, s: Cu1Element, t: Cu1Element) -> bool:
        return lsc.lsc_leq(s.x, t.x) and self._k_matches(s, t)

    def waybelow(self, s: Cu1Element, t: Cu1Element) -> bool:
        closure = self.fault != "waybelow-no-closure"
        return lsc.lsc_waybelow(s.x, t.x, closure=closure) and self._k_matches(s, t)

    def neg_k(self, s: Cu1Element) -> Cu1Element:
        """``(x, -k)``, the positive-directedness partner of ``(x, k)``."""
        return Cu1Element(s.x, self.k1(s.ideal).neg(s.k))

    def is_positive(self, s: Cu1Element) -> bool:
        return tuple(s.k) == self.k1(s.ideal).zero

    def is_compact(self, s: Cu1Element) -> bool:
        return self.waybelow(s, s)

    def is_maximal(self, s: Cu1Element) -> bool:
        return s.x == self.top.x

    def classify(self, s: Cu1Element) -> dict:
        return {"positive": self.is_positive(s), "compact": self.is_compact(s),
                "maximal": self.is_maximal(s)}

    def j_map(self, s: Cu1Element) -> Cu1Element:
        return self.add(s, self.top)

    # ------------------------------------------------------ approximation

    def stable_index(self, s: Cu1Element) -> int:
        """First ``n`` from which ``approximate(x, n)`` keeps every support arc."""
        x = s.x
        if x.is_zero:
            return 1
        key = ("stable", x)
        if key in self._cache:
            return self._cache[key]
        low = min((v for v in x.values if v != self.scale.zero), key=lambda v: v._key())
        supp = x.support
        n = 1
        while self.scale.approx(low, n) == self.scale.zero:
            n += 1
        for arc in supp.arcs:  # 1/n must fit inside every open end
            if arc.kind == arcs.PROPER:
                n = max(n, int(2 / arc.length) + 1)
            elif arc.kind == arcs.LEFTCLOSED:
                n = max(n, int(1 / arc.b) + 1)
            elif arc.kind == arcs.RIGHTCLOSED:
                n = max(n, int(1 / (1 - arc.a)) + 1)
        while len(lsc.approximate(x, n).support) != len(supp):
            n += 1
        self._cache[key] = n
        return n

    def approximate(self, s: Cu1Element, n: int) -> Cu1Element:
        """Chain ``(approximate(x, m), k)`` with ``m = n0 + n - 1``.

        From ``n0`` on the support arcs of the cut-downs correspond one to one
        with those of ``x``, so the coefficient vector is carried along.
        """
        m = self.stable_index(s) + n - 1
        y = lsc.approximate(s.x, m)
        return Cu1Element(y, pull_back(self, s.k, y.support, s.ideal))

    def sup_chain(self, chain) -> Cu1Element:
        if isinstance(chain, ApproxChain):
            return chain.s
        if isinstance(chain, LinearChain):
            if not self.is_positive(chain.step):
                raise InvalidChain("the step of a linear chain must be positive")
            x = lsc.lsc_sup_chain(lsc.LinearChain(chain.base.x, chain.step.x))
            return Cu1Element(x, self.push(chain.base.k, chain.base.ideal, x.support))
        chain = list(chain)
        x = lsc.lsc_sup_chain([s.x for s in chain])
        w = x.support
        target = tuple(chain[-1].k)
        for s in chain:
            if not s.ideal.subset_of(w) or self.push(s.k, s.ideal, w) != target:
                raise InconsistentChain(f"K1 data of {s!r} does not push forward to {list(target)}")
        return Cu1Element(x, target)

    def __repr__(self):
        extra = f", fault={self.fault}" if self.fault else ""
        return f"Cu1Model({self.kind}{extra})"


def pull_back(model: Cu1Model, k, small: OpenSet, big: OpenSet) -> tuple:
    """Coefficients on ``small`` mapping onto ``k`` when the arcs of ``small``
    correspond bijectively to those of ``big``."""
    gs, gb = model.k1(small), model.k1(big)
    if not gs.rank:
        return ()
    where = dict(arcs.match_components(small, big))
    pos = {arc: i for i, arc in enumerate(gb.carriers)}
    return tuple(k[pos[where[arc]]] for arc in gs.carriers)


@dataclass(frozen=True)
class ApproxChain:
    """``model.approximate(s, n)``, n = 1, 2, ...; supremum ``s``."""

    s: Cu1Element


@dataclass(frozen=True)
class LinearChain:
    """``base + n * step`` with ``step`` positive."""

    base: Cu1Element
    step: Cu1Element

    def term(self, model: Cu1Model, n: int) -> Cu1Element:
        return model.add(self.base, model.element(lsc.scale_values(self.step.x, n)))


# ------------------------------------------------------------------ catalog


def interval_model(fault=None) -> Cu1Model:
    return Cu1Model("interval", Space.INTERVAL, EXTNAT, IntegerRing(), fault)


def circle_model(fault=None) -> Cu1Model:
    return Cu1Model("circle", Space.CIRCLE, EXTNAT, IntegerRing(), fault)


def uhf_circle_model(p: int, fault=None) -> Cu1Model:
    return Cu1Model("uhf-circle", Space.CIRCLE, UhfScale(p), PadicRing(p), fault, (p,))


def uhf_interval_model(p: int, fault=None) -> Cu1Model:
    return Cu1Model("uhf-interval", Space.INTERVAL, UhfScale(p), PadicRing(p), fault, (p,))


def af_model(scale=EXTNAT, fault=None) -> Cu1Model:
    return Cu1Model("af", Space.POINT, scale, None, fault)


def simple_model(scale=EXTNAT, group: FgAbGroup = FgAbGroup(1), fault=None) -> Cu1Model:
    return Cu1Model("simple", Space.POINT, scale, group, fault)


def zero_model() -> Cu1Model:
    return Cu1Model("zero", Space.POINT, TrivialScale(), None)


# ---------------------------------------------------------------- morphisms

MORPHISM_KINDS = ("identity", "zero", "scale", "rotate", "reflect", "circle-to-interval")


@dataclass(frozen=True)
class Cu1Morphism:
    """A morphism from the catalog.

    ``scale`` multiplies values by ``c`` and K1 by ``k1``; ``rotate`` and
    ``reflect`` transport along a homeomorphism of the base space (reflection
    reverses orientation, hence acts by -1 on K1); ``circle-to-interval`` pulls
    back along ``[0, 1] -> R/Z``.  ``overrides`` replaces the K1 matrix on
    chosen ideals.
    """

    source: Cu1Model
    target: Cu1Model
    kind: str
    c: object = 1
    k1_factor: object = 1
    shift: Fraction = Fraction(0)
    overrides: tuple = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind not in MORPHISM_KINDS:
            raise ValueError(f"unknown morphism kind {self.kind!r}")
        s, t = self.source, self.target
        if self.kind == "circle-to-interval":
            ok = s.space is Space.CIRCLE and t.space is Space.INTERVAL
        else:
            ok = s.space is t.space
        if not ok or s.scale != t.scale or (s.ring is None) != (t.ring is None):
            raise ModelMismatch(f"{self.kind} does not map {s!r} to {t!r}")
        if self.kind == "rotate" and s.space is not Space.CIRCLE:
            raise ModelMismatch("rotations live on the circle")
        if self.kind == "reflect" and s.space is Space.POINT:
            raise ModelMismatch("nothing to reflect on the point")

    @property
    def sign(self):
        if self.kind == "zero":
            return 0
        return -self.k1_factor if self.kind == "reflect" else self.k1_factor

    def map_cu(self, x: StepFn) -> StepFn:
        t = self.target
        kind = self.kind
        if kind == "identity":
            return x
        if kind == "zero":
            return lsc.zero(t.space, t.scale)
        if kind == "scale":
            return lsc.scale_values(x, self.c)
        if kind == "rotate":
            return lsc._tabulate(t.space, t.scale, [b + self.shift for b in x.breaks],
                                 lambda y: x.at(y - self.shift))
        if kind == "reflect":
            return lsc._tabulate(t.space, t.scale, [1 - b for b in x.breaks], lambda y: x.at(1 - y))
        return lsc._tabulate(t.space, t.scale, x.breaks, lambda y: x.at(y))

    def image_ideal(self, v: OpenSet) -> OpenSet:
        return self.map_cu(lsc.indicator(v, self.source.scale.unit, self.source.scale)).support

    def alpha(self, v: OpenSet) -> GroupHom:
        """The K1 matrix ``alpha_V : K1(V) -> K1(alpha(V))``."""
        if v in self._cache:
            return self._cache[v]
        src, tgt = self.source, self.target
        dom, w = src.k1(v), tgt.k1(self.image_ideal(v))
        for ideal, matrix in self.overrides:
            if ideal == v:
                hom = GroupHom(dom, w, tuple(tuple(row) for row in matrix))
                self._cache[v] = hom
                return hom
        mat = [[0] * dom.rank for _ in range(w.rank)]
        rows = {arc: r for r, arc in enumerate(w.carriers)}
        if self.sign and w.rank:
            for col, arc_i in enumerate(dom.carriers):
                piece = self.image_ideal(OpenSet(v.space, (v.arcs[arc_i],)))
                for _, j in arcs.match_components(piece, w.ideal):
                    if j in rows:
                        mat[rows[j]][col] += 1
        hom = GroupHom(dom, w, tuple(tuple(self.sign * e for e in row) for row in mat))
        self._cache[v] = hom
        return hom

    def check_natural(self, v: OpenSet, w: OpenSet | None = None) -> bool:
        """``delta o alpha_V == alpha_W o delta`` for ``V`` inside ``W``."""
        src, tgt = self.source, self.target
        w = src.full if w is None else w
        av, aw = self.alpha(v), self.alpha(w)
        left = tgt.delta(av.codomain.ideal, aw.codomain.ideal).compose(av)
        right = aw.compose(src.delta(v, w))
        return left.matrix == right.matrix

    def apply(self, s: Cu1Element) -> Cu1Element:
        v = s.ideal
        if not self.check_natural(v):
            raise NaturalityViolation(f"{self.kind}: K1 matrices are not natural on {v!r}")
        y = self.map_cu(s.x)
        hom = self.alpha(v)
        if hom.codomain.ideal != y.support:
            raise NotRepresentable("image support differs from the transported ideal")
        return Cu1Element(y, hom(s.k))

    def __call__(self, s: Cu1Element) -> Cu1Element:
        return self.apply(s)

    def is_injective(self) -> bool:
        if self.kind == "zero":
            return False
        if self.kind == "scale":
            return bool(self.c) and (bool(self.k1_factor) or self.source.ring is None)
        return self.kind != "circle-to-interval"


def morphism_max(alpha: Cu1Morphism) -> GroupHom:
    """The induced map on maximal elements, ``K1(X) -> K1(Y)``:
    ``alpha_max(z) = alpha(z) + e``."""
    a_full = alpha.alpha(alpha.source.full)
    tgt = alpha.target
    return tgt.delta(a_full.codomain.ideal, tgt.full).compose(a_full)


def identity(model: Cu1Model) -> Cu1Morphism:
    return Cu1Morphism(model, model, "identity")


def zero_morphism(source: Cu1Model, target: Cu1Model | None = None) -> Cu1Morphism:
    return Cu1Morphism(source, target or source, "zero", c=0, k1_factor=0)


def scaling(model: Cu1Model, c, k1_factor=1) -> Cu1Morphism:
    return Cu1Morphism(model, model, "scale", c=c, k1_factor=k1_factor)


def rotation(model: Cu1Model, t) -> Cu1Morphism:
    return Cu1Morphism(model, model, "rotate", shift=Fraction(t))


def reflection(model: Cu1Model) -> Cu1Morphism:
    return Cu1Morphism(model, model, "reflect")


def circle_to_interval(source: Cu1Model, target: Cu1Model) -> Cu1Morphism:
    return Cu1Morphism(source, target, "circle-to-interval")


def compose(beta: Cu1Morphism, alpha: Cu1Morphism):
    """``beta o alpha`` as a callable on elements."""
    if alpha.target != beta.source:
        raise ModelMismatch("morphisms do not compose")
    return lambda s: beta.apply(alpha.apply(s))
