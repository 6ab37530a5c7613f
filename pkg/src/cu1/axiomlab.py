"""Seeded property suites for the Cu-axioms and the structure results.

A law is a generator of arguments plus a predicate.  The predicate returns
``True`` (holds), ``False`` (violated) or ``None`` (premise not met, the sample
is vacuous).  Every violation is stored as a JSON counterexample that
:func:`replay` evaluates again from scratch.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import arcs, codec, core, lsc
from .arcs import Space
from .core import Cu1Element
from .errors import ConfigInvalid
from .values import UhfScale, UhfValue

# Cut-down index used as "eventually": far beyond every grid spacing the
# samplers produce (denominators <= 16 give gaps >= 1/256).
FAR = 512


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 0
    samples: int = 500
    max_den: int = 16
    max_value: int = 4
    max_arcs: int = 4
    model: dict = field(default_factory=lambda: {"kind": "circle"})

    def __post_init__(self):
        for name in ("samples", "max_den", "max_value", "max_arcs"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v <= 0:
                raise ConfigInvalid(f"{name} must be a positive integer, got {v!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int):
            raise ConfigInvalid(f"seed must be an integer, got {self.seed!r}")
        if not isinstance(self.model, dict) or "kind" not in self.model:
            raise ConfigInvalid("model descriptor needs a 'kind'")


# ----------------------------------------------------------------- models


class LimitAdapter:
    """The algebraic UHF limit seen through the element interface the laws use.

    Elements are :class:`limits.LimitElement`; cut-downs happen at the stage
    of the element.
    """

    def __init__(self, p: int, stages: int):
        from . import limits
        self.p, self.stages = p, stages
        self.colimit = limits.colimit_cu1(limits.uhf_stage_system(p, stages))
        self.stage_model = self.colimit.model
        self.kind = "uhf-limit"

    def wrap(self, i, s):
        from .limits import LimitElement
        return LimitElement(i, s)

    @property
    def zero(self):
        return self.colimit.zero

    def add(self, a, b):
        return self.colimit.add(a, b)

    def leq(self, a, b):
        return self.colimit.leq(a, b)

    def waybelow(self, a, b):
        return self.colimit.waybelow(a, b)

    def eq(self, a, b):
        return self.colimit.eq(a, b)

    def approximate(self, a, n):
        return self.wrap(a.stage, self.stage_model.approximate(a.value, n))

    def push(self, a, j):
        return self.colimit.system.push(a, j)


def build_model(desc: dict):
    if desc.get("kind") == "uhf-limit":
        return LimitAdapter(int(desc.get("p", 2)), int(desc.get("stages", 4)))
    return codec.model_from_json(desc)


def _eq(model, a, b) -> bool:
    return model.eq(a, b) if isinstance(model, LimitAdapter) else a == b


# ---------------------------------------------------------------- sampling


class Sampler:
    """Random elements of a model, driven by one seeded generator."""

    def __init__(self, model, cfg: SampleConfig):
        self.model = model
        self.cfg = cfg
        self.rng = random.Random(cfg.seed)
        self.limit = isinstance(model, LimitAdapter)
        self.base = model.stage_model if self.limit else model

    # -- values and sets
    def point(self) -> Fraction:
        den = self.rng.randint(1, self.cfg.max_den)
        return Fraction(self.rng.randint(0, den), den)

    def value(self):
        return self.base.scale.sample(self.rng, self.cfg.max_value, self.cfg.max_den)

    def open_set(self, space: Space) -> arcs.OpenSet:
        rng = self.rng
        if space is Space.POINT:
            return arcs.whole(space) if rng.random() < 0.7 else arcs.empty(space)
        raw = []
        for _ in range(rng.randint(0, self.cfg.max_arcs)):
            r = rng.random()
            if r < 0.05:
                raw.append(arcs.full(space))
                continue
            a, b = self.point() % 1 if space is Space.CIRCLE else self.point(), self.point()
            if space is Space.CIRCLE:
                raw.append(arcs.proper(space, a, b % 1))
            elif r < 0.15 and b > 0:
                raw.append(arcs.leftclosed(b))
            elif r < 0.25 and a < 1:
                raw.append(arcs.rightclosed(a))
            elif a != b:
                raw.append(arcs.proper(space, min(a, b), max(a, b)))
        return arcs.canonicalize(space, raw)

    def stepfn(self) -> lsc.StepFn:
        m, rng = self.base, self.rng
        space, scale = m.space, m.scale
        z = scale.zero
        if space is Space.POINT:
            return lsc.constant(space, scale, z if rng.random() < 0.15 else self.value())
        if rng.random() < 0.1:
            return lsc.constant(space, scale, self.value())
        pts = {self.point() % 1 if space is Space.CIRCLE else self.point()
               for _ in range(rng.randint(1, 2 * self.cfg.max_arcs))}
        if space is Space.INTERVAL:
            pts |= {Fraction(0), Fraction(1)}
        grid = sorted(pts)
        npieces = len(grid) - 1 if space is Space.INTERVAL else len(grid)
        pieces = [z if rng.random() < 0.35 else self.value() for _ in range(npieces)]
        key = lambda v: v._key()  # noqa: E731
        points = []
        for i in range(len(grid)):
            low = min(lsc._neighbours(space, pieces, i), key=key)
            r = rng.random()
            if r < 0.7:
                points.append(low)
            elif r < 0.85:
                points.append(z)
            else:
                v = self.value()
                points.append(v if scale.leq(v, low) else low)
        return lsc.build(space, scale, grid, pieces, points)

    def coefficients(self, v: arcs.OpenSet):
        g = self.base.k1(v)
        if not g.rank:
            return None
        return [g.ring.sample(self.rng) for _ in range(g.rank)]

    # -- stage elements
    def _element(self) -> Cu1Element:
        x = self.stepfn()
        return self.base.element(x, self.coefficients(x.support))

    def _positive(self) -> Cu1Element:
        return self.base.element(self.stepfn())

    def _compact(self) -> Cu1Element:
        m, rng = self.base, self.rng
        if rng.random() < 0.1 or m.kind == "zero":
            return m.zero
        scale = m.scale
        if isinstance(scale, UhfScale):
            j = rng.randint(0, 2)
            v = UhfValue(scale.p, False, Fraction(rng.randint(1, self.cfg.max_value * scale.p ** j), scale.p ** j))
        else:
            v = scale.mul(scale.unit, rng.randint(1, self.cfg.max_value))
        return m.constant(v, self.coefficients(m.full))

    def _maximal(self) -> Cu1Element:
        m = self.base
        return m.element(m.top.x, self.coefficients(m.full))

    def _lift(self, s):
        if not self.limit:
            return s
        return self.model.wrap(self.rng.randrange(self.model.stages), s)

    def element(self):
        return self._lift(self._element())

    def positive(self):
        return self._lift(self._positive())

    def compact(self):
        return self._lift(self._compact())

    def maximal(self):
        return self._lift(self._maximal())

    def elements(self, n: int) -> list:
        return [self.element() for _ in range(n)]

    def index(self, hi: int = 8) -> int:
        return self.rng.randint(1, hi)

    def touching(self, s):
        """Same support as ``s``, values capped at the unit: way below ``s``
        only when that support is closed."""
        m = self.base
        x = s.value.x if self.limit else s.x
        unit, leq = m.scale.unit, m.scale.leq
        y = lsc.map_values(x, m.scale, lambda v: v if leq(v, unit) else unit)
        t = Cu1Element(y, s.value.k if self.limit else s.k)
        return self.model.wrap(s.stage, t) if self.limit else t

    def below(self, s):
        """A candidate for ``y << s``: random, a cut-down, touching or ``s``."""
        r = self.rng.random()
        if r < 0.3:
            return self.model.approximate(s, self.index())
        if r < 0.6:
            return self.touching(s)
        if r < 0.7:
            return s
        e = self.element()
        if self.limit:
            return self.model.wrap(s.stage, e.value)
        return e


# -------------------------------------------------------------------- laws


@dataclass(frozen=True)
class Law:
    name: str
    gen: Callable
    check: Callable


def _all(*flags) -> bool:
    return all(flags)


def _monoid(m, s, t, u):
    return _all(_eq(m, m.add(s, m.zero), s), _eq(m, m.add(s, t), m.add(t, s)),
                _eq(m, m.add(m.add(s, t), u), m.add(s, m.add(t, u))))


def _order(m, s, a, b, c):
    t = m.add(s, a)
    u = m.add(t, b)
    ok = m.leq(s, s) and m.leq(s, t) and m.leq(t, u) and m.leq(s, u)
    ok = ok and m.leq(m.add(s, c), m.add(t, c))
    if m.leq(t, s):
        ok = ok and _eq(m, s, t)
    return ok


def _o1(m, base, step, a):
    chain = core.LinearChain(base, step)
    sup = m.sup_chain(chain)
    terms = [chain.term(m, n) for n in range(1, 5)]
    ok = all(m.leq(x, y) for x, y in zip(terms, terms[1:])) and all(m.leq(x, sup) for x in terms)
    bound = m.add(base, m.element(lsc.top_on(step.ideal, m.scale)))
    ok = ok and m.leq(sup, bound) and m.leq(sup, m.add(sup, m.zero))
    stab = m.add(base, a)
    return ok and m.sup_chain([base, stab, stab]) == stab


def _o2(m, s, y, n):
    seq = [m.approximate(s, k) for k in (n, n + 1, n + 2)]
    ok = all(m.waybelow(x, z) for x, z in zip(seq, seq[1:]))
    ok = ok and all(m.waybelow(x, s) and m.leq(x, s) for x in seq)
    if m.waybelow(y, s):
        ok = ok and m.leq(y, m.approximate(s, FAR))
    return ok


def _o3(m, t, v, n, k):
    s, u = m.approximate(t, n), m.approximate(v, k)
    if not (m.waybelow(s, t) and m.waybelow(u, v)):
        return False  # cut-downs must be way below
    return m.waybelow(m.add(s, u), m.add(t, v))


def _o4(m, s, t, n, k):
    st = m.add(s, t)
    ok = all(m.leq(m.add(m.approximate(s, j), m.approximate(t, j)), st) for j in (n, n + 1))
    ok = ok and m.leq(m.approximate(st, k), m.add(m.approximate(s, FAR), m.approximate(t, FAR)))
    return ok


def _o4_linear(m, b1, s1, b2, s2):
    left = m.add(m.sup_chain(core.LinearChain(b1, s1)), m.sup_chain(core.LinearChain(b2, s2)))
    right = m.sup_chain(core.LinearChain(m.add(b1, b2), m.add(s1, s2)))
    return left == right


def _zero_wb(m):
    return m.waybelow(m.zero, m.zero)


def _auxiliary(m, t, a, n, k, x, y):
    s = m.approximate(t, n)
    s2 = m.approximate(s, k)
    t2 = m.add(t, a)
    ok = m.waybelow(s, t) and m.leq(s, t) and m.leq(s2, s) and m.waybelow(s2, t2)
    if m.waybelow(x, y):
        ok = ok and m.leq(x, y)
    return ok


# limit-only laws


def _w1(m, a, n, k):
    """Cut-downs of ``a`` (at its stage and one stage later) have a common
    upper bound way below ``a``."""
    a1 = m.approximate(a, n)
    a2 = m.approximate(m.push(a, a.stage + 1), k)
    top = m.approximate(m.push(a, a.stage + 1), FAR)
    return _all(m.waybelow(a1, a), m.waybelow(a2, a), m.leq(a1, top), m.leq(a2, top), m.waybelow(top, a))


def _w3(m, b, c, n, k):
    b1, c1 = m.approximate(b, n), m.approximate(c, k)
    return m.waybelow(m.add(b1, c1), m.add(b, c))


def _w4(m, b, c, n):
    a = m.approximate(m.add(b, c), n)
    if not m.waybelow(a, m.add(b, c)):
        return False
    b1, c1 = m.approximate(b, FAR), m.approximate(c, FAR)
    return _all(m.waybelow(b1, b), m.waybelow(c1, c), m.waybelow(a, m.add(b1, c1)))


def _stage_stable(m, x, y):
    later = max(x.stage, y.stage) + 1
    return m.waybelow(x, y) == m.waybelow(m.push(x, later), m.push(y, later))


# structure laws


def _weak_cancellation(m, x, y, z):
    if not m.waybelow(m.add(x, z), m.add(y, z)):
        return None
    return m.leq(x, y)


def _compact_cancellation(m, x, y, z):
    if not (m.is_compact(x) and m.is_compact(y) and m.is_compact(z)):
        return False
    ok = (m.add(x, z) != m.add(y, z)) or x == y
    if m.leq(m.add(x, z), m.add(y, z)):
        ok = ok and m.leq(x, y)
    return ok


def _positive_directed(m, x):
    return m.leq(m.zero, m.add(x, m.neg_k(x)))


def _smax_group(m, z1, z2):
    e = m.top
    p = m.neg_k(z1)
    inv = m.add(m.add(p, p), z1)
    return _all(m.is_maximal(m.add(z1, z2)), m.is_maximal(e), m.add(z1, e) == z1,
                m.is_maximal(inv), m.add(z1, inv) == e, m.add(z1, z2) == m.add(z2, z1))


def _absorption(m, z, s, t):
    zs = m.add(z, s)
    ok = m.is_maximal(zs) and m.add(zs, t) == m.add(z, m.add(s, t))
    w = lsc.lsc_add(s.x, t.x).support
    via = m.delta(w, m.full)(m.delta(s.ideal, w)(s.k)) if m.k1(m.full).rank else ()
    want = m.k1(m.full).add(z.k, via) if m.k1(m.full).rank else ()
    return ok and tuple(zs.k) == tuple(want)


def _nu_plus(m, s, t):
    st = m.add(s, t)
    return _all(m.is_positive(st), st.x == lsc.lsc_add(s.x, t.x),
                m.leq(s, t) == lsc.lsc_leq(s.x, t.x),
                m.waybelow(s, t) == lsc.lsc_waybelow(s.x, t.x))


def _nu_max(m, z1, z2, s):
    g = m.k1(m.full)
    sum_k = g.add(z1.k, z2.k) if g.rank else ()
    j = m.j_map(s)
    want = m.push(s.k, s.ideal, m.full) if g.rank else ()
    return _all(tuple(m.add(z1, z2).k) == tuple(sum_k), m.j_map(z1) == z1,
                j == Cu1Element(m.top.x, tuple(want)))


def _n(s: Sampler, hi=8):
    return s.index(hi)


AXIOM_LAWS = [
    Law("monoid", lambda S: (S.element(), S.element(), S.element()), _monoid),
    Law("order", lambda S: (S.element(), S.positive(), S.positive(), S.element()), _order),
    Law("O1", lambda S: (S.element(), S.positive(), S.positive()), _o1),
    Law("O2", lambda S: (lambda s: (s, S.below(s), _n(S)))(S.element()), _o2),
    Law("O3", lambda S: (S.element(), S.element(), _n(S), _n(S)), _o3),
    Law("O4", lambda S: (S.element(), S.element(), _n(S), _n(S)), _o4),
    Law("O4-linear", lambda S: (S.element(), S.positive(), S.element(), S.positive()), _o4_linear),
    Law("zero-waybelow-zero", lambda S: (), _zero_wb),
    Law("auxiliary", lambda S: (lambda y: (S.element(), S.positive(), _n(S), _n(S), S.below(y), y))(S.element()),
        _auxiliary),
]

LIMIT_LAWS = [
    Law("monoid", lambda S: (S.element(), S.element(), S.element()), _monoid),
    Law("order", lambda S: (S.element(), S.positive(), S.positive(), S.element()), _order),
    Law("zero-waybelow-zero", lambda S: (), _zero_wb),
    Law("auxiliary", lambda S: (lambda y: (S.element(), S.positive(), _n(S), _n(S), S.below(y), y))(S.element()),
        _auxiliary),
    Law("W1", lambda S: (S.element(), _n(S), _n(S)), _w1),
    Law("W3", lambda S: (S.element(), S.element(), _n(S), _n(S)), _w3),
    Law("W4", lambda S: (S.element(), S.element(), _n(S)), _w4),
    Law("stage-stability", lambda S: (lambda y: (S.below(y), y))(S.element()), _stage_stable),
]


def _kernel_shift(S: Sampler, v: arcs.OpenSet):
    """A nonzero vector of K1(v) sent to 0 in K1 of the whole space, if any."""
    m = S.model
    g = m.k1(v)
    if not g.rank:
        return None
    d = m.delta(v, m.full)
    ring = g.ring
    for _ in range(4):
        if g.rank >= 2 and S.rng.random() < 0.7:
            i, j = S.rng.sample(range(g.rank), 2)
            c = ring.sample(S.rng)
            vec = [ring.zero] * g.rank
            vec[i], vec[j] = c, ring.neg(c)
        else:
            vec = [ring.sample(S.rng) for _ in range(g.rank)]
        if vec != list(g.zero) and tuple(d(vec)) == tuple(m.k1(m.full).zero):
            return vec
    return None


def _wc_gen(S: Sampler):
    """Triples aimed at the premise ``x + z << y + z``.

    ``x`` is a cut-down of ``y`` whose K1 data is kept, replaced at random, or
    shifted by a vector that dies in K1 of the whole space; ``z`` is compact,
    maximal or random.
    """
    m = S.model
    y = S.element()
    base = m.approximate(y, S.index())
    r = S.rng.random()
    x = base
    if r < 0.4:
        shift = _kernel_shift(S, base.ideal)
        if shift is not None:
            x = Cu1Element(base.x, m.k1(base.ideal).add(base.k, shift))
    elif r < 0.6:
        x = Cu1Element(base.x, tuple(S.coefficients(base.ideal) or ()))
    r = S.rng.random()
    z = S.compact() if r < 0.6 else (S.maximal() if r < 0.85 else S.element())
    return x, y, z


STRUCTURE_LAWS = [
    Law("weak-cancellation", _wc_gen, _weak_cancellation),
    Law("compact-cancellation", lambda S: (S.compact(), S.compact(), S.compact()), _compact_cancellation),
    Law("positive-directedness", lambda S: (S.element(),), _positive_directed),
    Law("smax-group", lambda S: (S.maximal(), S.maximal()), _smax_group),
    Law("absorption", lambda S: (S.maximal(), S.element(), S.element()), _absorption),
    Law("nu-plus", lambda S: (S.positive(), S.positive()), _nu_plus),
    Law("nu-max", lambda S: (S.maximal(), S.maximal(), S.element()), _nu_max),
]


# ------------------------------------------------------------------ reports


@dataclass
class LawResult:
    checked: int = 0
    vacuous: int = 0
    failed: int = 0

    def to_json(self):
        return {"checked": self.checked, "vacuous": self.vacuous, "failed": self.failed}


@dataclass
class SuiteReport:
    suite: str
    model: dict
    seed: int
    samples: int
    laws: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.failed == 0 for r in self.laws.values())

    def failures(self) -> dict:
        return {k: r.failed for k, r in self.laws.items() if r.failed}

    def to_json(self):
        return {"suite": self.suite, "model": self.model, "seed": self.seed, "samples": self.samples,
                "passed": self.passed, "laws": {k: r.to_json() for k, r in self.laws.items()},
                "counterexamples": self.counterexamples}


def encode_arg(model, a):
    if isinstance(a, int):
        return {"int": a}
    if isinstance(model, LimitAdapter):
        return {"stage": a.stage, "element": codec.element_to_json(model.stage_model, a.value)}
    return codec.element_to_json(model, a)


def decode_arg(model, obj):
    if "int" in obj:
        return int(obj["int"])
    if isinstance(model, LimitAdapter):
        return model.wrap(int(obj["stage"]), codec.element_from_json(model.stage_model, obj["element"]))
    return codec.element_from_json(model, obj)


def _evaluate(law: Law, model, args):
    try:
        return law.check(model, *args), None
    except Exception as exc:  # noqa: BLE001 - an exception is a violation
        return False, f"{type(exc).__name__}: {exc}"


def _run(suite: str, laws: list[Law], cfg: SampleConfig, keep: int = 3) -> SuiteReport:
    model = build_model(cfg.model)
    sampler = Sampler(model, cfg)
    report = SuiteReport(suite, cfg.model, cfg.seed, cfg.samples)
    for law in laws:
        res = report.laws.setdefault(law.name, LawResult())
        for _ in range(cfg.samples):
            args = law.gen(sampler)
            verdict, err = _evaluate(law, model, args)
            if verdict is None:
                res.vacuous += 1
                continue
            res.checked += 1
            if not verdict:
                res.failed += 1
                if res.failed <= keep:
                    cx = {"suite": suite, "law": law.name, "model": cfg.model,
                          "args": [encode_arg(model, a) for a in args]}
                    if err:
                        cx["error"] = err
                    report.counterexamples.append(cx)
    return report


def _laws_for(suite: str, model_desc: dict) -> list[Law]:
    if suite == "axioms":
        return LIMIT_LAWS if model_desc.get("kind") == "uhf-limit" else AXIOM_LAWS
    if model_desc.get("kind") == "uhf-limit":
        raise ConfigInvalid("the structure suite runs on catalog models")
    return STRUCTURE_LAWS


def run_axiom_suite(cfg: SampleConfig) -> SuiteReport:
    return _run("axioms", _laws_for("axioms", cfg.model), cfg)


def run_structure_suite(cfg: SampleConfig) -> SuiteReport:
    return _run("structure", _laws_for("structure", cfg.model), cfg)


def replay(counterexample: dict) -> bool:
    """``True`` when the recorded counterexample still violates its law."""
    desc = counterexample["model"]
    model = build_model(desc)
    laws = {law.name: law for law in _laws_for(counterexample["suite"], desc)}
    law = laws[counterexample["law"]]
    args = [decode_arg(model, a) for a in counterexample["args"]]
    verdict, _ = _evaluate(law, model, args)
    return verdict is False
