"""Sequential inductive limits and the completion of finite ordered monoids.

Limits are algebraic: an element is a pair ``(stage, element)`` and two pairs
are compared after pushing both to a common stage.  All shipped systems have
injective connecting maps, which makes that comparison decide equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

import sympy

from . import core, lsc
from .core import Cu1Element, Cu1Model
from .errors import NonInjectiveSystem, NotMonotone, NotRepresentable
from .values import INF, ExtNat, UhfValue

# ------------------------------------------------------------- group limits


@dataclass(frozen=True)
class LimitElement:
    stage: int
    value: object


@dataclass
class GroupSystem:
    """``Z^r --M_0--> Z^r --M_1--> ...`` with ``M_i = rule(i)``.

    ``stages`` is the declared length; with ``extend`` set, later stages are
    generated by the rule when an element asks for them.
    """

    rank: int
    rule: object
    stages: int = 4
    extend: bool = True
    _checked: set = field(default_factory=set, repr=False)

    def matrix(self, i: int) -> sympy.Matrix:
        if i >= self.stages - 1 and not self.extend:
            raise IndexError(f"stage {i + 1} is beyond the system")
        m = sympy.Matrix(self.rule(i))
        if i not in self._checked:
            if m.shape != (self.rank, self.rank) or m.rank() < self.rank:
                raise NonInjectiveSystem(f"connecting map {i} -> {i + 1} is not injective: {m.tolist()}")
            self._checked.add(i)
        return m

    def push(self, e: LimitElement, j: int) -> LimitElement:
        if j < e.stage:
            raise ValueError("cannot push to an earlier stage")
        v = sympy.Matrix(e.value)
        for i in range(e.stage, j):
            v = self.matrix(i) * v
        return LimitElement(j, tuple(int(x) for x in v))


class GroupColimit:
    """The colimit of a :class:`GroupSystem` with decidable equality."""

    def __init__(self, system: GroupSystem):
        self.system = system
        for i in range(system.stages - 1):
            system.matrix(i)

    def element(self, stage: int, vec) -> LimitElement:
        vec = (vec,) if isinstance(vec, int) else tuple(int(x) for x in vec)
        if len(vec) != self.system.rank:
            raise ValueError("wrong rank")
        if not self.system.extend and stage >= self.system.stages:
            raise IndexError(f"stage {stage} is beyond the system")
        return LimitElement(stage, vec)

    def _common(self, a, b):
        m = max(a.stage, b.stage)
        return self.system.push(a, m), self.system.push(b, m)

    def eq(self, a, b) -> bool:
        a, b = self._common(a, b)
        return a.value == b.value

    def add(self, a, b) -> LimitElement:
        a, b = self._common(a, b)
        return LimitElement(a.stage, tuple(x + y for x, y in zip(a.value, b.value)))

    def neg(self, a) -> LimitElement:
        return LimitElement(a.stage, tuple(-x for x in a.value))

    @property
    def zero(self) -> LimitElement:
        return LimitElement(0, (0,) * self.system.rank)

    def normalize(self, a: LimitElement) -> LimitElement:
        """Earliest stage representative (pull back while a preimage exists)."""
        while a.stage > 0:
            m = self.system.matrix(a.stage - 1)
            try:
                sol, params = m.gauss_jordan_solve(sympy.Matrix(a.value))
            except ValueError:
                break
            if params.shape[0] or any(not x.is_integer for x in sol):
                break
            a = LimitElement(a.stage - 1, tuple(int(x) for x in sol))
        return a


def multiplier_system(p: int, stages: int = 4, extend: bool = True) -> GroupSystem:
    """``Z --x p--> Z --x p--> ...``; the colimit is ``Z[1/p]``."""
    return GroupSystem(1, lambda i: [[p]], stages, extend)


def colimit_group(system: GroupSystem) -> GroupColimit:
    return GroupColimit(system)


def to_padic(a: LimitElement, p: int) -> Fraction:
    """``(i, m) -> m / p^i`` for a multiplier system."""
    return Fraction(a.value[0], p ** a.stage)


# --------------------------------------------------------------- Cu1 limits


@dataclass
class Cu1System:
    """Stages ``model`` joined by a catalog morphism (the same at every step)."""

    model: Cu1Model
    step: core.Cu1Morphism
    stages: int = 4
    extend: bool = True

    def __post_init__(self):
        if self.step.source != self.model or self.step.target != self.model:
            raise ValueError("stage morphism must be an endomorphism of the stage model")
        if not self.step.is_injective():
            raise NonInjectiveSystem(f"{self.step.kind} morphism is not injective")

    def push(self, e: LimitElement, j: int) -> LimitElement:
        if j < e.stage:
            raise ValueError("cannot push to an earlier stage")
        if not self.extend and j >= self.stages:
            raise IndexError(f"stage {j} is beyond the system")
        s = e.value
        for _ in range(e.stage, j):
            s = self.step.apply(s)
        return LimitElement(j, s)


class Cu1Colimit:
    """The algebraic colimit of a :class:`Cu1System`.

    ``+``, ``<=`` and ``<<`` are decided after pushing to a common stage;
    ``<<`` holds when it holds at some stage from the common one on (the
    window is ``lookahead`` stages, and with injective scaling maps the
    answer never changes along it).
    """

    kind = "limit"

    def __init__(self, system: Cu1System, lookahead: int = 1):
        self.system = system
        self.model = system.model
        self.lookahead = lookahead

    def element(self, stage: int, s: Cu1Element) -> LimitElement:
        if not self.system.extend and stage >= self.system.stages:
            raise IndexError(f"stage {stage} is beyond the system")
        return LimitElement(stage, self.model.check(s))

    @property
    def zero(self) -> LimitElement:
        return LimitElement(0, self.model.zero)

    def _common(self, a, b, extra=0):
        m = max(a.stage, b.stage) + extra
        return self.system.push(a, m), self.system.push(b, m)

    def add(self, a, b) -> LimitElement:
        a, b = self._common(a, b)
        return LimitElement(a.stage, self.model.add(a.value, b.value))

    def eq(self, a, b) -> bool:
        a, b = self._common(a, b)
        return a.value == b.value

    def leq(self, a, b) -> bool:
        a, b = self._common(a, b)
        return self.model.leq(a.value, b.value)

    def waybelow(self, a, b) -> bool:
        for extra in range(self.lookahead + 1):
            x, y = self._common(a, b, extra)
            if self.model.waybelow(x.value, y.value):
                return True
        return False

    def is_compact(self, a) -> bool:
        return self.waybelow(a, a)


def uhf_stage_system(p: int, stages: int = 4, extend: bool = True) -> Cu1System:
    """Stages ``Cu1(C(T) (x) M_{p^n})``, each a copy of the circle model, with
    the unital inclusions ``a -> a (x) 1_p`` (multiply Cu and K1 by ``p``)."""
    m = core.circle_model()
    return Cu1System(m, core.scaling(m, p, p), stages, extend)


def uhf_closed_form(p: int) -> Cu1Model:
    return core.uhf_circle_model(p)


def to_closed_form(a: LimitElement, p: int) -> Cu1Element:
    """``sigma_{i, inf}``: stage ``i`` values ``v`` become ``v / p^i`` (compact),
    infinite values become soft infinity, K1 coefficients ``k / p^i``."""
    target = uhf_closed_form(p)
    scale = target.scale
    den = p ** a.stage

    def conv(v):
        if v == INF:
            return scale.top
        return UhfValue(p, False, Fraction(v.n, den))

    x = lsc.map_values(a.value.x, scale, conv)
    k = tuple(Fraction(c, den) for c in a.value.k)
    return target.element(x, k)


def from_closed_form(e: Cu1Element, p: int) -> LimitElement:
    """A stage representative of a closed-form element whose values are
    compact or infinite."""
    stage = 0
    for v in e.x.values:
        if v.soft and v.mag is not None:
            raise NotRepresentable(f"soft value {v!r} lies outside the algebraic limit")
        if v.mag is not None:
            while (v.mag * p ** stage).denominator != 1:
                stage += 1
    for c in e.k:
        while (c * p ** stage).denominator != 1:
            stage += 1
    den = p ** stage
    src = core.circle_model()
    x = lsc.map_values(e.x, src.scale, lambda v: INF if v.mag is None else ExtNat(int(v.mag * den)))
    return LimitElement(stage, src.element(x, [int(c * den) for c in e.k]))


def colimit_cu1(system: Cu1System) -> Cu1Colimit:
    return Cu1Colimit(system)


# ------------------------------------------------- finite ordered monoids


@dataclass(frozen=True)
class OrderedMonoidPresentation:
    """A finite ordered commutative monoid.

    ``names[0]`` is the neutral element; ``table[i][j]`` is the index of
    ``names[i] + names[j]``; ``order`` holds the pairs ``(i, j)`` with
    ``names[i] <= names[j]`` (reflexive pairs may be omitted).
    """

    names: tuple
    table: tuple
    order: frozenset

    def __post_init__(self):
        n = len(self.names)
        object.__setattr__(self, "table", tuple(tuple(r) for r in self.table))
        object.__setattr__(self, "order", frozenset(self.order) | {(i, i) for i in range(n)})
        t = self.table
        if n == 0 or len(t) != n or any(len(r) != n or any(not 0 <= x < n for x in r) for r in t):
            raise ValueError("addition table does not match the element list")
        rng = range(n)
        if any(t[0][i] != i for i in rng):
            raise ValueError("the first element is not neutral")
        if any(t[i][j] != t[j][i] for i in rng for j in rng):
            raise ValueError("addition is not commutative")
        if any(t[t[i][j]][k] != t[i][t[j][k]] for i in rng for j in rng for k in rng):
            raise ValueError("addition is not associative")
        le = self.order
        if any((j, i) in le and i != j for i, j in le):
            raise ValueError("order is not antisymmetric")
        if any((j, k) in le and (i, k) not in le for i, j in le for k in rng):
            raise ValueError("order is not transitive")
        for i, j in le:
            for k in rng:
                if (t[i][k], t[j][k]) not in le:
                    raise NotMonotone(f"{self.names[i]} <= {self.names[j]} but not after adding {self.names[k]}")

    def __len__(self):
        return len(self.names)

    def leq(self, i, j) -> bool:
        return (i, j) in self.order

    def add(self, i, j) -> int:
        return self.table[i][j]

    def down(self, i) -> frozenset:
        return frozenset(j for j in range(len(self)) if self.leq(j, i))

    def to_json(self):
        return {"elements": list(self.names),
                "add": [[self.names[x] for x in row] for row in self.table],
                "order": sorted([self.names[i], self.names[j]] for i, j in self.order if i != j)}

    @classmethod
    def from_json(cls, obj):
        names = [str(x) for x in obj["elements"]]
        idx = {n: i for i, n in enumerate(names)}
        look = lambda x: idx[str(x)] if str(x) in idx else int(x)  # noqa: E731
        table = [[look(x) for x in row] for row in obj["add"]]
        order = {(look(a), look(b)) for a, b in obj.get("order", [])}
        return cls(tuple(names), tuple(map(tuple, table)), frozenset(order))


class Completion:
    """Nonempty, downward-closed, upward-directed subsets of a finite ordered
    monoid, with setwise addition (down-closed) and inclusion."""

    def __init__(self, m: OrderedMonoidPresentation):
        self.base = m
        n = len(m)
        self.ideals = []
        for r in range(1, n + 1):
            for sub in combinations(range(n), r):
                s = frozenset(sub)
                if self._is_ideal(s):
                    self.ideals.append(s)
        self.index = {s: i for i, s in enumerate(self.ideals)}

    def _is_ideal(self, s) -> bool:
        m = self.base
        if any(m.leq(j, i) and j not in s for i in s for j in range(len(m))):
            return False
        return all(any(m.leq(a, c) and m.leq(b, c) for c in s) for a in s for b in s)

    def down_closure(self, items) -> frozenset:
        m = self.base
        return frozenset(j for j in range(len(m)) if any(m.leq(j, i) for i in items))

    def add(self, a: frozenset, b: frozenset) -> frozenset:
        return self.down_closure({self.base.add(x, y) for x in a for y in b})

    def leq(self, a, b) -> bool:
        return a <= b

    def waybelow(self, a, b) -> bool:
        return any(a <= self.base.down(m) for m in b)

    def compacts(self) -> list[frozenset]:
        return [s for s in self.ideals if self.waybelow(s, s)]

    def embedding(self) -> dict:
        """``m -> down(m)``."""
        return {i: self.base.down(i) for i in range(len(self.base))}

    def as_presentation(self) -> OrderedMonoidPresentation:
        ideals = self.ideals
        zero = self.base.down(0)
        order_ = sorted(range(len(ideals)), key=lambda i: (ideals[i] != zero, i))
        pos = {i: k for k, i in enumerate(order_)}
        names = tuple("{" + ",".join(self.base.names[j] for j in sorted(ideals[i])) + "}" for i in order_)
        table = [[0] * len(ideals) for _ in ideals]
        for i, j in product(range(len(ideals)), repeat=2):
            table[pos[i]][pos[j]] = pos[self.index[self.add(ideals[i], ideals[j])]]
        le = {(pos[i], pos[j]) for i, j in product(range(len(ideals)), repeat=2) if ideals[i] <= ideals[j]}
        return OrderedMonoidPresentation(names, tuple(map(tuple, table)), frozenset(le))

    def compacts_isomorphic(self) -> bool:
        """The embedding is a bijection onto the compacts preserving ``+`` and ``<=``."""
        emb = self.embedding()
        m = self.base
        if sorted(emb.values(), key=sorted) != sorted(self.compacts(), key=sorted) or len(set(emb.values())) != len(m):
            return False
        rng = range(len(m))
        return all(emb[m.add(i, j)] == self.add(emb[i], emb[j]) and m.leq(i, j) == (emb[i] <= emb[j])
                   for i in rng for j in rng)


def complete_ordered_monoid(m: OrderedMonoidPresentation) -> Completion:
    return Completion(m)


def isomorphic(a: OrderedMonoidPresentation, b: OrderedMonoidPresentation) -> bool:
    """Brute-force isomorphism of small ordered monoids."""
    from itertools import permutations
    n = len(a)
    if n != len(b):
        return False
    for perm in permutations(range(1, n)):
        f = (0,) + perm
        if all(f[a.add(i, j)] == b.add(f[i], f[j]) and a.leq(i, j) == b.leq(f[i], f[j])
               for i in range(n) for j in range(n)):
            return True
    return False


# ---------------------------------------------------------------- corpora


def _all_orders(n):
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for r in range(len(pairs) + 1):
        for sub in combinations(pairs, r):
            le = set(sub) | {(i, i) for i in range(n)}
            if any((j, i) in le and i != j for i, j in le):
                continue
            if any((j, k) in le and (i, k) not in le for i, j in le for k in range(n)):
                continue
            yield frozenset(le)


def small_monoids(max_size: int = 3):
    """Every ordered commutative monoid on ``{0, ..., n-1}`` (``n <= max_size``)
    with 0 neutral; isomorphic copies are kept."""
    for n in range(1, max_size + 1):
        free = [(i, j) for i in range(1, n) for j in range(i, n)]
        for vals in product(range(n), repeat=len(free)):
            t = [[0] * n for _ in range(n)]
            for i in range(n):
                t[0][i] = t[i][0] = i
            for (i, j), v in zip(free, vals):
                t[i][j] = t[j][i] = v
            names = tuple(str(i) for i in range(n))
            for le in _all_orders(n):
                try:
                    yield OrderedMonoidPresentation(names, tuple(map(tuple, t)), le)
                except (ValueError, NotMonotone):
                    continue


def truncated_naturals(n: int) -> OrderedMonoidPresentation:
    """``{0, ..., n}`` with ``a + b`` capped at ``n`` and the usual order."""
    k = n + 1
    table = tuple(tuple(min(i + j, n) for j in range(k)) for i in range(k))
    order = frozenset((i, j) for i in range(k) for j in range(k) if i <= j)
    return OrderedMonoidPresentation(tuple(str(i) for i in range(k)), table, order)


def cyclic_group(n: int) -> OrderedMonoidPresentation:
    """``Z/n`` with the equality order."""
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return OrderedMonoidPresentation(tuple(str(i) for i in range(n)), table, frozenset())


def truncated_simple() -> OrderedMonoidPresentation:
    """``{0} u ({1, inf} x Z/2)``: 1 + 1 = inf, K1 coefficients add, and
    ``(1, g) <= (inf, g)``; zero lies below the coefficient-0 elements."""
    names = ("0", "1.0", "1.1", "inf.0", "inf.1")
    code = {(1, 0): 1, (1, 1): 2, (2, 0): 3, (2, 1): 4}
    dec = {v: k for k, v in code.items()}
    n = len(names)
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == 0 or j == 0:
                table[i][j] = i or j
                continue
            (a, g), (b, h) = dec[i], dec[j]
            table[i][j] = code[(2, (g + h) % 2)]
    order = {(0, 1), (0, 3), (1, 3), (2, 4)}
    return OrderedMonoidPresentation(names, tuple(map(tuple, table)), frozenset(order))


def monoid_corpus() -> list[OrderedMonoidPresentation]:
    out = list(small_monoids(3))
    out += [truncated_naturals(n) for n in range(1, 5)]
    out += [cyclic_group(n) for n in range(1, 6)]
    out.append(truncated_simple())
    return out
