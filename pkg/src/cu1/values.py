"""Value scales and coefficient groups.

Two scales carry Cuntz values:

* the extended naturals ``{0, 1, 2, ..., inf}`` (:class:`ExtNat`), and
* the scale of the UHF algebra of type ``p^inf``: compact values in
  ``N[1/p]`` together with soft values in ``(0, inf]`` (:class:`UhfValue`).

Coefficient groups (:class:`IntegerRing`, :class:`PadicRing`,
:class:`FgAbGroup`) hold K1 data.  All arithmetic is exact.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

from .errors import MixedScaleError


def is_power_of(n: int, p: int) -> bool:
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def parse_fraction(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError(f"not a number: {s!r}")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"exact rational expected, got {s!r}")


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------- values


@dataclass(frozen=True)
class ExtNat:
    """Element of N u {inf}; ``n is None`` encodes infinity."""

    n: int | None

    def __post_init__(self):
        if self.n is not None and (isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 0):
            raise ValueError(f"ExtNat needs a nonnegative int, got {self.n!r}")

    @property
    def is_finite(self) -> bool:
        return self.n is not None

    def _key(self):
        return (1, 0) if self.n is None else (0, self.n)

    def __add__(self, other):
        return value_add(self, other)

    def __le__(self, other):
        return value_leq(self, other)

    def __lt__(self, other):
        return value_leq(self, other) and self != other

    def __repr__(self):
        return "ExtNat(inf)" if self.n is None else f"ExtNat({self.n})"


INF = ExtNat(None)


@dataclass(frozen=True)
class UhfValue:
    """Element of N[1/p] u (0, inf].

    ``soft`` selects the soft part.  ``mag`` is a Fraction, or None for the
    soft infinity.  Compact magnitudes have p-power denominators; the only
    zero is the compact zero.
    """

    p: int
    soft: bool
    mag: Fraction | None

    def __post_init__(self):
        if self.mag is None:
            if not self.soft:
                raise ValueError("infinity is soft in the UHF scale")
            return
        if not isinstance(self.mag, Fraction):
            object.__setattr__(self, "mag", Fraction(self.mag))
        if self.soft:
            if self.mag <= 0:
                raise ValueError("soft values are strictly positive")
        else:
            if self.mag < 0:
                raise ValueError("compact values are nonnegative")
            if not is_power_of(self.mag.denominator, self.p):
                raise ValueError(f"{self.mag} is not in N[1/{self.p}]")

    @property
    def is_finite(self) -> bool:
        return self.mag is not None

    def _key(self):
        if self.mag is None:
            return (1, 0, 0)
        return (0, self.mag, 0 if self.soft else 1)

    def __add__(self, other):
        return value_add(self, other)

    def __le__(self, other):
        return value_leq(self, other)

    def __lt__(self, other):
        return value_leq(self, other) and self != other

    def __repr__(self):
        tag = "soft" if self.soft else "compact"
        mag = "inf" if self.mag is None else fraction_str(self.mag)
        return f"Uhf{self.p}({tag} {mag})"


def compact(p: int, q) -> UhfValue:
    return UhfValue(p, False, Fraction(q))


def soft(p: int, t=None) -> UhfValue:
    return UhfValue(p, True, None if t is None else Fraction(t))


# ---------------------------------------------------------------- scales


class ExtNatScale:
    name = "extnat"

    zero = ExtNat(0)
    top = INF
    unit = ExtNat(1)

    def __eq__(self, other):
        return type(other) is ExtNatScale

    def __hash__(self):
        return hash("extnat")

    def __repr__(self):
        return "ExtNatScale()"

    def owns(self, v) -> bool:
        return type(v) is ExtNat

    def add(self, a: ExtNat, b: ExtNat) -> ExtNat:
        if a.n is None or b.n is None:
            return INF
        return ExtNat(a.n + b.n)

    def leq(self, a: ExtNat, b: ExtNat) -> bool:
        return a._key() <= b._key()

    def waybelow(self, a: ExtNat, b: ExtNat) -> bool:
        return a.n is not None and self.leq(a, b)

    def mul(self, v: ExtNat, m: int) -> ExtNat:
        if m == 0:
            return self.zero
        return INF if v.n is None else ExtNat(v.n * m)

    def approx(self, v: ExtNat, n: int) -> ExtNat:
        # largest c in {0..n} with c << v
        return ExtNat(n) if v.n is None else ExtNat(min(v.n, n))

    def sample(self, rng: random.Random, max_value: int, max_den: int) -> ExtNat:
        if rng.random() < 0.08:
            return INF
        return ExtNat(rng.randint(1, max_value))

    def to_json(self):
        return "extnat"


class UhfScale:
    """Cuntz semigroup of the UHF algebra of type p^inf."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"UHF scale needs a prime, got {p}")
        self.p = p
        self.zero = UhfValue(p, False, Fraction(0))
        self.top = UhfValue(p, True, None)
        self.unit = UhfValue(p, False, Fraction(1))

    name = "uhf"

    def __eq__(self, other):
        return type(other) is UhfScale and other.p == self.p

    def __hash__(self):
        return hash(("uhf", self.p))

    def __repr__(self):
        return f"UhfScale({self.p})"

    def owns(self, v) -> bool:
        return type(v) is UhfValue and v.p == self.p

    def add(self, a: UhfValue, b: UhfValue) -> UhfValue:
        if a.mag is None or b.mag is None:
            return self.top
        return UhfValue(self.p, a.soft or b.soft, a.mag + b.mag)

    def leq(self, a: UhfValue, b: UhfValue) -> bool:
        return a._key() <= b._key()

    def waybelow(self, a: UhfValue, b: UhfValue) -> bool:
        if not b.soft:
            return self.leq(a, b)
        if b.mag is None:
            return a.mag is not None
        return a.mag is not None and a.mag < b.mag

    def mul(self, v: UhfValue, m) -> UhfValue:
        m = Fraction(m)
        if m == 0:
            return self.zero
        if m < 0:
            raise ValueError("negative scalar")
        if v.mag is None:
            return self.top
        if v.mag == 0:
            return self.zero
        return UhfValue(self.p, v.soft, v.mag * m)

    def approx(self, v: UhfValue, n: int) -> UhfValue:
        # largest c in p^-n N, c <= n, with compact c << v
        den = self.p ** n
        if v.mag is None:
            c = Fraction(n)
        elif not v.soft:
            c = min(Fraction((v.mag * den).numerator // (v.mag * den).denominator, den), Fraction(n))
        else:
            scaled = v.mag * den
            ceil = -((-scaled.numerator) // scaled.denominator)
            c = min(Fraction(ceil - 1, den), Fraction(n))
        return UhfValue(self.p, False, c)

    def sample(self, rng: random.Random, max_value: int, max_den: int) -> UhfValue:
        r = rng.random()
        if r < 0.08:
            return self.top
        if r < 0.55:
            j = 0
            while self.p ** (j + 1) <= max_den and rng.random() < 0.6:
                j += 1
            den = self.p ** j
            return UhfValue(self.p, False, Fraction(rng.randint(1, max_value * den), den))
        den = rng.randint(1, max_den)
        return UhfValue(self.p, True, Fraction(rng.randint(1, max_value * den), den))

    def to_json(self):
        return {"uhf": self.p}


class TrivialScale:
    """The one-point scale {0}; Cuntz semigroup of the zero algebra."""

    name = "trivial"
    zero = ExtNat(0)
    top = ExtNat(0)
    unit = ExtNat(0)

    def __eq__(self, other):
        return type(other) is TrivialScale

    def __hash__(self):
        return hash("trivial")

    def __repr__(self):
        return "TrivialScale()"

    def owns(self, v) -> bool:
        return v == self.zero

    def add(self, a, b):
        return self.zero

    def leq(self, a, b):
        return True

    def waybelow(self, a, b):
        return True

    def mul(self, v, m):
        return self.zero

    def approx(self, v, n):
        return self.zero

    def sample(self, rng, max_value, max_den):
        return self.zero

    def to_json(self):
        return "trivial"


EXTNAT = ExtNatScale()


def scale_of(v):
    if type(v) is ExtNat:
        return EXTNAT
    if type(v) is UhfValue:
        return UhfScale(v.p)
    raise TypeError(f"not a scale value: {v!r}")


def _common_scale(a, b):
    sa, sb = scale_of(a), scale_of(b)
    if sa != sb:
        raise MixedScaleError(f"values from different scales: {a!r}, {b!r}")
    return sa


def value_add(a, b):
    return _common_scale(a, b).add(a, b)


def value_leq(a, b) -> bool:
    return _common_scale(a, b).leq(a, b)


def value_waybelow(a, b) -> bool:
    return _common_scale(a, b).waybelow(a, b)


# ---------------------------------------------------------- coefficients


class IntegerRing:
    name = "Z"
    is_trivial = False

    def __eq__(self, other):
        return type(other) is IntegerRing

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "IntegerRing()"

    zero = 0

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, m: int, a):
        return m * a

    def check(self, a):
        if isinstance(a, bool) or not isinstance(a, int):
            if isinstance(a, Fraction) and a.denominator == 1:
                return int(a)
            raise ValueError(f"{a!r} is not an integer")
        return a

    def sample(self, rng: random.Random, bound: int = 3):
        return rng.randint(-bound, bound)

    def to_json(self, a):
        return str(a)

    def from_json(self, obj):
        return self.check(parse_fraction(obj))

    def describe(self):
        return {"ring": "Z"}


class PadicRing:
    """The ring Z[1/p] of rationals with p-power denominators."""

    is_trivial = False

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"Z[1/p] needs a prime, got {p}")
        self.p = p
        self.name = f"Z[1/{p}]"

    def __eq__(self, other):
        return type(other) is PadicRing and other.p == self.p

    def __hash__(self):
        return hash(("padic", self.p))

    def __repr__(self):
        return f"PadicRing({self.p})"

    zero = Fraction(0)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, m, a):
        return m * a

    def check(self, a):
        a = parse_fraction(a)
        if not is_power_of(a.denominator, self.p):
            raise ValueError(f"{a} is not in Z[1/{self.p}]")
        return a

    def sample(self, rng: random.Random, bound: int = 3):
        j = rng.choice([0, 0, 1, 2])
        return Fraction(rng.randint(-bound * self.p ** j, bound * self.p ** j), self.p ** j)

    def to_json(self, a):
        return fraction_str(a)

    def from_json(self, obj):
        return self.check(obj)

    def describe(self):
        return {"ring": "Z[1/p]", "p": self.p}


@dataclass(frozen=True)
class FgAbGroup:
    """Z^rank x Z/n_1 x ... x Z/n_t; elements are int tuples with torsion
    coordinates reduced."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.rank < 0 or any(n < 2 for n in self.torsion):
            raise ValueError("rank >= 0 and torsion orders >= 2 required")

    @property
    def length(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.length == 0

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def name(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{n}" for n in self.torsion]
        return " x ".join(parts) if parts else "0"

    @property
    def zero(self):
        return (0,) * self.length

    def normalize(self, v) -> tuple:
        v = tuple(v)
        return v[: self.rank] + tuple(x % n for x, n in zip(v[self.rank:], self.torsion))

    def add(self, a, b):
        return self.normalize(x + y for x, y in zip(a, b))

    def neg(self, a):
        return self.normalize(-x for x in a)

    def mul(self, m: int, a):
        return self.normalize(m * x for x in a)

    def check(self, a):
        if isinstance(a, (int, str)) and self.length == 1:
            a = (a,)
        a = tuple(a)
        if len(a) != self.length or any(isinstance(x, bool) or not isinstance(x, int) for x in a):
            raise ValueError(f"{a!r} is not an element of {self.name}")
        return self.normalize(a)

    def elements(self, bound: int = 2) -> Iterator[tuple]:
        """All elements, with free coordinates restricted to |x| <= bound."""
        ranges = [range(-bound, bound + 1)] * self.rank + [range(n) for n in self.torsion]
        yield from product(*ranges)

    def sample(self, rng: random.Random, bound: int = 3):
        return self.normalize(
            [rng.randint(-bound, bound) for _ in range(self.rank)] + [rng.randrange(n) for n in self.torsion]
        )

    def to_json(self, a):
        return list(a)

    def from_json(self, obj):
        if isinstance(obj, str):
            obj = [int(obj)]
        return self.check([int(x) for x in obj])

    def describe(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}
