from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cu1.values import (EXTNAT, INF, ExtNat, FgAbGroup, IntegerRing, PadicRing, TrivialScale, UhfScale,
                        compact, fraction_str, parse_fraction, soft, value_add, value_leq)
from cu1.errors import MixedScaleError

from strategies import value

UHF2 = UhfScale(2)
scales = st.sampled_from([EXTNAT, UHF2, UhfScale(3)])


def test_extnat_arithmetic():
    assert ExtNat(2) + ExtNat(3) == ExtNat(5)
    assert ExtNat(2) + INF == INF
    assert ExtNat(7) <= INF and not INF <= ExtNat(7)
    assert EXTNAT.waybelow(ExtNat(3), ExtNat(3))
    assert not EXTNAT.waybelow(INF, INF)
    assert EXTNAT.approx(INF, 5) == ExtNat(5)
    with pytest.raises(ValueError):
        ExtNat(-1)


def test_uhf_soft_absorbs_and_compacts_stay_compact():
    assert compact(2, Fraction(1, 2)) + compact(2, Fraction(1, 4)) == compact(2, Fraction(3, 4))
    assert compact(2, 1) + soft(2, Fraction(1, 3)) == soft(2, Fraction(4, 3))
    assert compact(2, 0) + soft(2, 1) == soft(2, 1)
    with pytest.raises(ValueError):
        compact(2, Fraction(1, 3))


def test_uhf_order_between_soft_and_compact():
    # soft t sits just below compact t
    assert UHF2.leq(soft(2, 1), compact(2, 1))
    assert not UHF2.leq(compact(2, 1), soft(2, 1))
    assert UHF2.waybelow(compact(2, 1), compact(2, 1))
    assert not UHF2.waybelow(soft(2, 1), soft(2, 1))
    assert UHF2.waybelow(compact(2, Fraction(1, 2)), soft(2, 1))


def test_mixing_scales_raises():
    with pytest.raises(MixedScaleError):
        value_add(ExtNat(1), compact(2, 1))
    with pytest.raises(MixedScaleError):
        value_leq(compact(3, 1), compact(2, 1))


def test_trivial_scale():
    t = TrivialScale()
    assert t.add(t.zero, t.zero) == t.zero and t.waybelow(t.zero, t.zero)


@given(scales.flatmap(lambda s: st.tuples(st.just(s), value(s), value(s), value(s))))
def test_value_monoid_and_order(args):
    s, a, b, c = args
    assert s.add(a, b) == s.add(b, a)
    assert s.add(s.add(a, b), c) == s.add(a, s.add(b, c))
    assert s.add(a, s.zero) == a
    assert s.leq(a, s.add(a, b))
    if s.leq(a, b):
        assert s.leq(s.add(a, c), s.add(b, c))
    if s.waybelow(a, b):
        assert s.leq(a, b)
        if s.leq(b, c):
            assert s.waybelow(a, c)


@given(scales.flatmap(lambda s: st.tuples(st.just(s), value(s))), st.integers(1, 30))
def test_approx_is_waybelow_and_increasing(args, n):
    s, v = args
    a = s.approx(v, n)
    assert s.waybelow(a, v) or a == s.zero
    assert s.leq(a, s.approx(v, n + 1))


@given(scales.flatmap(lambda s: st.tuples(st.just(s), value(s))))
def test_approx_reaches_compacts(args):
    s, v = args
    if s.waybelow(v, v):
        assert s.approx(v, 64) == v


@given(st.fractions(max_denominator=1000))
def test_fraction_text_round_trip(q):
    assert parse_fraction(fraction_str(q)) == q


def test_parse_fraction_rejects_floats():
    with pytest.raises(ValueError):
        parse_fraction(0.5)
    assert parse_fraction("3/4") == Fraction(3, 4)
    assert parse_fraction(2) == Fraction(2)


def test_coefficient_rings():
    z, z2 = IntegerRing(), PadicRing(2)
    assert z.check(Fraction(4, 1)) == 4
    with pytest.raises(ValueError):
        z.check(Fraction(1, 2))
    assert z2.check("3/8") == Fraction(3, 8)
    with pytest.raises(ValueError):
        z2.check("1/3")
    with pytest.raises(ValueError):
        PadicRing(4)


def test_finitely_generated_group():
    g = FgAbGroup(1, (3,))
    assert g.name == "Z x Z/3"
    assert g.add((1, 2), (1, 2)) == (2, 1)
    assert g.neg((0, 1)) == (0, 2)
    assert FgAbGroup().is_trivial and FgAbGroup().name == "0"
    assert len(list(FgAbGroup(0, (2, 2)).elements())) == 4
