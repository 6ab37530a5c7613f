from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cu1 import arcs
from cu1.arcs import Space
from cu1.errors import NotContained
from cu1.ktheory import delta_hom, identity_hom, k1_of_ideal
from cu1.values import IntegerRing, PadicRing

import oracles
from strategies import open_set, spaces

Z = IntegerRing()
I, C = Space.INTERVAL, Space.CIRCLE


def nested():
    return spaces.flatmap(lambda s: st.tuples(open_set(s), open_set(s), open_set(s)).map(
        lambda t: (arcs.canonicalize(s, t[0].arcs),
                   arcs.union(t[0], t[1]),
                   arcs.union(arcs.union(t[0], t[1]), t[2]))))


@given(spaces.flatmap(lambda s: open_set(s, 4)))
def test_rank_counts_carrier_components(v):
    assert k1_of_ideal(v.space, v, Z).rank == oracles.rank_oracle(v)
    assert k1_of_ideal(v.space, v, None).rank == 0


@given(nested())
def test_delta_composes(vwu):
    v, w, u = vwu
    gv, gw, gu = (k1_of_ideal(v.space, x, Z) for x in vwu)
    assert delta_hom(gv, gu).matrix == delta_hom(gw, gu).compose(delta_hom(gv, gw)).matrix
    assert delta_hom(gv, gu).matrix == oracles.inclusion_matrix(v, u)
    assert delta_hom(gw, gw).is_identity


def test_arc_into_full_circle_is_an_isomorphism():
    small = arcs.open_set(C, arcs.proper(C, F(1, 4), F(1, 2)))
    d = delta_hom(k1_of_ideal(C, small, Z), k1_of_ideal(C, arcs.whole(C), Z))
    assert d.matrix == ((1,),) and d((5,)) == (5,)


def test_arcs_merging_in_the_interval():
    v = arcs.open_set(I, arcs.proper(I, F(1, 8), F(1, 4)), arcs.proper(I, F(1, 2), F(3, 4)))
    w = arcs.open_set(I, arcs.proper(I, 0, F(7, 8)))
    d = delta_hom(k1_of_ideal(I, v, Z), k1_of_ideal(I, w, Z))
    assert d.matrix == ((1, 1),) and d((2, -3)) == (-1,)
    # a component reaching the boundary carries no K1
    edge = arcs.open_set(I, arcs.leftclosed(F(7, 8)))
    assert delta_hom(k1_of_ideal(I, v, Z), k1_of_ideal(I, edge, Z)).matrix == ()


def test_padic_coefficients():
    v = arcs.open_set(C, arcs.proper(C, 0, F(1, 2)), arcs.proper(C, F(1, 2), 0))
    g = k1_of_ideal(C, v, PadicRing(2))
    d = delta_hom(g, k1_of_ideal(C, arcs.whole(C), PadicRing(2)))
    assert d((F(1, 2), F(1, 4))) == (F(3, 4),)


def test_not_contained():
    v = arcs.open_set(I, arcs.proper(I, 0, F(1, 2)))
    w = arcs.open_set(I, arcs.proper(I, F(1, 4), 1))
    with pytest.raises(NotContained):
        delta_hom(k1_of_ideal(I, v, Z), k1_of_ideal(I, w, Z))


def test_broken_variant_is_not_functorial():
    v = arcs.open_set(C, arcs.proper(C, 0, F(1, 8)))
    w = arcs.open_set(C, arcs.proper(C, 0, F(1, 2)))
    u = arcs.whole(C)
    gv, gw, gu = (k1_of_ideal(C, x, Z) for x in (v, w, u))
    bad = lambda a, b: delta_hom(a, b, fault="delta-nonfunctorial")  # noqa: E731
    assert bad(gv, gu).matrix != bad(gw, gu).compose(bad(gv, gw)).matrix
    assert identity_hom(gv).is_identity
