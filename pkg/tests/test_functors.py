from fractions import Fraction as F

import pytest

from cu1 import core, functors
from cu1.errors import NotCancellative
from cu1.values import EXTNAT, FgAbGroup

from strategies import MODELS

CATALOG = dict(MODELS, zero=core.zero_model(), simple_z=core.simple_model(EXTNAT, FgAbGroup(1)))


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_h_star_matches_the_k_theory_oracle(name):
    assert functors.compare_with_oracle(CATALOG[name]) == []


@pytest.mark.parametrize("model, expected", [
    (core.interval_model(), {"group": "Z", "cone": "N", "unit": 1}),
    (core.circle_model(), {"group": "Z^2", "cone": "{0} u (N+ x Z)", "unit": [1, 0]}),
    (core.uhf_circle_model(2), {"group": "Z[1/2]^2", "cone": "{0} u (N[1/2]+ x Z[1/2])", "unit": [1, 0]}),
    (core.af_model(), {"group": "Z", "cone": "N", "unit": 1}),
    (core.simple_model(EXTNAT, FgAbGroup(0, (3,))), {"group": "Z x Z/3", "cone": "{0} u (N+ x Z/3)", "unit": [1, 0]}),
    (core.zero_model(), {"group": "0", "cone": "0", "unit": 0}),
])
def test_h_star_values(model, expected):
    assert functors.h_star(model).to_json() == expected


def test_pair_classes_agree_with_formal_differences():
    m = functors.compacts_of(core.circle_model())
    g = functors.grothendieck(m)
    classes = functors.pair_classes(m, bound=2)
    seen = {}
    for (s, t), members in classes.items():
        diff = g.sub(s, t)
        for a, b in members:
            assert g.sub(a, b) == diff
        assert diff not in seen
        seen[diff] = (s, t)


def test_cone_of_the_circle_is_pointed():
    g = functors.h_star(core.circle_model())
    assert g.in_cone((F(1), -4)) and g.in_cone(g.zero)
    assert not g.in_cone((F(0), 1))
    assert not g.in_cone((F(-1), 0))


def test_compacts_embed_and_read_back():
    m = core.uhf_circle_model(3)
    mono = functors.compacts_of(m)
    for e in mono.elements(bound=2, den=3):
        s = functors.embed(m, e)
        assert m.is_compact(s)
        assert functors.read_compact(m, s) == e


def test_non_cancellative_monoid_is_rejected():
    class Capped(functors.CompactMonoid):
        def add(self, a, b):
            return (min(a[0] + b[0], F(2)), None)

        def elements(self, bound=2, den=1):
            return [(F(i), None) for i in range(3)]

    with pytest.raises(NotCancellative):
        functors.grothendieck(Capped("N"))


@pytest.mark.parametrize("make", [
    lambda m: core.identity(m),
    lambda m: core.scaling(m, 2, 3),
    lambda m: core.reflection(m),
    lambda m: core.rotation(m, F(1, 3)),
    lambda m: core.circle_to_interval(m, core.interval_model()),
])
def test_recovery_squares_commute(make):
    report = functors.check_recovery_square(make(core.circle_model()), count=30)
    assert all(sq["pass"] for sq in report["squares"]), report


def test_unit_tracking():
    m = core.circle_model()
    assert functors.check_recovery_square(core.identity(m), count=5)["unit"] == "preserved"
    assert functors.check_recovery_square(core.scaling(m, 2), count=5)["unit"] == "not below"


def test_corrupted_k1_data_breaks_a_square():
    m = core.circle_model()
    bad = core.Cu1Morphism(m, m, "identity", overrides=((m.full, ((2,),)),))
    report = functors.check_recovery_square(bad, count=30)
    failed = {sq["name"] for sq in report["squares"] if not sq["pass"]}
    assert "h_star" in failed and "nu_max" in failed
