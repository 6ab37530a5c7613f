import json
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cu1 import arcs, codec, core
from cu1.arcs import Space
from cu1.errors import ModelMismatch, ParseError
from cu1.values import EXTNAT, INF, ExtNat, UhfScale, compact, soft

from strategies import MODELS, element, open_set, spaces

models = st.sampled_from(sorted(MODELS))


@given(models.flatmap(lambda k: st.tuples(st.just(MODELS[k]), element(MODELS[k]))))
def test_element_round_trip(args):
    m, s = args
    text = json.dumps(codec.element_to_json(m, s))
    assert codec.element_from_json(m, json.loads(text)) == s
    assert "." not in text.replace("Z/", "")  # no floats anywhere


@given(spaces.flatmap(lambda s: open_set(s, 4)))
def test_open_set_round_trip(v):
    assert codec.openset_from_json(json.loads(json.dumps(codec.openset_to_json(v)))) == v


@pytest.mark.parametrize("v", [ExtNat(3), INF, compact(2, F(3, 4)), soft(2, F(1, 3)), soft(2)])
def test_value_round_trip(v):
    scale = EXTNAT if isinstance(v, ExtNat) else UhfScale(2)
    assert codec.value_from_json(codec.value_to_json(v), scale) == v


def test_uhf_bare_number_is_compact():
    assert codec.value_from_json("1/2", UhfScale(2)) == compact(2, F(1, 2))


@pytest.mark.parametrize("desc", [
    {"kind": "interval"}, {"kind": "circle"}, {"kind": "uhf-circle", "p": 3},
    {"kind": "uhf-interval", "p": 2}, {"kind": "zero"},
    {"kind": "simple", "scale": "extnat", "group": {"rank": 1, "torsion": [2]}},
    {"kind": "circle", "fault": "delta-nonfunctorial"},
])
def test_model_round_trip(desc):
    m = codec.model_from_json(desc)
    assert codec.model_from_json(codec.model_to_json(m)) == m


def test_bad_input_raises_parse_error():
    m = core.circle_model()
    with pytest.raises(ParseError):
        codec.element_from_json(m, {"cu": {"space": "circle", "pieces": [{"from": "x", "to": "1/2", "value": 1}]}})
    with pytest.raises(ParseError):
        codec.element_from_json(m, {"cu": {"space": "sphere"}})
    with pytest.raises(ParseError):
        codec.model_from_json({"kind": "torus"})
    with pytest.raises(ParseError):
        codec.value_from_json(0.5, EXTNAT)


def test_scale_mismatch_is_a_model_mismatch():
    doc = {"cu": {"space": "circle", "scale": "extnat", "pieces": [], "points": []}}
    with pytest.raises(ModelMismatch):
        codec.element_from_json(core.uhf_circle_model(2), doc)
    with pytest.raises(ModelMismatch):
        codec.element_from_json(core.interval_model(), doc)


def test_wrapping_piece_and_constant_circle():
    m = core.circle_model()
    doc = {"cu": {"space": "circle", "scale": "extnat",
                  "pieces": [{"from": "3/4", "to": "1/4", "value": 2}], "points": []},
           "k1": {"coeffs": ["5"]}}
    s = codec.element_from_json(m, doc)
    assert s.x.at(0) == ExtNat(2) and s.k == (5,)
    assert codec.element_from_json(m, codec.element_to_json(m, m.top)) == m.top


def test_morphism_and_chain_documents():
    m = core.circle_model()
    alpha = codec.morphism_from_json({"kind": "rotate", "by": "1/4"}, m)
    assert alpha.shift == F(1, 4)
    beta = codec.morphism_from_json({"kind": "circle-to-interval", "target": {"kind": "interval"}}, m)
    assert beta.target == core.interval_model()
    chain = codec.chain_from_json(m, {"linear": {"base": codec.element_to_json(m, m.zero),
                                                 "step": codec.element_to_json(m, m.unit)}})
    assert m.sup_chain(chain) == m.top


def test_arc_kinds():
    for arc in (arcs.leftclosed(F(1, 2)), arcs.rightclosed(F(1, 3)), arcs.full(Space.INTERVAL),
                arcs.proper(Space.INTERVAL, 0, 1)):
        assert codec.arc_from_json(codec.arc_to_json(arc), Space.INTERVAL) == arc
