"""JSON encoding of values, open sets, step functions, elements and models.

Every number is written as an exact fraction string (``"3/4"``), the extended
natural infinity as ``"inf"``.
"""
from __future__ import annotations

import functools
from fractions import Fraction

from . import arcs, core, lsc
from .arcs import Space
from .errors import ParseError
from .values import (EXTNAT, ExtNat, FgAbGroup, INF, TrivialScale, UhfScale,
                     UhfValue, fraction_str, parse_fraction)


def _parsing(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ParseError:
            raise
        except (ValueError, KeyError, TypeError, IndexError, ZeroDivisionError, AttributeError) as exc:
            raise ParseError(f"{fn.__name__}: {exc}") from exc
    return wrapper


def _frac(obj) -> Fraction:
    return parse_fraction(obj)


# ------------------------------------------------------------------ values


def scale_to_json(scale):
    return scale.to_json()


@_parsing
def scale_from_json(obj):
    if obj == "extnat":
        return EXTNAT
    if obj == "trivial":
        return TrivialScale()
    if isinstance(obj, dict) and "uhf" in obj:
        return UhfScale(int(obj["uhf"]))
    raise ValueError(f"unknown scale {obj!r}")


def value_to_json(v):
    if isinstance(v, ExtNat):
        return "inf" if v.n is None else v.n
    return {"tag": "soft" if v.soft else "compact", "val": "inf" if v.mag is None else fraction_str(v.mag)}


@_parsing
def value_from_json(obj, scale):
    if isinstance(scale, UhfScale):
        if not isinstance(obj, dict):
            q = _frac(obj)
            return UhfValue(scale.p, False, q)
        tag = obj["tag"]
        if tag not in ("compact", "soft"):
            raise ValueError(f"bad tag {tag!r}")
        mag = None if obj["val"] == "inf" else _frac(obj["val"])
        return UhfValue(scale.p, tag == "soft", mag)
    if obj == "inf":
        return INF if scale == EXTNAT else _bad(obj)
    q = _frac(obj)
    if q.denominator != 1:
        raise ValueError(f"{obj!r} is not a natural number")
    v = ExtNat(int(q))
    if not scale.owns(v):
        raise ValueError(f"{obj!r} is not in {scale!r}")
    return v


def _bad(obj):
    raise ValueError(f"{obj!r} is not a value of this scale")


# --------------------------------------------------------------- open sets


def arc_to_json(arc):
    if arc.kind == arcs.FULL:
        return {"kind": "full"}
    if arc.kind == arcs.LEFTCLOSED:
        return {"kind": "leftclosed", "b": fraction_str(arc.b)}
    if arc.kind == arcs.RIGHTCLOSED:
        return {"kind": "rightclosed", "a": fraction_str(arc.a)}
    return {"kind": "proper", "a": fraction_str(arc.a), "b": fraction_str(arc.b)}


@_parsing
def arc_from_json(obj, space):
    kind = obj["kind"]
    if kind == "full":
        return arcs.full(space)
    if kind == "proper":
        return arcs.proper(space, _frac(obj["a"]), _frac(obj["b"]))
    if space is not Space.INTERVAL:
        raise ValueError(f"{kind} arcs exist only on the interval")
    if kind == "leftclosed":
        return arcs.leftclosed(_frac(obj["b"]))
    if kind == "rightclosed":
        return arcs.rightclosed(_frac(obj["a"]))
    raise ValueError(f"unknown arc kind {kind!r}")


def openset_to_json(v):
    return {"space": v.space.value, "arcs": [arc_to_json(a) for a in v.arcs]}


@_parsing
def openset_from_json(obj):
    space = Space(obj["space"])
    return arcs.canonicalize(space, [arc_from_json(a, space) for a in obj.get("arcs", [])])


# ------------------------------------------------------------ step functions


def stepfn_to_json(f):
    out = {"space": f.space.value, "scale": scale_to_json(f.scale)}
    if f.space is Space.POINT:
        out["value"] = value_to_json(f.points[0])
        return out
    z = f.scale.zero
    key = lambda v: v._key()  # noqa: E731
    pieces, points = [], []
    if f.space is Space.CIRCLE and not f.breaks:
        if f.pieces[0] != z:
            pieces.append({"from": "0", "to": "0", "value": value_to_json(f.pieces[0])})
            points.append({"at": "0", "value": value_to_json(f.pieces[0])})
        return {**out, "pieces": pieces, "points": points}
    k = len(f.breaks)
    for i, v in enumerate(f.pieces):
        if v == z:
            continue
        a = f.breaks[i]
        b = f.breaks[i + 1] if f.space is Space.INTERVAL else f.breaks[(i + 1) % k]
        pieces.append({"from": fraction_str(a), "to": fraction_str(b), "value": value_to_json(v)})
    for i, w in enumerate(f.points):
        nb = lsc._neighbours(f.space, f.pieces, i)
        if w != min(nb, key=key):
            points.append({"at": fraction_str(f.breaks[i]), "value": value_to_json(w)})
    return {**out, "pieces": pieces, "points": points}


@_parsing
def stepfn_from_json(obj, scale=None):
    space = Space(obj["space"])
    sc = scale_from_json(obj["scale"]) if "scale" in obj else scale
    if sc is None:
        raise ValueError("step function without a scale")
    if scale is not None and sc != scale:
        from .errors import ModelMismatch
        raise ModelMismatch(f"function over {sc!r}, model expects {scale!r}")
    if space is Space.POINT:
        v = obj.get("value")
        if v is None and obj.get("points"):
            v = obj["points"][0]["value"]
        return lsc.constant(space, sc, value_from_json(0 if v is None else v, sc))
    pieces = [(_frac(p["from"]), _frac(p["to"]), value_from_json(p["value"], sc)) for p in obj.get("pieces", [])]
    points = {_frac(p["at"]): value_from_json(p["value"], sc) for p in obj.get("points", [])}
    return lsc.from_pieces(space, sc, pieces, points)


# ------------------------------------------------------------------ elements


def element_to_json(model, s):
    ring = model.ring
    if model.kind == "simple":
        k = s.k[0] if s.k else ring.zero
        return {"simple": {"x": value_to_json(s.x.points[0]), "k": ring.to_json(k)}}
    coeffs = [ring.to_json(c) for c in s.k] if ring is not None else []
    return {"cu": stepfn_to_json(s.x), "k1": {"coeffs": coeffs}}


@_parsing
def element_from_json(model, obj):
    from .errors import ModelMismatch
    if "simple" in obj:
        if model.space is not Space.POINT:
            raise ModelMismatch(f"simple-model element given to the {model.kind} model")
        body = obj["simple"]
        x = lsc.constant(Space.POINT, model.scale, value_from_json(body["x"], model.scale))
        if x.is_zero:
            return model.zero
        if model.ring is None:
            return model.element(x)
        return model.element(x, [model.ring.from_json(body.get("k", model.ring.to_json(model.ring.zero)))])
    x = stepfn_from_json(obj["cu"], model.scale)
    if x.space is not model.space:
        raise ModelMismatch(f"function over {x.space.value}, model lives on {model.space.value}")
    coeffs = obj.get("k1", {}).get("coeffs", [])
    if model.ring is None:
        if any(parse_fraction(c) != 0 for c in coeffs if not isinstance(c, list)):
            raise ValueError("this model carries no K1")
        return model.element(x)
    if not x.support and coeffs:
        coeffs = []
    return model.element(x, [model.ring.from_json(c) for c in coeffs])


# -------------------------------------------------------------------- models


def model_to_json(model):
    out = {"kind": model.kind}
    if model.kind in ("uhf-circle", "uhf-interval"):
        out["p"] = model.scale.p
    if model.kind in ("af", "simple"):
        out["scale"] = scale_to_json(model.scale)
    if model.kind == "simple":
        out["group"] = model.ring.describe()
    if model.fault:
        out["fault"] = model.fault
    return out


@_parsing
def model_from_json(obj):
    kind = obj["kind"]
    fault = obj.get("fault")
    if kind == "interval":
        return core.interval_model(fault)
    if kind == "circle":
        return core.circle_model(fault)
    if kind == "uhf-circle":
        return core.uhf_circle_model(int(obj["p"]), fault)
    if kind == "uhf-interval":
        return core.uhf_interval_model(int(obj["p"]), fault)
    if kind == "af":
        return core.af_model(scale_from_json(obj.get("scale", "extnat")), fault)
    if kind == "simple":
        g = obj.get("group", {})
        group = FgAbGroup(int(g.get("rank", 0)), tuple(int(n) for n in g.get("torsion", [])))
        return core.simple_model(scale_from_json(obj.get("scale", "extnat")), group, fault)
    if kind == "zero":
        return core.zero_model()
    raise ValueError(f"unknown model kind {kind!r}")


# ----------------------------------------------------------------- morphisms


@_parsing
def morphism_from_json(obj, source):
    target = model_from_json(obj["target"]) if "target" in obj else source
    kind = obj["kind"]
    overrides = tuple(
        (openset_from_json(o["ideal"]), tuple(tuple(int(e) for e in row) for row in o["matrix"]))
        for o in obj.get("overrides", [])
    )
    c = _frac(obj.get("c", 1))
    c = int(c) if c.denominator == 1 else c
    m = _frac(obj.get("k1", 1))
    m = int(m) if m.denominator == 1 else m
    if kind == "zero":
        c, m = 0, 0
    return core.Cu1Morphism(source, target, kind, c=c, k1_factor=m,
                            shift=_frac(obj.get("by", 0)), overrides=overrides)


@_parsing
def chain_from_json(model, obj):
    if "terms" in obj:
        return [element_from_json(model, t) for t in obj["terms"]]
    if "approximate" in obj:
        return core.ApproxChain(element_from_json(model, obj["approximate"]))
    if "linear" in obj:
        body = obj["linear"]
        return core.LinearChain(element_from_json(model, body["base"]), element_from_json(model, body["step"]))
    raise ValueError("chain needs 'terms', 'approximate' or 'linear'")
