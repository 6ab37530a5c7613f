"""Command line front end.

Every verb prints one JSON object, ``{"ok": true, "result": ...}`` or
``{"ok": false, "error": {"code": ..., "message": ...}}``.  Exit codes: 0 on
success (a false comparison is a result, not an error), 1 when a suite or
recovery check fails, 2 on invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import axiomlab, codec, functors, limits
from .errors import Cu1Error, ParseError

EXIT_OK, EXIT_SUITE, EXIT_INPUT = 0, 1, 2


class SuiteFailed(Exception):
    def __init__(self, result):
        self.result = result


def load_json(arg: str):
    """A file path, or a JSON literal when the argument starts with ``{``/``[``."""
    try:
        if arg.lstrip().startswith(("{", "[")):
            return json.loads(arg)
        return json.loads(Path(arg).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read JSON from {arg!r}: {exc}") from exc


def _model(args):
    if not args.model:
        raise ParseError("--model is required")
    return codec.model_from_json(load_json(args.model))


def _element(model, arg):
    return codec.element_from_json(model, load_json(arg))


def _need(args, n):
    if len(args.inputs) != n:
        raise ParseError(f"{args.verb} takes {n} input file(s), got {len(args.inputs)}")
    return args.inputs


def _config(args):
    desc = load_json(args.model) if args.model else None
    if desc is None:
        raise ParseError("--model is required")
    return axiomlab.SampleConfig(seed=args.seed, samples=args.samples, model=desc)


# ------------------------------------------------------------------- verbs


def cmd_add(args):
    m = _model(args)
    a, b = (_element(m, f) for f in _need(args, 2))
    return codec.element_to_json(m, m.add(a, b))


def cmd_leq(args):
    m = _model(args)
    a, b = (_element(m, f) for f in _need(args, 2))
    return m.leq(a, b)


def cmd_waybelow(args):
    m = _model(args)
    a, b = (_element(m, f) for f in _need(args, 2))
    return m.waybelow(a, b)


def cmd_sup(args):
    m = _model(args)
    (f,) = _need(args, 1)
    return codec.element_to_json(m, m.sup_chain(codec.chain_from_json(m, load_json(f))))


def cmd_classify(args):
    m = _model(args)
    (f,) = _need(args, 1)
    return m.classify(_element(m, f))


def cmd_jmap(args):
    m = _model(args)
    (f,) = _need(args, 1)
    return codec.element_to_json(m, m.j_map(_element(m, f)))


def cmd_apply(args):
    m = _model(args)
    mf, ef = _need(args, 2)
    alpha = codec.morphism_from_json(load_json(mf), m)
    return codec.element_to_json(alpha.target, alpha.apply(_element(m, ef)))


def cmd_compacts(args):
    m = _model(args)
    mono = functors.compacts_of(m)
    return {"monoid": mono.describe(), "unit": functors.h_star(m).to_json()["unit"]}


def cmd_hstar(args):
    return functors.h_star(_model(args)).to_json()


def cmd_limit(args):
    if not args.inputs:
        raise ParseError("limit needs a system descriptor")
    desc = load_json(args.inputs[0])
    kind = desc.get("kind")
    stages = int(args.stages if args.stages is not None else desc.get("stages", 4))
    p = int(desc.get("p", 2))
    if kind == "group":
        g = limits.colimit_group(limits.multiplier_system(p, stages))
        sample = [[i, mm, str(limits.to_padic(g.element(i, mm), p))] for i in range(stages) for mm in (-1, 1, p)]
        return {"kind": kind, "p": p, "stages": stages, "colimit": f"Z[1/{p}]", "sample": sample}
    if kind != "uhf-circle":
        raise ParseError(f"unknown system kind {kind!r}")
    system = limits.uhf_stage_system(p, stages)
    closed = limits.uhf_closed_form(p)
    out = {"kind": kind, "p": p, "stages": stages,
           "stage_model": codec.model_to_json(system.model),
           "connecting": {"kind": "scale", "c": p, "k1": p},
           "closed_form": codec.model_to_json(closed),
           "compacts": functors.compacts_of(closed).describe()}
    images = []
    for f in args.inputs[1:]:
        obj = load_json(f)
        e = limits.LimitElement(int(obj["stage"]), codec.element_from_json(system.model, obj["element"]))
        images.append(codec.element_to_json(closed, limits.to_closed_form(e, p)))
    if images:
        out["images"] = images
    return out


def cmd_complete(args):
    (f,) = _need(args, 1)
    try:
        pres = limits.OrderedMonoidPresentation.from_json(load_json(f))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad presentation: {exc}") from exc
    comp = limits.complete_ordered_monoid(pres)
    names = pres.names
    show = lambda s: sorted(names[i] for i in s)  # noqa: E731
    again = limits.complete_ordered_monoid(comp.as_presentation())
    return {"ideals": [show(s) for s in comp.ideals],
            "compacts": [show(s) for s in comp.compacts()],
            "compacts_isomorphic": comp.compacts_isomorphic(),
            "recompletion_stable": limits.isomorphic(comp.as_presentation(), again.as_presentation())}


def _suite(runner, args):
    report = runner(_config(args))
    out = report.to_json()
    if not report.passed:
        raise SuiteFailed(out)
    return out


def cmd_check_axioms(args):
    return _suite(axiomlab.run_axiom_suite, args)


def cmd_check_structure(args):
    return _suite(axiomlab.run_structure_suite, args)


def cmd_check_recovery(args):
    m = _model(args)
    (f,) = _need(args, 1)
    alpha = codec.morphism_from_json(load_json(f), m)
    report = functors.check_recovery_square(alpha, seed=args.seed, count=min(args.samples, 200))
    if not all(sq["pass"] for sq in report["squares"]):
        raise SuiteFailed(report)
    return report


VERBS = {
    "add": cmd_add, "leq": cmd_leq, "waybelow": cmd_waybelow, "sup": cmd_sup,
    "classify": cmd_classify, "jmap": cmd_jmap, "apply": cmd_apply,
    "compacts": cmd_compacts, "hstar": cmd_hstar, "limit": cmd_limit,
    "complete": cmd_complete, "check-axioms": cmd_check_axioms,
    "check-structure": cmd_check_structure, "check-recovery": cmd_check_recovery,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cu1", description="Exact computations in the unitary Cuntz semigroup.")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("inputs", nargs="*", help="JSON files (or inline JSON) for the verb")
    p.add_argument("--model", help="model descriptor file or inline JSON")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--stages", type=int)
    p.add_argument("--out", help="also write the JSON result to this file")
    return p


def run(argv=None) -> tuple[int, dict]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = "Usage" if exc.code else "Help"
        return (EXIT_INPUT if exc.code else EXIT_OK), {"ok": not exc.code, "error": {"code": code, "message": "bad arguments"}}
    try:
        result = VERBS[args.verb](args)
        status, payload = EXIT_OK, {"ok": True, "result": result}
    except SuiteFailed as exc:
        status, payload = EXIT_SUITE, {"ok": True, "result": exc.result}
    except Cu1Error as exc:
        status, payload = EXIT_INPUT, {"ok": False, "error": {"code": exc.code, "message": str(exc)}}
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
    return status, payload


def main(argv=None) -> int:
    status, payload = run(argv)
    print(json.dumps(payload))
    return status


if __name__ == "__main__":
    sys.exit(main())
