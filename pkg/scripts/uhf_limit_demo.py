"""Compare the algebraic colimit of circle stages with the closed-form UHF model.

Samples stage elements, maps each pair through both routes and counts
disagreements in +, <= and <<.
"""
import argparse
import itertools
import random
from dataclasses import dataclass

from cu1 import codec, limits
from cu1.axiomlab import SampleConfig, Sampler


@dataclass
class DemoConfig:
    p: int = 2
    stages: int = 4
    elements: int = 30
    seed: int = 0
    max_den: int = 8


def run(cfg: DemoConfig) -> dict:
    system = limits.uhf_stage_system(cfg.p, cfg.stages)
    col = limits.colimit_cu1(system)
    closed = limits.uhf_closed_form(cfg.p)
    s = Sampler(system.model, SampleConfig(seed=cfg.seed, samples=1, max_den=cfg.max_den, max_value=3))
    rng = random.Random(cfg.seed)
    elems = [col.element(rng.randrange(cfg.stages), s.element()) for _ in range(cfg.elements)]
    image = [limits.to_closed_form(e, cfg.p) for e in elems]
    bad = {"add": 0, "leq": 0, "waybelow": 0}
    for (a, ca), (b, cb) in itertools.product(zip(elems, image), repeat=2):
        bad["add"] += limits.to_closed_form(col.add(a, b), cfg.p) != closed.add(ca, cb)
        bad["leq"] += col.leq(a, b) != closed.leq(ca, cb)
        bad["waybelow"] += col.waybelow(a, b) != closed.waybelow(ca, cb)
    example = {"stage": elems[0].stage,
               "stage_element": codec.element_to_json(system.model, elems[0].value),
               "closed_form": codec.element_to_json(closed, image[0])}
    return {"pairs": len(elems) ** 2, "disagreements": bad, "example": example}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--stages", type=int, default=4)
    ap.add_argument("--elements", type=int, default=30)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    out = run(DemoConfig(a.p, a.stages, a.elements, a.seed))
    print(f"pairs checked: {out['pairs']}")
    print(f"disagreements: {out['disagreements']}")
    print(f"example stage {out['example']['stage']}: {out['example']['stage_element']}")
    print(f"  closed form: {out['example']['closed_form']}")


if __name__ == "__main__":
    main()
