"""Search for failures of weak cancellation, s + r << t + r  =>  s <= t.

Prints the first counterexamples found in each model together with the
ideals and K1 data involved.
"""
import argparse
from dataclasses import dataclass

from cu1 import codec
from cu1.axiomlab import SampleConfig, run_structure_suite

MODELS = [{"kind": "interval"}, {"kind": "circle"}, {"kind": "uhf-circle", "p": 2},
          {"kind": "af"}, {"kind": "simple", "group": {"rank": 0, "torsion": [3]}}]


@dataclass
class ProbeConfig:
    seed: int = 7
    samples: int = 500


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--samples", type=int, default=500)
    a = ap.parse_args()
    cfg = ProbeConfig(a.seed, a.samples)
    for desc in MODELS:
        rep = run_structure_suite(SampleConfig(seed=cfg.seed, samples=cfg.samples, model=desc))
        law = rep.laws["weak-cancellation"]
        print(f"{desc['kind']:11s} checked={law.checked} failed={law.failed}")
        model = codec.model_from_json(desc)
        for cx in rep.counterexamples:
            if cx["law"] != "weak-cancellation":
                continue
            s, t, r = (codec.element_from_json(model, x) for x in cx["args"])
            print(f"    s={s!r}\n    t={t!r}\n    r={r!r}")
            break


if __name__ == "__main__":
    main()
