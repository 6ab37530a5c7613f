"""Run both property suites over the model catalog for several seeds.

Writes one JSON line per (suite, model, seed) to ``--out`` and prints a
compact table of failing laws.
"""
import argparse
import json
import time
from dataclasses import dataclass, field

from cu1.axiomlab import SampleConfig, run_axiom_suite, run_structure_suite

CATALOG = [
    {"kind": "interval"},
    {"kind": "circle"},
    {"kind": "af"},
    {"kind": "simple", "scale": "extnat", "group": {"rank": 0, "torsion": [3]}},
    {"kind": "uhf-circle", "p": 2},
    {"kind": "uhf-interval", "p": 3},
    {"kind": "uhf-limit", "p": 2, "stages": 4},
]


@dataclass
class SweepConfig:
    seeds: list = field(default_factory=lambda: [0, 1, 2])
    samples: int = 200
    out: str = "sweep.jsonl"


def sweep(cfg: SweepConfig):
    rows = []
    for desc in CATALOG:
        runners = [("axioms", run_axiom_suite)]
        if desc["kind"] != "uhf-limit":
            runners.append(("structure", run_structure_suite))
        for seed in cfg.seeds:
            for name, runner in runners:
                t0 = time.perf_counter()
                rep = runner(SampleConfig(seed=seed, samples=cfg.samples, model=desc))
                rows.append({"suite": name, "model": desc, "seed": seed,
                             "seconds": round(time.perf_counter() - t0, 2),
                             "failures": rep.failures()})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--out", default="sweep.jsonl")
    args = ap.parse_args()
    cfg = SweepConfig(args.seeds, args.samples, args.out)
    rows = sweep(cfg)
    with open(cfg.out, "w") as fh:
        for r in rows:
            fh.write(json.dumps(r) + "\n")
    for r in rows:
        status = "ok" if not r["failures"] else r["failures"]
        print(f"{r['suite']:9s} {r['model']['kind']:12s} seed={r['seed']} {r['seconds']:6.2f}s  {status}")


if __name__ == "__main__":
    main()
