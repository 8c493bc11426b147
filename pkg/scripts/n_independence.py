"""Median perfect-matching deviation against the number of parts n.

Prints one line per n and flags growth: if the largest n's median is above
twice the smallest n's, the deviation does not look n-independent.
"""

import argparse
import statistics
from dataclasses import dataclass, field

from balfactor.graph_model import PatternGraph
from balfactor.harness import sweep_rows


@dataclass
class Config:
    k: int = 3
    r: int = 2
    n_list: list[int] = field(default_factory=lambda: [10, 50, 100])
    trials: int = 20
    seed: int = 17


def run(cfg: Config) -> dict[int, float]:
    h = PatternGraph.complete(cfg.r)
    rows = sweep_rows(cfg.n_list, cfg.k, h, cfg.trials, cfg.seed)
    medians = {}
    for n in cfg.n_list:
        devs = [float(row["h_deviation"]) for row in rows if int(row["n"]) == n]
        medians[n] = statistics.median(devs)
        print(f"n={n:<5} median={medians[n]:.4f} max={max(devs):.4f}")
    lo, hi = medians[cfg.n_list[0]], medians[cfg.n_list[-1]]
    print("flag: median grew more than 2x" if hi > 2 * lo else "medians look flat")
    return medians


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--n-list", default="10,50,100")
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=17)
    a = ap.parse_args()
    run(Config(a.k, a.r, [int(x) for x in a.n_list.split(",")], a.trials, a.seed))
