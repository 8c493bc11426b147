"""Search balanced 3-colourings of K_6 for one whose perfect matchings are all unbalanced."""

import argparse
from dataclasses import dataclass

from balfactor.graph_model import PatternGraph, save_colouring
from balfactor.oracle import find_unbalanced_colouring, min_deviation_bruteforce
from balfactor.palette import make_simplex_palette


@dataclass
class Config:
    n_v: int = 6
    k: int = 3
    seed: int = 0
    trials: int = 100_000
    out: str | None = None


def run(cfg: Config):
    edge = PatternGraph.complete(2)
    g = find_unbalanced_colouring(cfg.n_v, make_simplex_palette(cfg.k), edge, cfg.seed, cfg.trials)
    if g is None:
        print(f"no counterexample in {cfg.trials} trials")
        return None
    dev, emb = min_deviation_bruteforce(g, edge)
    text = save_colouring(g)
    print(text, end="")
    print(f"# min deviation {dev}, e.g. matching {emb.edges()}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    return g


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--out")
    a = ap.parse_args()
    run(Config(a.n, a.k, a.seed, a.trials, a.out))
