"""Print the log-space constants and lattice checks for a grid of (k, r)."""

import math
from dataclasses import dataclass, field

from balfactor.bounds import constants, verify_lattice_facts


@dataclass
class Config:
    ks: list[int] = field(default_factory=lambda: [2, 3, 4])
    rs: list[int] = field(default_factory=lambda: [2, 3, 4])


def run(cfg: Config) -> None:
    ln10 = math.log(10)
    print(f"{'k':>2} {'r':>2} {'L':>4} {'|X|':>6} {'log10 C_clique':>15} {'log10 C_main':>14} {'log10 C_k':>12} lattice")
    for k in cfg.ks:
        for r in cfg.rs:
            t = constants(k, r)
            ok = verify_lattice_facts(k - 1, r).passed
            print(
                f"{k:>2} {r:>2} {t.L:>4} {t.x_count:>6} {t.log_C_clique / ln10:>15.2f}"
                f" {t.log_C_thm_main / ln10:>14.4g} {t.log_C_thm_kcolour / ln10:>12.4g} {'ok' if ok else 'FAIL'}"
            )


if __name__ == "__main__":
    run(Config())
