"""End-to-end solve and sweep drivers behind the CLI."""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from balfactor import __version__
from balfactor.bounds import constants, log_clique_bound, log_h_factor_bound
from balfactor.clique_solver import initial_factor, local_search
from balfactor.graph_model import (
    STREAM_RESTART,
    STREAM_SWEEP,
    ColouredCompleteGraph,
    PatternGraph,
    balance_alpha,
    derive_seed,
    deviation,
    factor_counts,
    random_balanced_colouring,
)
from balfactor.h_embedder import embed_h_factor, embedding_error_bound, embedding_gap_sq
from balfactor.palette import make_simplex_palette, norm_sq_of_counts

SWEEP_COLUMNS = [
    "n",
    "k",
    "r",
    "seed",
    "alpha",
    "clique_deviation",
    "h_deviation",
    "iterations",
    "wall_time_ms",
]


def worker_count() -> int:
    env = os.environ.get("BF_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def pmap(fn: Callable, items: Sequence, workers: int | None = None) -> list:
    """Ordered map, fanned out over processes when more than one worker is allowed."""
    workers = worker_count() if workers is None else workers
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as ex:
        return list(ex.map(fn, items))


@dataclass(frozen=True)
class _Restart:
    g: ColouredCompleteGraph
    r: int
    init: str
    seed: int
    strategy: str
    max_iters: int | None


def _run_restart(job: _Restart):
    f0 = initial_factor(job.g.n_v, job.r, job.init, job.seed)
    return local_search(job.g, f0, job.strategy, job.seed, job.max_iters)


def _q(x) -> str:
    return str(Fraction(x)) if isinstance(x, (int, Fraction)) else repr(float(x))


def solve_instance(
    g: ColouredCompleteGraph,
    h: PatternGraph,
    strategy: str = "best",
    seed: int = 0,
    restarts: int = 1,
    max_iters: int | None = None,
    init: str = "random",
    workers: int | None = None,
) -> dict:
    """Local search from ``restarts`` seeded starts, keep the smallest final norm,
    embed ``h`` and report. Ties between restarts go to the lower index."""
    r = h.r
    t0 = time.perf_counter()
    if g.n_v % r:
        initial_factor(g.n_v, r)  # raises DivisibilityError
    jobs = [
        _Restart(g, r, init, derive_seed(seed, STREAM_RESTART, i), strategy, max_iters)
        for i in range(max(1, restarts))
    ]
    results = pmap(_run_restart, jobs, workers)
    best_i = min(range(len(results)), key=lambda i: (results[i][1].norm_sq_history[-1], i))
    f, trace = results[best_i]
    emb, hrep = embed_h_factor(g, f, h, seed)

    clique_counts = factor_counts(g, f.edges())
    clique_nsq = norm_sq_of_counts(g.palette, clique_counts)
    alpha = balance_alpha(g)
    gap = math.sqrt(embedding_gap_sq(g, f.edges(), emb.edges(), h))
    table = constants(g.k, r)
    log_cb = log_clique_bound(table, alpha, f.n)
    log_hb = log_h_factor_bound(table, h.n_edges, alpha, f.n)
    clique_ok = clique_nsq == 0 or 0.5 * math.log(clique_nsq) <= log_cb
    h_ok = hrep.norm_sq == 0 or 0.5 * math.log(hrep.norm_sq) <= log_hb
    gap_ok = gap <= embedding_error_bound(g.k, r) + 1e-9
    return {
        "alpha": alpha,
        "clique_counts": list(clique_counts),
        "clique_norm_sq": _q(clique_nsq),
        "clique_deviation": _q(deviation(clique_counts, g.k)),
        "h_edges": hrep.n_edges,
        "h_counts": list(hrep.counts),
        "h_norm_sq": _q(hrep.norm_sq),
        "h_norm": math.sqrt(hrep.norm_sq),
        "h_deviation": _q(hrep.deviation),
        "embedding_gap": gap,
        "embedding_error_bound": embedding_error_bound(g.k, r),
        "iterations": trace.iterations,
        "improving_steps": trace.improving_steps,
        "terminated_reason": trace.terminated_reason,
        "restarts_used": len(results),
        "best_restart": best_i,
        "bound_check": {
            "log_C": log_h_factor_bound(table, h.n_edges, 0.0, f.n),
            "log_C_clique": table.log_C_clique,
            "satisfied": bool(clique_ok and h_ok and gap_ok),
        },
        "wall_time_ms": int(round((time.perf_counter() - t0) * 1000)),
        "_factor": f,
        "_embedding": emb,
    }


@dataclass(frozen=True)
class _Trial:
    n: int
    k: int
    h: PatternGraph
    trial_seed: int
    strategy: str
    restarts: int


def _run_trial(t: _Trial) -> dict:
    t0 = time.perf_counter()
    g = random_balanced_colouring(t.n * t.h.r, make_simplex_palette(t.k), t.trial_seed)
    rep = solve_instance(g, t.h, t.strategy, t.trial_seed, t.restarts, workers=1)
    return {
        "n": t.n,
        "k": t.k,
        "r": t.h.r,
        "seed": t.trial_seed,
        "alpha": repr(rep["alpha"]),
        "clique_deviation": repr(float(Fraction(rep["clique_deviation"]))),
        "h_deviation": repr(float(Fraction(rep["h_deviation"]))),
        "iterations": rep["iterations"],
        "wall_time_ms": int(round((time.perf_counter() - t0) * 1000)),
    }


def sweep_rows(
    n_list: Iterable[int],
    k: int,
    h: PatternGraph,
    trials: int,
    seed: int,
    strategy: str = "best",
    restarts: int = 1,
    workers: int | None = None,
) -> list[dict]:
    """One row per ``(n, trial)``; ``n`` counts parts, so each host graph is K_{n r}.

    Each trial's seed is ``derive_seed(seed, STREAM_SWEEP, n, trial)`` and is
    written to the row, so ``gen --n <n r> --k <k> --seed <row seed>``
    regenerates the instance.
    """
    jobs = [
        _Trial(n, k, h, derive_seed(seed, STREAM_SWEEP, n, t), strategy, restarts)
        for n in n_list
        for t in range(trials)
    ]
    return pmap(_run_trial, jobs, workers)


def public_report(rep: dict) -> dict:
    return {key: val for key, val in rep.items() if not key.startswith("_")}


def report_header(flags: dict) -> dict:
    return {"version": __version__, "flags": flags}
