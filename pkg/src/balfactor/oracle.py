"""Exhaustive ground truth for small instances."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterator

from balfactor.errors import DivisibilityError, InputError, TooLargeError
from balfactor.graph_model import (
    STREAM_TRIAL,
    CliqueFactor,
    ColouredCompleteGraph,
    PatternGraph,
    derive_seed,
    deviation,
    random_balanced_colouring,
)
from balfactor.h_embedder import HEmbedding
from balfactor.palette import Palette

GUARD = 10**7


def factor_count(n_v: int, r: int) -> int:
    m = n_v // r
    return math.factorial(n_v) // (math.factorial(r) ** m * math.factorial(m))


def enumerate_clique_factors(n_v: int, r: int, limit: int = GUARD) -> Iterator[CliqueFactor]:
    """Stream every partition of ``range(n_v)`` into r-sets exactly once.

    Each part is built around the smallest vertex not yet used, so the
    parts of every emitted factor appear in increasing order of their
    minimum.
    """
    if r < 1 or n_v % r:
        raise DivisibilityError(f"part size {r} does not divide {n_v} vertices")
    total = factor_count(n_v, r)
    if total > limit:
        raise TooLargeError(f"clique-factors of K_{n_v} into K_{r}", total, limit)
    return _partitions(tuple(range(n_v)), r)


def _partitions(free: tuple[int, ...], r: int) -> Iterator[CliqueFactor]:
    if not free:
        yield CliqueFactor(parts=(), r=r)
        return
    head, rest = free[0], free[1:]
    for mates in combinations(rest, r - 1):
        taken = set(mates)
        remaining = tuple(v for v in rest if v not in taken)
        for tail in _partitions(remaining, r):
            yield CliqueFactor(parts=((head, *mates),) + tail.parts, r=r)


def _distinct_placements(h: PatternGraph) -> list[tuple[int, ...]]:
    """One representative bijection per distinct image edge set of ``h`` in K_r."""
    seen = {}
    for sigma in permutations(range(h.r)):
        image = frozenset(tuple(sorted((sigma[a], sigma[b]))) for a, b in h.edges)
        seen.setdefault(image, sigma)
    return list(seen.values())


def min_deviation_bruteforce(
    g: ColouredCompleteGraph, h: PatternGraph, limit: int = GUARD
) -> tuple[Fraction, HEmbedding]:
    """Minimum deviation over every H-factor of ``g``, with a witness.

    Enumerates all clique-factors and, per part, every placement of ``h``
    that yields a distinct edge set (one for ``h = K_r``). The guard bounds
    the full product; per factor the search folds parts into a set of
    reachable colour-count vectors, which is never larger.
    """
    r = h.r
    if g.n_v % r:
        raise DivisibilityError(f"part size {r} does not divide {g.n_v} vertices")
    placements = _distinct_placements(h)
    n = g.n_v // r
    total = factor_count(g.n_v, r) * len(placements) ** n
    if total > limit:
        raise TooLargeError("H-factor candidates", total, limit)
    k = g.k
    best = None
    for f in enumerate_clique_factors(g.n_v, r, limit):
        # sumset over parts: reachable count vector -> (previous vector, placement)
        layers = [{(0,) * k: None}]
        for part in f.parts:
            opts = {}
            for sigma in placements:
                counts = [0] * k
                for a, b in h.edges:
                    counts[g.colour(part[sigma[a]], part[sigma[b]])] += 1
                opts.setdefault(tuple(counts), sigma)
            nxt = {}
            for vec in layers[-1]:
                for counts, sigma in opts.items():
                    nxt.setdefault(tuple(x + y for x, y in zip(vec, counts)), (vec, sigma))
            layers.append(nxt)
        vec = min(layers[-1], key=lambda v: (deviation(v, k), v))
        dev = deviation(vec, k)
        if best is None or dev < best[0]:
            sigmas = []
            for layer in reversed(layers[1:]):
                vec, sigma = layer[vec]
                sigmas.append(sigma)
            best = (dev, f, sigmas[::-1])
            if dev == 0:
                break
    dev, f, sigmas = best
    assignments = tuple(tuple(part[s[x]] for x in range(r)) for part, s in zip(f.parts, sigmas))
    return dev, HEmbedding(h=h, assignments=assignments, blocks=(), remainder=tuple(range(f.n)))


def witness_factor(emb: HEmbedding) -> CliqueFactor:
    return CliqueFactor.from_parts(emb.assignments, emb.h.r)


def find_unbalanced_colouring(
    n_v: int,
    palette: Palette,
    h: PatternGraph,
    seed: int,
    trials: int,
    limit: int = GUARD,
) -> ColouredCompleteGraph | None:
    """Search random exactly balanced colourings for one with no balanced H-factor."""
    m = n_v * (n_v - 1) // 2
    if m % palette.k:
        raise InputError(f"K_{n_v} has {m} edges, which {palette.k} colours cannot share equally")
    for t in range(trials):
        g = random_balanced_colouring(n_v, palette, derive_seed(seed, STREAM_TRIAL, t))
        dev, _ = min_deviation_bruteforce(g, h, limit)
        if dev > 0:
            return g
    return None
