"""Lift a clique-factor to an H-factor.

Parts are grouped by the colour pattern they carry. Within a group, every
run of r! parts receives all r! vertex bijections once each, so every
clique edge position is covered by H-edges equally often and the block's
H colour sum is exactly ``e(H)/e(K_r)`` times its clique colour sum. The
fewer than r! leftover parts per group get the identity bijection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from balfactor.errors import PatternError
from balfactor.graph_model import (
    STREAM_REMAINDER,
    CliqueFactor,
    ColouredCompleteGraph,
    DeviationReport,
    PatternGraph,
    deviation_report,
    factor_counts,
    make_rng,
)
from balfactor.palette import norm_sq_of_counts


@dataclass(frozen=True)
class CliqueClassification:
    classes: dict[tuple[int, ...], list[int]]

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class HEmbedding:
    """``assignments[t][h]`` is the host vertex carrying H-vertex ``h`` in part ``t``."""

    h: PatternGraph
    assignments: tuple[tuple[int, ...], ...]
    blocks: tuple[tuple[int, ...], ...]  # full r!-blocks, as part indices
    remainder: tuple[int, ...]  # part indices outside any full block

    def part_edges(self, t: int) -> list[tuple[int, int]]:
        a = self.assignments[t]
        return [tuple(sorted((a[x], a[y]))) for x, y in self.h.sorted_edges()]

    def edges(self) -> list[tuple[int, int]]:
        return [e for t in range(len(self.assignments)) for e in self.part_edges(t)]


def colour_pattern(g: ColouredCompleteGraph, part: Sequence[int]) -> tuple[int, ...]:
    p = sorted(part)
    return tuple(g.colour(p[i], p[j]) for i in range(len(p)) for j in range(i + 1, len(p)))


def classify_cliques(g: ColouredCompleteGraph, f: CliqueFactor) -> CliqueClassification:
    classes: dict[tuple[int, ...], list[int]] = {}
    for t, part in enumerate(f.parts):
        classes.setdefault(colour_pattern(g, part), []).append(t)
    return CliqueClassification(classes=dict(sorted(classes.items())))


def embed_h_factor(
    g: ColouredCompleteGraph,
    f: CliqueFactor,
    h: PatternGraph,
    seed: int = 0,
    remainder: str = "identity",
) -> tuple[HEmbedding, DeviationReport]:
    """Place one copy of ``h`` in every part of ``f``.

    ``remainder="random"`` draws the leftover bijections from ``seed``;
    the default keeps them at the identity.
    """
    if h.r != f.r:
        raise PatternError(f"pattern has {h.r} vertices but the factor has parts of size {f.r}")
    if remainder not in ("identity", "random"):
        raise ValueError(f"unknown remainder mode {remainder!r}")
    r = f.r
    perms = list(permutations(range(r)))
    rng = make_rng(seed, STREAM_REMAINDER)
    chosen: list[tuple[int, ...]] = [tuple(range(r))] * f.n
    blocks, rest = [], []
    for members in classify_cliques(g, f).classes.values():
        full = len(members) - len(members) % len(perms)
        for s in range(0, full, len(perms)):
            block = members[s : s + len(perms)]
            for t, sigma in zip(block, perms):
                chosen[t] = sigma
            blocks.append(tuple(block))
        rest.extend(members[full:])
    rest.sort()
    if remainder == "random":
        for t in rest:
            chosen[t] = perms[int(rng.integers(len(perms)))]
    assignments = tuple(tuple(part[sigma[x]] for x in range(r)) for part, sigma in zip(f.parts, chosen))
    emb = HEmbedding(h=h, assignments=assignments, blocks=tuple(blocks), remainder=tuple(rest))
    return emb, deviation_report(g, factor_counts(g, emb.edges()))


def embedding_error_bound(k: int, r: int) -> int:
    """Worst-case ``||H colour sum - (e(H)/e(K_r)) clique colour sum||``."""
    pairs = r * (r - 1) // 2
    return 2 * k**pairs * math.factorial(r) * pairs


def embedding_gap_sq(
    g: ColouredCompleteGraph, clique_edges, h_edges, h: PatternGraph
):
    """Squared norm of ``sum_H c(e) - (e(H)/e(K_r)) sum_clique c(e)`` over the given edge sets."""
    ratio = Fraction(h.n_edges, h.r * (h.r - 1) // 2)
    ch = factor_counts(g, h_edges)
    ck = factor_counts(g, clique_edges)
    return norm_sq_of_counts(g.palette, [a - ratio * b for a, b in zip(ch, ck)])
