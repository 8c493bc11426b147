import random
from fractions import Fraction

import pytest

from balfactor.graph_model import ColouredCompleteGraph, CliqueFactor, pair_rank
from balfactor.palette import make_simplex_palette

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def brute_norm_sq(gram, b):
    """sum_ij b_i b_j gram_ij, straight from the matrix."""
    k = len(b)
    return sum(Fraction(b[i]) * b[j] * gram[i][j] for i in range(k) for j in range(k))


def brute_counts(g, edges):
    counts = [0] * g.k
    for u, v in edges:
        counts[g.colours[pair_rank(u, v, g.n_v)]] += 1
    return counts


def graph_from_dict(n_v, k, colour_of, default=0):
    """Build a graph from ``{(u, v): colour}``; unspecified pairs get ``default``."""
    colours = []
    for u in range(n_v):
        for v in range(u + 1, n_v):
            colours.append(colour_of.get((u, v), default))
    return ColouredCompleteGraph(n_v=n_v, colours=tuple(colours), palette=make_simplex_palette(k))


def random_graph(rng: random.Random, n_v, k, palette=None):
    palette = palette or make_simplex_palette(k)
    m = n_v * (n_v - 1) // 2
    return ColouredCompleteGraph(n_v=n_v, colours=tuple(rng.randrange(k) for _ in range(m)), palette=palette)


def random_factor(rng: random.Random, n_v, r):
    order = list(range(n_v))
    rng.shuffle(order)
    return CliqueFactor.from_parts([order[i : i + r] for i in range(0, n_v, r)], r)


@pytest.fixture
def k4_two_colour():
    """K_4, two colours: 01, 23, 02 colour 0; 13, 03, 12 colour 1."""
    return graph_from_dict(4, 2, {(0, 1): 0, (2, 3): 0, (0, 2): 0, (1, 3): 1, (0, 3): 1, (1, 2): 1})
