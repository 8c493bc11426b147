"""Edge-coloured complete graphs, clique-factors, pattern graphs and balance statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, TextIO

import numpy as np

from balfactor.errors import DimensionError, EdgeError, ParseError, PatternError
from balfactor.palette import Palette, make_simplex_palette, norm_sq_of_counts

# Stream tags mixed into the seed; see make_rng.
STREAM_COLOURING = 1
STREAM_FACTOR = 2
STREAM_REMAINDER = 3
STREAM_TRIAL = 4
STREAM_RESTART = 5
STREAM_SWEEP = 6


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """numpy PCG64 seeded by ``SeedSequence([seed, *stream])``.

    Every random choice in the package goes through this function, so a
    (seed, stream) pair pins down the bit stream on any numpy >= 1.17.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *stream])))


def derive_seed(seed: int, *stream: int) -> int:
    """A 63-bit child seed, the first draw of ``make_rng(seed, *stream)``."""
    return int(make_rng(seed, *stream).integers(2**63))


def pair_rank(u: int, v: int, n_v: int) -> int:
    if u > v:
        u, v = v, u
    return u * (2 * n_v - u - 1) // 2 + (v - u - 1)


def iter_pairs(n_v: int):
    for u in range(n_v):
        for v in range(u + 1, n_v):
            yield u, v


@dataclass(frozen=True)
class ColouredCompleteGraph:
    """K_{n_v} with colours stored in a flat array indexed by pair rank."""

    n_v: int
    colours: tuple[int, ...]
    palette: Palette

    def __post_init__(self):
        m = self.n_v * (self.n_v - 1) // 2
        if len(self.colours) != m:
            raise EdgeError(f"expected {m} edge colours, got {len(self.colours)}")
        if any(not 0 <= c < self.palette.k for c in self.colours):
            raise EdgeError(f"colour index out of range for k={self.palette.k}")

    @property
    def k(self) -> int:
        return self.palette.k

    def colour(self, u: int, v: int) -> int:
        if u == v or not (0 <= u < self.n_v and 0 <= v < self.n_v):
            raise EdgeError(f"({u}, {v}) is not an edge of K_{self.n_v}")
        return self.colours[pair_rank(u, v, self.n_v)]

    @cached_property
    def matrix(self) -> np.ndarray:
        """Dense symmetric colour matrix; the diagonal holds -1."""
        m = np.full((self.n_v, self.n_v), -1, dtype=np.int64)
        iu, iv = np.triu_indices(self.n_v, k=1)
        m[iu, iv] = self.colours
        m[iv, iu] = self.colours
        return m

    def total_counts(self) -> list[int]:
        counts = [0] * self.k
        for c in self.colours:
            counts[c] += 1
        return counts


@dataclass(frozen=True)
class CliqueFactor:
    parts: tuple[tuple[int, ...], ...]
    r: int

    @classmethod
    def from_parts(cls, parts: Iterable[Iterable[int]], r: int | None = None) -> "CliqueFactor":
        ps = tuple(tuple(sorted(p)) for p in parts)
        if r is None:
            r = len(ps[0]) if ps else 0
        return cls(parts=ps, r=r)

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def n_v(self) -> int:
        return self.n * self.r

    def part_index(self) -> dict[int, int]:
        return {v: i for i, p in enumerate(self.parts) for v in p}

    def validate(self, n_v: int) -> None:
        if any(len(p) != self.r for p in self.parts):
            raise EdgeError(f"every part must have exactly {self.r} vertices")
        seen = sorted(v for p in self.parts for v in p)
        if seen != list(range(n_v)):
            raise EdgeError(f"parts do not partition the vertex set [0, {n_v})")

    def edges(self) -> list[tuple[int, int]]:
        return [(p[i], p[j]) for p in self.parts for i in range(len(p)) for j in range(i + 1, len(p))]


@dataclass(frozen=True)
class PatternGraph:
    r: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.r < 2:
            raise PatternError(f"pattern graph needs r >= 2, got {self.r}")
        for u, v in self.edges:
            if not (0 <= u < v < self.r):
                raise PatternError(f"bad pattern edge ({u}, {v}) for r={self.r}")

    @classmethod
    def from_edges(cls, r: int, edges: Iterable[tuple[int, int]]) -> "PatternGraph":
        return cls(r=r, edges=frozenset((min(u, v), max(u, v)) for u, v in edges))

    @classmethod
    def complete(cls, r: int) -> "PatternGraph":
        return cls(r=r, edges=frozenset(iter_pairs(r)))

    @classmethod
    def path(cls, r: int) -> "PatternGraph":
        return cls(r=r, edges=frozenset((i, i + 1) for i in range(r - 1)))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def is_complete(self) -> bool:
        return self.n_edges == self.r * (self.r - 1) // 2

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class DeviationReport:
    counts: tuple[int, ...]
    n_edges: int
    deviation: Fraction
    norm_sq: Fraction | float
    alpha: float
    iterations: int = 0
    improving_steps: int = 0

    @property
    def norm(self) -> float:
        return math.sqrt(self.norm_sq)


# ---------------------------------------------------------------- file formats


def _data_lines(stream: TextIO):
    for lineno, raw in enumerate(stream, start=1):
        text = raw.split("#", 1)[0].strip()
        if text:
            yield lineno, text


def _ints(text: str, want: int, lineno: int, what: str) -> list[int]:
    fields = text.split()
    if len(fields) != want:
        raise ParseError(f"expected {want} integers for {what}, got {len(fields)} fields", lineno)
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise ParseError(f"non-integer field in {what}: {text!r}", lineno) from None


def load_colouring(stream: TextIO | str) -> ColouredCompleteGraph:
    """Parse ``<n_v> <k>`` followed by one ``<u> <v> <colour>`` line per pair."""
    if isinstance(stream, str):
        stream = stream.splitlines(keepends=True)
    lines = _data_lines(stream)
    try:
        lineno, text = next(lines)
    except StopIteration:
        raise ParseError("empty input, expected header '<n_v> <k>'", 1) from None
    n_v, k = _ints(text, 2, lineno, "header")
    if n_v < 1:
        raise ParseError(f"n_v must be positive, got {n_v}", lineno)
    if k < 2:
        raise ParseError(f"k must be at least 2, got {k}", lineno)
    m = n_v * (n_v - 1) // 2
    colours = [-1] * m
    last = lineno
    for lineno, text in lines:
        last = lineno
        u, v, c = _ints(text, 3, lineno, "edge")
        if u == v:
            raise ParseError(f"loop at vertex {u}", lineno)
        if not (0 <= u < n_v and 0 <= v < n_v):
            raise ParseError(f"vertex out of range in ({u}, {v}) for n_v={n_v}", lineno)
        if u > v:
            raise ParseError(f"edge ({u}, {v}) must be written with u < v", lineno)
        if not 0 <= c < k:
            raise ParseError(f"colour {c} out of range for k={k}", lineno)
        idx = pair_rank(u, v, n_v)
        if colours[idx] != -1:
            raise ParseError(f"duplicate pair ({u}, {v})", lineno)
        colours[idx] = c
    for (u, v), c in zip(iter_pairs(n_v), colours):
        if c == -1:
            raise ParseError(f"missing pair ({u}, {v})", last + 1)
    return ColouredCompleteGraph(n_v=n_v, colours=tuple(colours), palette=make_simplex_palette(k))


def save_colouring(g: ColouredCompleteGraph) -> str:
    out = [f"{g.n_v} {g.k}"]
    out.extend(f"{u} {v} {c}" for (u, v), c in zip(iter_pairs(g.n_v), g.colours))
    return "\n".join(out) + "\n"


def load_pattern(stream: TextIO | str) -> PatternGraph:
    """Parse ``<r> <m>`` followed by exactly ``m`` lines ``<u> <v>``."""
    if isinstance(stream, str):
        stream = stream.splitlines(keepends=True)
    lines = _data_lines(stream)
    try:
        lineno, text = next(lines)
    except StopIteration:
        raise ParseError("empty input, expected header '<r> <m>'", 1) from None
    r, m = _ints(text, 2, lineno, "header")
    if r < 2:
        raise ParseError(f"r must be at least 2, got {r}", lineno)
    if not 0 <= m <= r * (r - 1) // 2:
        raise ParseError(f"edge count {m} impossible for r={r}", lineno)
    edges = set()
    last = lineno
    for lineno, text in lines:
        last = lineno
        u, v = _ints(text, 2, lineno, "edge")
        if not (0 <= u < v < r):
            raise ParseError(f"bad edge ({u}, {v}); need 0 <= u < v < {r}", lineno)
        if (u, v) in edges:
            raise ParseError(f"duplicate edge ({u}, {v})", lineno)
        edges.add((u, v))
        if len(edges) > m:
            raise ParseError(f"more than the declared {m} edges", lineno)
    if len(edges) != m:
        raise ParseError(f"expected {m} edges, found {len(edges)}", last + 1)
    return PatternGraph(r=r, edges=frozenset(edges))


def save_pattern(h: PatternGraph) -> str:
    return "\n".join([f"{h.r} {h.n_edges}"] + [f"{u} {v}" for u, v in h.sorted_edges()]) + "\n"


# ---------------------------------------------------------------- statistics


def factor_counts(g: ColouredCompleteGraph, edges: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    counts = [0] * g.k
    for u, v in edges:
        counts[g.colour(u, v)] += 1
    return tuple(counts)


def deviation(counts: Sequence[int], k: int) -> Fraction:
    """``sum_i |counts[i] - total/k|`` as an exact rational."""
    if len(counts) != k:
        raise DimensionError(f"expected {k} counts, got {len(counts)}")
    mean = Fraction(sum(counts), k)
    return sum((abs(c - mean) for c in counts), Fraction(0))


def balance_alpha(g: ColouredCompleteGraph) -> float:
    """Norm of the colour sum over every edge of the host graph."""
    return math.sqrt(norm_sq_of_counts(g.palette, g.total_counts()))


def deviation_report(
    g: ColouredCompleteGraph,
    counts: Sequence[int],
    iterations: int = 0,
    improving_steps: int = 0,
) -> DeviationReport:
    return DeviationReport(
        counts=tuple(counts),
        n_edges=sum(counts),
        deviation=deviation(counts, g.k),
        norm_sq=norm_sq_of_counts(g.palette, counts),
        alpha=balance_alpha(g),
        iterations=iterations,
        improving_steps=improving_steps,
    )


def random_balanced_colouring(n_v: int, palette: Palette, seed: int) -> ColouredCompleteGraph:
    """Colour K_{n_v} so per-colour totals differ by at most one.

    The ``m mod k`` surplus colours are drawn uniformly without replacement,
    then the multiset of colours is shuffled over the pairs.
    """
    if n_v < 2:
        raise EdgeError(f"need at least 2 vertices, got {n_v}")
    k = palette.k
    m = n_v * (n_v - 1) // 2
    rng = make_rng(seed, STREAM_COLOURING)
    q, rem = divmod(m, k)
    totals = np.full(k, q, dtype=np.int64)
    if rem:
        totals[rng.choice(k, size=rem, replace=False)] += 1
    pool = np.repeat(np.arange(k), totals)
    rng.shuffle(pool)
    return ColouredCompleteGraph(n_v=n_v, colours=tuple(int(c) for c in pool), palette=palette)
