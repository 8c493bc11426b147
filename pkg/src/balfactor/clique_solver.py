"""Swap descent on clique-factors.

A swap ``u <-> v`` exchanges two vertices lying in different parts. It
removes the ``2(r-1)`` factor edges at ``u`` and ``v`` (call their colour
sum A) and adds ``2(r-1)`` new ones (colour sum B). With ``w`` the colour
sum of the whole factor, the squared norm drops by exactly

    2 <w, A - B> - ||A - B||^2

so whether a swap helps is decided by the current ``w`` alone. All of this
is evaluated through the palette's Gram matrix on colour-count vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from balfactor.errors import DimensionError, DivisibilityError, InvalidSwapError
from balfactor.graph_model import (
    STREAM_FACTOR,
    CliqueFactor,
    ColouredCompleteGraph,
    factor_counts,
    make_rng,
)
from balfactor.palette import Palette, inner, norm_sq_of_counts

EXPLICIT_TOL = 1e-9

SwapVector = tuple[int, ...]


@dataclass
class SearchTrace:
    norm_sq_history: list = field(default_factory=list)
    swaps_applied: list[tuple[int, int]] = field(default_factory=list)
    terminated_reason: str = "local_minimum"
    iterations: int = 0  # neighbourhood scans performed

    @property
    def improving_steps(self) -> int:
        return len(self.swaps_applied)


def initial_factor(n_v: int, r: int, strategy: str = "blocks", seed: int = 0) -> CliqueFactor:
    if r < 1 or n_v % r:
        raise DivisibilityError(f"part size {r} does not divide {n_v} vertices")
    if strategy == "blocks":
        order = list(range(n_v))
    elif strategy == "random":
        order = [int(v) for v in make_rng(seed, STREAM_FACTOR).permutation(n_v)]
    else:
        raise ValueError(f"unknown initial strategy {strategy!r}")
    parts = sorted(tuple(sorted(order[i : i + r])) for i in range(0, n_v, r))
    return CliqueFactor(parts=tuple(parts), r=r)


def is_swap_vector(x: Sequence[int], r: int) -> bool:
    return (
        sum(x) == 0
        and sum(abs(c) for c in x) <= 4 * (r - 1)
        and all(abs(c) <= 2 * (r - 1) for c in x)
    )


def _locate(f: CliqueFactor, u: int, v: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    pu = pv = None
    for p in f.parts:
        if u in p:
            pu = p
        if v in p:
            pv = p
    if pu is None or pv is None:
        raise InvalidSwapError(f"vertex {u if pu is None else v} is not covered by the factor")
    if pu is pv:
        raise InvalidSwapError(f"{u} and {v} lie in the same part")
    return pu, pv


def swap_vector(g: ColouredCompleteGraph, f: CliqueFactor, u: int, v: int) -> SwapVector:
    """Colour counts of the removed edges minus those of the added edges."""
    pu, pv = _locate(f, u, v)
    x = [0] * g.k
    for w in pu:
        if w != u:
            x[g.colour(u, w)] += 1
            x[g.colour(v, w)] -= 1
    for w in pv:
        if w != v:
            x[g.colour(v, w)] += 1
            x[g.colour(u, w)] -= 1
    return tuple(x)


def swap_delta(p: Palette, b: Sequence[int], x: Sequence[int]):
    """Exact decrease of ``||w||^2`` when a swap with vector ``x`` is applied to counts ``b``."""
    if len(b) != p.k or len(x) != p.k:
        raise DimensionError(f"expected vectors of length {p.k}")
    return 2 * inner(p, b, x) - inner(p, x, x)


def apply_swap(f: CliqueFactor, u: int, v: int) -> CliqueFactor:
    pu, pv = _locate(f, u, v)
    parts = []
    for p in f.parts:
        if p is pu:
            p = tuple(sorted(v if w == u else w for w in p))
        elif p is pv:
            p = tuple(sorted(u if w == v else w for w in p))
        parts.append(p)
    return CliqueFactor(parts=tuple(parts), r=f.r)


def find_improving_swap(g: ColouredCompleteGraph, f: CliqueFactor):
    """Exhaustive scan over cross-part pairs; first ``(u, v, delta)`` that helps, else None.

    Slow pure-Python path, independent of the vectorised scan in local_search.
    """
    b = factor_counts(g, f.edges())
    where = f.part_index()
    for u in range(g.n_v):
        for v in range(u + 1, g.n_v):
            if where[u] == where[v]:
                continue
            d = swap_delta(g.palette, b, swap_vector(g, f, u, v))
            if (d > 0) if g.palette.is_exact else (d > EXPLICIT_TOL):
                return u, v, d
    return None


class _State:
    """Mutable search state.

    ``hist[w, P, c]`` counts vertices ``x != w`` of part ``P`` with
    ``colour(w, x) == c``. A swap vector then reads off as
    ``hist[u,Pu] + hist[v,Pv] - hist[u,Pv] - hist[v,Pu] + 2 e_{c(uv)}``.
    """

    def __init__(self, g: ColouredCompleteGraph, f: CliqueFactor):
        self.g = g
        self.k = g.k
        self.C = g.matrix
        self.parts = [list(p) for p in f.parts]
        n_v = g.n_v
        self.part_of = np.empty(n_v, dtype=np.int64)
        for i, p in enumerate(self.parts):
            self.part_of[p] = i
        G, self.scale = g.palette.scaled_gram()
        self.exact = g.palette.is_exact
        self.G = np.array(G, dtype=np.int64 if self.exact else np.float64)
        self.hist = np.zeros((n_v, len(self.parts), self.k), dtype=np.int64)
        for i, p in enumerate(self.parts):
            cols = self.C[:, p]
            for c in range(self.k):
                self.hist[:, i, c] = (cols == c).sum(axis=1)
        self.b = np.array(factor_counts(g, f.edges()), dtype=np.int64)
        # onehot[c] = e_c, with row k for the -1 diagonal sentinel
        self.onehot = np.vstack([np.eye(self.k, dtype=np.int64), np.zeros((1, self.k), dtype=np.int64)])

    def scaled_norm_sq(self):
        bf = self.b if self.exact else self.b.astype(np.float64)
        return bf @ self.G @ bf

    def to_user(self, scaled):
        if self.exact:
            return Fraction(int(scaled), self.scale)
        return float(scaled)

    def x_of(self, u: int, v: int) -> np.ndarray:
        pu, pv = self.part_of[u], self.part_of[v]
        h = self.hist
        return h[u, pu] + h[v, pv] - h[u, pv] - h[v, pu] + 2 * self.onehot[self.C[u, v]]

    def scan(self, strategy: str, threshold):
        """Return ``(u, v, scaled_delta)`` for the chosen improving swap, or None."""
        n_v = self.g.n_v
        h, C, po = self.hist, self.C, self.part_of
        own = h[np.arange(n_v), po]  # (n_v, k)
        Gw = self.G @ (self.b if self.exact else self.b.astype(np.float64))
        allv = np.arange(n_v)
        chunk = max(1, 2_000_000 // max(1, n_v * self.k))
        best = None
        for start in range(0, n_v - 1, chunk):
            U = np.arange(start, min(n_v - 1, start + chunk))
            pu = po[U]
            X = (
                own[U][:, None, :]
                + own[None, :, :]
                - h[U[:, None], po[None, :]]
                - h[allv[None, :], pu[:, None]]
                + 2 * self.onehot[C[U]]
            )
            if not self.exact:
                X = X.astype(np.float64)
            delta = 2 * (X @ Gw) - np.einsum("uvc,cd,uvd->uv", X, self.G, X)
            valid = (allv[None, :] > U[:, None]) & (po[None, :] != pu[:, None]) & (delta > threshold)
            if not valid.any():
                continue
            if strategy == "first":
                i, j = divmod(int(np.flatnonzero(valid)[0]), n_v)
                return int(U[i]), j, delta[i, j]
            masked = np.where(valid, delta, delta.min() - 1)
            i, j = divmod(int(np.argmax(masked)), n_v)
            if best is None or delta[i, j] > best[2]:
                best = (int(U[i]), j, delta[i, j])
        return best

    def apply(self, u: int, v: int, x: np.ndarray) -> None:
        pu, pv = int(self.part_of[u]), int(self.part_of[v])
        C, h = self.C, self.hist
        not_u = np.flatnonzero(np.arange(self.g.n_v) != u)
        not_v = np.flatnonzero(np.arange(self.g.n_v) != v)
        np.subtract.at(h, (not_u, pu, C[not_u, u]), 1)
        np.add.at(h, (not_u, pv, C[not_u, u]), 1)
        np.subtract.at(h, (not_v, pv, C[not_v, v]), 1)
        np.add.at(h, (not_v, pu, C[not_v, v]), 1)
        self.b -= x
        self.parts[pu][self.parts[pu].index(u)] = v
        self.parts[pv][self.parts[pv].index(v)] = u
        self.part_of[u], self.part_of[v] = pv, pu

    def factor(self, r: int) -> CliqueFactor:
        return CliqueFactor(parts=tuple(tuple(sorted(p)) for p in self.parts), r=r)


def local_search(
    g: ColouredCompleteGraph,
    f0: CliqueFactor,
    strategy: str = "best",
    seed: int = 0,
    max_iters: int | None = None,
    check: bool = False,
) -> tuple[CliqueFactor, SearchTrace]:
    """Descend by improving swaps until none is left.

    ``best`` applies the swap of largest decrease (ties to the smallest
    ``(u, v)``), ``first`` the first improving swap in ``(u, v)`` order.
    Both are deterministic; ``seed`` is accepted for interface symmetry with
    the randomised initial factor and does not affect the descent.
    With ``check`` the incremental counts are re-derived from scratch after
    every swap.
    """
    if strategy not in ("best", "first"):
        raise ValueError(f"unknown strategy {strategy!r}")
    f0.validate(g.n_v)
    st = _State(g, f0)
    threshold = 0 if st.exact else EXPLICIT_TOL * st.scale
    nsq = st.scaled_norm_sq()
    if max_iters is None and not st.exact:
        max_iters = 10 * (g.k - 1) * math.ceil(float(nsq))
    trace = SearchTrace(norm_sq_history=[st.to_user(nsq)])
    while True:
        trace.iterations += 1
        found = st.scan(strategy, threshold)
        if found is None:
            trace.terminated_reason = "local_minimum"
            break
        if max_iters is not None and trace.improving_steps >= max_iters:
            trace.terminated_reason = "max_iters"
            break
        u, v, d = found
        st.apply(u, v, st.x_of(u, v))
        prev, nsq = nsq, st.scaled_norm_sq()
        trace.swaps_applied.append((u, v))
        trace.norm_sq_history.append(st.to_user(nsq))
        if check:
            f = st.factor(f0.r)
            f.validate(g.n_v)
            assert tuple(st.b.tolist()) == factor_counts(g, f.edges())
            if st.exact:
                assert prev - d == nsq
                assert trace.norm_sq_history[-1] == norm_sq_of_counts(g.palette, st.b.tolist())
    return st.factor(f0.r), trace
