"""Explicit constants for the simplex palette, and the two lattice facts they rest on.

Tower-sized constants are kept as natural logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from balfactor.errors import TooLargeError
from balfactor.h_embedder import embedding_error_bound
from balfactor.palette import make_simplex_palette, norm_sq_of_counts

SWAP_GUARD = 10**8


def enumerate_swap_space(k: int, r: int, limit: int = SWAP_GUARD) -> list[tuple[int, ...]]:
    """All integer x with |x_i| <= 2(r-1), sum x_i = 0 and sum |x_i| <= 4(r-1)."""
    if k < 2 or r < 2:
        raise ValueError(f"need k, r >= 2, got k={k}, r={r}")
    span = 4 * r - 3
    if span**k > limit:
        raise TooLargeError(f"swap space box for k={k}, r={r}", span**k, limit)
    lo, hi = 2 - 2 * r, 2 * r - 2
    out = []
    for head in product(range(lo, hi + 1), repeat=k - 1):
        last = -sum(head)
        if lo <= last <= hi and sum(map(abs, head)) + abs(last) <= 4 * (r - 1):
            out.append(head + (last,))
    return out


@dataclass(frozen=True)
class LatticeFacts:
    d: int
    r: int
    min_norm_sq: Fraction
    max_norm: float
    passed: bool


def verify_lattice_facts(d: int, r: int) -> LatticeFacts:
    """Check, over the whole swap space for k = d+1 simplex colours, that
    the shortest nonzero image has squared length 2 + 2/d and the longest
    has length at most 4(r-1)."""
    p = make_simplex_palette(d + 1)
    nonzero = [norm_sq_of_counts(p, x) for x in enumerate_swap_space(d + 1, r) if any(x)]
    lo, hi = min(nonzero), max(nonzero)
    max_norm = math.sqrt(hi)
    ok = lo == 2 + Fraction(2, d) and hi <= (4 * (r - 1)) ** 2 and max_norm <= 4 * r
    return LatticeFacts(d=d, r=r, min_norm_sq=lo, max_norm=max_norm, passed=ok)


@dataclass(frozen=True)
class BoundsTable:
    r: int
    k: int
    d: int
    L: int
    beta0: int
    log_beta1: float
    log_eta: float
    x_count: int
    log_C_clique: float
    log_C_thm_main: float
    log_C_thm_kcolour: float
    h_embed_term: int


def constants(k: int, r: int) -> BoundsTable:
    d = k - 1
    L = 8 * (r - 1) ** 2
    base = math.log(8 * d * r)
    log_beta1 = -d * base
    log_eta = 3 * d * d * base
    x_count = len(enumerate_swap_space(k, r))
    return BoundsTable(
        r=r,
        k=k,
        d=d,
        L=L,
        beta0=L,
        log_beta1=log_beta1,
        log_eta=log_eta,
        x_count=x_count,
        log_C_clique=math.log(L) + (x_count - 1) * log_eta - log_beta1,
        log_C_thm_main=(8 * d * r) ** (d + 1) * base,
        log_C_thm_kcolour=(8 * k * r) ** k * math.log(8 * k * r),
        h_embed_term=embedding_error_bound(k, r),
    )


def log_h_factor_bound(table: BoundsTable, h_edges: int, alpha: float, n: int) -> float:
    """log of ``(e(H)/e(K_r)) (C_clique + 2 alpha / n) + h_embed_term``."""
    ratio = h_edges / (table.r * (table.r - 1) // 2)
    log_clique = table.log_C_clique
    if alpha > 0 and n > 0:
        log_clique = _logaddexp(log_clique, math.log(2 * alpha / n))
    if ratio == 0:
        return math.log(table.h_embed_term)
    return _logaddexp(math.log(ratio) + log_clique, math.log(table.h_embed_term))


def log_clique_bound(table: BoundsTable, alpha: float, n: int) -> float:
    """log of ``C_clique + 2 alpha / n``."""
    if alpha > 0 and n > 0:
        return _logaddexp(table.log_C_clique, math.log(2 * alpha / n))
    return table.log_C_clique


def _logaddexp(a: float, b: float) -> float:
    hi, lo = max(a, b), min(a, b)
    return hi + math.log1p(math.exp(lo - hi))
