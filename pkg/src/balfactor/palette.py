"""Colour palettes: k unit vectors known only through their Gram matrix.

A simplex palette is the vertex set of a regular simplex inscribed in the
unit sphere of R^(k-1). Its Gram matrix has 1 on the diagonal and -1/(k-1)
elsewhere and is kept as exact fractions, so every norm the solver sees is
an integer divided by k-1. Explicit palettes carry user-supplied vectors
and work in double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from balfactor.errors import DimensionError, InvalidPaletteError

UNIT_TOL = 1e-9

Scalar = Union[int, Fraction, float]


@dataclass(frozen=True)
class Palette:
    k: int
    dim: int
    gram: tuple[tuple[Scalar, ...], ...]
    mode: str  # "simplex" or "explicit"
    vectors: tuple[tuple[float, ...], ...] | None = None

    @property
    def is_exact(self) -> bool:
        return self.mode == "simplex"

    def scaled_gram(self) -> tuple[list[list], int]:
        """Return ``(G, s)`` with ``gram == G / s``.

        For simplex palettes ``G`` is integral (``k-1`` on the diagonal,
        ``-1`` off it) and ``s = k-1``; explicit palettes return floats and
        ``s = 1``.
        """
        if self.is_exact:
            k = self.k
            return [[k - 1 if i == j else -1 for j in range(k)] for i in range(k)], k - 1
        return [list(row) for row in self.gram], 1


def make_simplex_palette(k: int) -> Palette:
    if not isinstance(k, int) or k < 2:
        raise InvalidPaletteError(f"simplex palette needs k >= 2, got {k!r}")
    off = Fraction(-1, k - 1)
    gram = tuple(tuple(Fraction(1) if i == j else off for j in range(k)) for i in range(k))
    return Palette(k=k, dim=k - 1, gram=gram, mode="simplex")


def make_explicit_palette(vectors: Sequence[Sequence[float]]) -> Palette:
    vecs = [tuple(float(c) for c in v) for v in vectors]
    k = len(vecs)
    if k < 2:
        raise InvalidPaletteError(f"palette needs at least 2 colours, got {k}")
    d = len(vecs[0])
    if d < 1 or any(len(v) != d for v in vecs):
        raise InvalidPaletteError("colour vectors must share a positive dimension")
    arr = np.array(vecs, dtype=float)
    norms = np.linalg.norm(arr, axis=1)
    for i, nrm in enumerate(norms):
        if abs(nrm - 1.0) > UNIT_TOL:
            raise InvalidPaletteError(f"colour {i} has norm {nrm!r}, expected 1")
    for i in range(k):
        for j in range(i + 1, k):
            if np.linalg.norm(arr[i] - arr[j]) <= UNIT_TOL:
                raise InvalidPaletteError(f"colours {i} and {j} coincide")
    g = arr @ arr.T
    gram = tuple(tuple(float(x) for x in row) for row in g)
    return Palette(k=k, dim=d, gram=gram, mode="explicit", vectors=tuple(vecs))


def _check_len(p: Palette, v: Sequence) -> None:
    if len(v) != p.k:
        raise DimensionError(f"expected a vector of length {p.k}, got {len(v)}")


def inner(p: Palette, a: Sequence[Scalar], b: Sequence[Scalar]) -> Scalar:
    """``a^T gram b``: the inner product of ``sum a_i q_i`` and ``sum b_i q_i``."""
    _check_len(p, a)
    _check_len(p, b)
    if p.is_exact:
        k = p.k
        # gram = (k I - J) / (k-1)
        dot = sum(Fraction(x) * y for x, y in zip(a, b))
        return (k * dot - Fraction(sum(a)) * sum(b)) / (k - 1)
    return float(sum(a[i] * p.gram[i][j] * b[j] for i in range(p.k) for j in range(p.k)))


def norm_sq_of_counts(p: Palette, b: Sequence[Scalar]) -> Scalar:
    """Squared norm of ``w = sum b_i q_i``; exact for simplex palettes."""
    return inner(p, b, b)


def deviation_upper_from_norm(k: int, norm: float) -> float:
    """Bound on ``sum_i |b_i - mean(b)|`` given ``||sum b_i q_i|| <= norm`` (simplex)."""
    return math.sqrt(k - 1) * norm
