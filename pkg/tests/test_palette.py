import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from balfactor.errors import DimensionError, InvalidPaletteError
from balfactor.palette import (
    deviation_upper_from_norm,
    inner,
    make_explicit_palette,
    make_simplex_palette,
    norm_sq_of_counts,
)
from conftest import brute_norm_sq


def unit_circle(k):
    return [(math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k)) for i in range(k)]


def test_simplex_k2_is_antipodal():
    p = make_simplex_palette(2)
    assert p.gram == ((1, -1), (-1, 1))
    assert p.dim == 1 and p.mode == "simplex"


@pytest.mark.parametrize("k, off", [(3, Fraction(-1, 2)), (4, Fraction(-1, 3)), (7, Fraction(-1, 6))])
def test_simplex_off_diagonal(k, off):
    p = make_simplex_palette(k)
    for i, j in itertools.product(range(k), repeat=2):
        assert p.gram[i][j] == (1 if i == j else off)
        assert isinstance(p.gram[i][j], Fraction)
    assert p.vectors is None


@pytest.mark.parametrize("k", [1, 0, -3])
def test_simplex_rejects_small_k(k):
    with pytest.raises(InvalidPaletteError):
        make_simplex_palette(k)


def test_explicit_orthonormal_and_antipodal():
    assert make_explicit_palette([(1, 0), (0, 1)]).gram == ((1.0, 0.0), (0.0, 1.0))
    anti = make_explicit_palette([(1, 0), (-1, 0)])
    assert anti.gram == ((1.0, -1.0), (-1.0, 1.0))
    assert anti.gram == tuple(tuple(float(x) for x in row) for row in make_simplex_palette(2).gram)


def test_explicit_120_degrees_matches_simplex():
    p = make_explicit_palette(unit_circle(3))
    assert math.isclose(math.cos(2 * math.pi / 3), -0.5)
    s = make_simplex_palette(3)
    for i, j in itertools.product(range(3), repeat=2):
        assert abs(p.gram[i][j] - float(s.gram[i][j])) <= 1e-9


def test_explicit_rejects_bad_input():
    with pytest.raises(InvalidPaletteError, match="norm"):
        make_explicit_palette([(1, 0), (0, 0.5)])
    with pytest.raises(InvalidPaletteError, match="coincide"):
        make_explicit_palette([(1, 0), (0, 1), (1, 0)])
    with pytest.raises(InvalidPaletteError):
        make_explicit_palette([(1, 0)])
    with pytest.raises(InvalidPaletteError):
        make_explicit_palette([(1, 0), (0, 0, 1)])


def test_norm_sq_examples():
    assert norm_sq_of_counts(make_simplex_palette(2), (1, 1)) == 0
    assert norm_sq_of_counts(make_simplex_palette(3), (2, 0, 0)) == 4
    assert norm_sq_of_counts(make_simplex_palette(3), (3, 1, 1)) == 4


def test_norm_sq_cross_checks_coordinates():
    # (3*11 - 25) / 2 == 4, and the same from explicit 120-degree vectors
    assert Fraction(3 * 11 - 25, 2) == 4
    coords = np.array(unit_circle(3))
    w = 3 * coords[0] + coords[1] + coords[2]
    assert abs(w @ w - 4) < 1e-12
    assert abs(norm_sq_of_counts(make_explicit_palette(unit_circle(3)), (3, 1, 1)) - 4) < 1e-9


def test_norm_sq_dimension_error():
    with pytest.raises(DimensionError):
        norm_sq_of_counts(make_simplex_palette(3), (1, 2))
    with pytest.raises(DimensionError):
        inner(make_simplex_palette(3), (1, 2, 3), (1, 2))


@given(k=st.integers(2, 6), data=st.data())
def test_simplex_closed_form_matches_gram(k, data):
    b = data.draw(st.lists(st.integers(-50, 50), min_size=k, max_size=k))
    p = make_simplex_palette(k)
    got = norm_sq_of_counts(p, b)
    assert got == brute_norm_sq(p.gram, b)
    assert got == Fraction(k * sum(x * x for x in b) - sum(b) ** 2, k - 1)


@given(k=st.integers(2, 6), data=st.data())
def test_norm_sq_is_psd_and_vanishes_only_on_constants(k, data):
    b = data.draw(st.lists(st.integers(-30, 30), min_size=k, max_size=k))
    v = norm_sq_of_counts(make_simplex_palette(k), b)
    assert v >= 0
    assert (v == 0) == (len(set(b)) == 1)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_zero_sum_lattice_minimum(k):
    floor = 2 + Fraction(2, k - 1)
    p = make_simplex_palette(k)
    seen_min = None
    for b in itertools.product(range(-8, 9), repeat=k):
        if sum(b) or not any(b) or sum(map(abs, b)) > 8:
            continue
        v = norm_sq_of_counts(p, b)
        assert v >= floor
        if sorted(b) == [-1] + [0] * (k - 2) + [1]:
            assert v == floor
        seen_min = v if seen_min is None else min(seen_min, v)
    assert seen_min == floor


def test_deviation_upper_examples():
    assert deviation_upper_from_norm(2, 5) == 5
    assert deviation_upper_from_norm(7, 0) == 0
    assert deviation_upper_from_norm(5, 3) == 6


def test_deviation_upper_on_centred_vectors():
    rng = random.Random(11)
    for _ in range(100):
        k = 5
        b = [rng.randint(-20, 20) for _ in range(k - 1)]
        b.append(-sum(b))
        norm = math.sqrt(norm_sq_of_counts(make_simplex_palette(k), b))
        assert sum(map(abs, b)) <= deviation_upper_from_norm(k, norm) + 1e-9


def test_deviation_upper_dominates_true_deviation():
    rng = random.Random(3)
    for _ in range(1000):
        k = rng.randint(2, 6)
        b = [rng.randint(0, 40) for _ in range(k)]
        mean = Fraction(sum(b), k)
        centred = [x - mean for x in b]
        bound = deviation_upper_from_norm(k, math.sqrt(norm_sq_of_counts(make_simplex_palette(k), centred)))
        assert float(sum(abs(c) for c in centred)) <= bound + 1e-9
