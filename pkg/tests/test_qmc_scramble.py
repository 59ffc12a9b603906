"""Nested scramble, digital shift and antithetic reflection."""

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import chi2

from scrambledmm._hashing import derive_key
from scrambledmm.qmc import (
    PointMatrix,
    Provenance,
    ScrambleKey,
    antithetic_extend,
    digital_shift,
    nested_scramble,
    scramble_integers,
    sobol_points,
    uniformity_chi_square,
)

BOX = [0.125, 0.375, 0.5, 0.875]


def box_points():
    return PointMatrix(BOX, Provenance.SOBOL)


# -- forced permutations -------------------------------------------------------------


def test_first_digit_flip():
    key = ScrambleKey(0, 1, forced={(0, ()): 1}, randomize=False)
    assert nested_scramble(box_points(), key).values.ravel().tolist() == [0.625, 0.875, 0.0, 0.375]


def test_identity_permutations_leave_points_unchanged():
    pts = sobol_points(64, 3)
    out = nested_scramble(pts, ScrambleKey(9, 3, randomize=False))
    np.testing.assert_array_equal(out.values, pts.values)


def test_second_level_acts_on_original_prefix():
    # pi_1 is selected by the input's first digit, so 0.875 (first digit 1) flips
    key = ScrambleKey(0, 1, forced={(0, ()): 1, (0, (0,)): 0, (0, (1,)): 1}, randomize=False)
    out = nested_scramble(box_points(), key).values.ravel().tolist()
    assert out == [0.625, 0.875, 0.25, 0.125]


def _all_depth3_trees():
    # every assignment of a bit flip to the 7 nodes of a depth-3 binary tree
    nodes = [()] + [(a,) for a in (0, 1)] + [(a, b) for a in (0, 1) for b in (0, 1)]
    for bits in itertools.product((0, 1), repeat=len(nodes)):
        yield {(0, p): b for p, b in zip(nodes, bits)}


def test_bruteforce_reachable_set_excludes_box_typo():
    """No nested scramble maps the box input to (0.625, 0.875, 0.5, 0.125).

    Output digit 1 of a nested scramble depends only on input digit 1, and
    the inputs 0.5 and 0.875 share digit 1 while the target images 0.5 and
    0.125 do not.
    """
    reachable = set()
    for forced in _all_depth3_trees():
        key = ScrambleKey(0, 1, K=3, forced=forced, randomize=False)
        pm = PointMatrix(BOX, Provenance.SOBOL)
        reachable.add(tuple(nested_scramble(pm, key).values.ravel()))
    assert (0.625, 0.875, 0.25, 0.125) in reachable
    assert (0.625, 0.875, 0.5, 0.125) not in reachable
    assert len(reachable) == 2**7  # the four inputs visit all seven tree nodes


# -- net preservation and uniformity -----------------------------------------------------


@pytest.mark.parametrize("m", [4, 7, 10])
def test_net_preserved_for_many_seeds(m):
    pts = sobol_points(2**m, 1)
    for seed in range(100):
        out = nested_scramble(pts, ScrambleKey(seed, 1)).values.ravel()
        counts = np.bincount(np.floor(out * 2**m).astype(int), minlength=2**m)
        assert counts.max() == 1 and counts.min() == 1


def _box_counts(x, a, b):
    i = np.floor(x[:, 0] * 2**a).astype(int)
    j = np.floor(x[:, 1] * 2**b).astype(int)
    return np.sort(np.bincount(i * 2**b + j, minlength=2 ** (a + b)))


def test_two_dimensional_interval_counts_preserved():
    # the scramble permutes elementary intervals, so count profiles survive
    m = 8
    raw = sobol_points(2**m, 2)
    out = nested_scramble(raw, ScrambleKey(5, 2)).values
    for a in range(m + 1):
        np.testing.assert_array_equal(_box_counts(out, a, m - a), _box_counts(raw.values, a, m - a))


def test_single_point_is_uniform_across_keys():
    R = 10_000
    ints = np.full((R, 1), np.uint64(3) << np.uint64(49))  # the point 0.375
    keys = np.array([[derive_key(r, "scramble", 0)] for r in range(R)], dtype=np.uint64)
    u = np.ldexp(scramble_integers(ints, keys).astype(np.float64), -52)
    stat = uniformity_chi_square(u, 16)[0]
    assert chi2.sf(stat, 15) > 1e-3


def test_scramble_is_deterministic_and_key_sensitive():
    pts = sobol_points(32, 4)
    a = nested_scramble(pts, ScrambleKey(11, 4)).values
    b = nested_scramble(pts, ScrambleKey(11, 4)).values
    c = nested_scramble(pts, ScrambleKey(12, 4)).values
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_coordinates_use_independent_permutations():
    pts = PointMatrix(np.column_stack([sobol_points(64, 1).values[:, 0]] * 2), Provenance.SOBOL)
    out = nested_scramble(pts, ScrambleKey(2, 2)).values
    assert not np.array_equal(out[:, 0], out[:, 1])


def test_scramble_requires_sobol_input():
    pm = PointMatrix([0.1, 0.2], Provenance.PSEUDO_RANDOM)
    with pytest.raises(ValueError, match="Sobol"):
        nested_scramble(pm, ScrambleKey(0, 1))
    with pytest.raises(ValueError, match="d="):
        nested_scramble(sobol_points(4, 2), ScrambleKey(0, 1))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 255), min_size=1, max_size=40, unique=True), st.integers(0, 2**63))
def test_scramble_is_prefix_preserving_bijection(values, seed):
    K = 8
    x = np.array(values, dtype=np.uint64)[:, None]
    keys = np.array([[derive_key(seed, "scramble", 0)]], dtype=np.uint64)
    y = scramble_integers(x, keys, K)
    assert len(set(y.ravel().tolist())) == len(values)
    for j in range(1, K + 1):
        shift = np.uint64(K - j)
        px, py = (x >> shift).ravel(), (y >> shift).ravel()
        # equal j-digit prefixes in, equal prefixes out, and conversely
        same_in = px[:, None] == px[None, :]
        same_out = py[:, None] == py[None, :]
        assert np.array_equal(same_in, same_out)


# -- digital shift -------------------------------------------------------------------------


def test_shift_wraps():
    pm = PointMatrix([[0.25, 0.75]], Provenance.SOBOL)
    assert digital_shift(pm, [0.5, 0.5]).values.tolist() == [[0.75, 0.25]]


def test_zero_shift_is_identity():
    pts = sobol_points(16, 2)
    np.testing.assert_array_equal(digital_shift(pts, [0.0, 0.0]).values, pts.values)


def test_shift_modulo_one():
    out = digital_shift(PointMatrix([0.9], Provenance.SOBOL), [0.3]).values[0, 0]
    assert abs(out - 0.2) <= np.spacing(0.2)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 1.0, exclude_max=True), st.floats(0.0, 1.0, exclude_max=True))
def test_shift_matches_exact_rational(u, s):
    exact = (Fraction(u) + Fraction(s)) % 1
    out = digital_shift(PointMatrix([u], Provenance.SOBOL), [s]).values[0, 0]
    assert 0.0 <= out < 1.0
    if exact < Fraction(1) - Fraction(2) ** -53:
        assert abs(Fraction(out) - exact) <= Fraction(np.spacing(float(exact)))


def test_shift_length_checked():
    with pytest.raises(ValueError):
        digital_shift(sobol_points(4, 2), [0.1])


# -- antithetic reflection ----------------------------------------------------------------


def test_antithetic_single_row():
    out = antithetic_extend(PointMatrix([[0.3, 0.8]], Provenance.PSEUDO_RANDOM)).values
    np.testing.assert_allclose(out, [[0.3, 0.8], [0.7, 0.2]], rtol=0, atol=1e-16)


def test_antithetic_fixed_point():
    out = antithetic_extend(PointMatrix([0.5], Provenance.PSEUDO_RANDOM))
    assert out.values.ravel().tolist() == [0.5, 0.5]
    assert out.provenance is Provenance.ANTITHETIC
    assert out.source is Provenance.PSEUDO_RANDOM


def test_antithetic_twice_doubles_multiset():
    u = np.random.default_rng(0).integers(1, 64, size=(5, 2)) / 64.0
    once = antithetic_extend(PointMatrix(u, Provenance.PSEUDO_RANDOM))
    twice = antithetic_extend(once).values
    a = np.sort(np.vstack([once.values, once.values]), axis=0)
    np.testing.assert_array_equal(np.sort(twice, axis=0), a)


def test_antithetic_reflection_is_involution():
    u = np.random.default_rng(1).uniform(size=(7, 3))
    out = antithetic_extend(PointMatrix(u, Provenance.PSEUDO_RANDOM)).values
    np.testing.assert_array_equal(1.0 - out[7:], 1.0 - (1.0 - u))


def test_antithetic_rejects_zero():
    with pytest.raises(ValueError, match="zero"):
        antithetic_extend(sobol_points(4, 1))
