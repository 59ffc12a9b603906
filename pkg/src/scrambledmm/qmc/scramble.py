"""Randomisation of point sets: nested uniform scramble, shifts, reflection.

The nested scramble follows Owen's original (fully random) description.  The
digit ``j`` of coordinate ``l`` is passed through a random permutation of
``{0, 1}`` that depends on the first ``j - 1`` input digits.  A permutation
tree of depth 52 cannot be stored, so each permutation is materialised on
demand: its "flip" bit is a hash of the key, the coordinate and the digit
path.  The same key therefore always reproduces the same scramble.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .._hashing import GOLDEN, derive_key, mix64
from .directions import PRECISION
from .points import PointMatrix, Provenance

_ONE = np.uint64(1)


@dataclass(frozen=True)
class ScrambleKey:
    """Seed and shape of a nested scramble.

    Parameters
    ----------
    seed : int
        64-bit seed from which every permutation is derived.
    d : int
        Number of coordinates.
    K : int
        Digits scrambled per coordinate.
    forced : mapping, optional
        Explicit permutations, ``{(coordinate, digit_path): image_of_0}``,
        where ``coordinate`` is 0-based and ``digit_path`` is the tuple of
        preceding input digits.  ``{(0, ()): 1}`` forces ``pi(0) = 1`` on the
        first digit of the first coordinate.
    randomize : bool
        With ``False`` every non-forced permutation is the identity.
    """

    seed: int
    d: int
    K: int = PRECISION
    forced: Mapping[tuple[int, tuple[int, ...]], int] = field(default_factory=dict)
    randomize: bool = True

    def coordinate_keys(self) -> np.ndarray:
        return np.array(
            [derive_key(self.seed, "scramble", ell) for ell in range(self.d)],
            dtype=np.uint64,
        )


def scramble_integers(
    ints: np.ndarray,
    coord_keys: np.ndarray,
    K: int = PRECISION,
    forced: Optional[Mapping] = None,
    randomize: bool = True,
) -> np.ndarray:
    """Nested-scramble ``K``-bit words.

    ``coord_keys`` broadcasts against ``ints``; passing one key per row and
    column scrambles many independent replicates in a single call.
    """
    x = np.asarray(ints, dtype=np.uint64)
    keys = np.broadcast_to(np.asarray(coord_keys, dtype=np.uint64), x.shape)
    out = x.copy()
    by_level: dict[int, list] = {}
    for (coord, path), image in (forced or {}).items():
        by_level.setdefault(len(path) + 1, []).append((coord, tuple(path), int(image)))
    with np.errstate(over="ignore"):
        for j in range(1, K + 1):
            prefix = x >> np.uint64(K - j + 1)
            if randomize:
                node = (_ONE << np.uint64(j - 1)) | prefix
                flip = mix64(keys + node * GOLDEN) >> np.uint64(63)
            else:
                flip = np.zeros_like(x)
            for coord, path, image in by_level.get(j, ()):
                value = 0
                for digit in path:
                    value = (value << 1) | int(digit)
                hit = prefix[:, coord] == np.uint64(value)
                flip[hit, coord] = np.uint64(image & 1)
            out ^= flip << np.uint64(K - j)
    return out


def _as_integers(points: PointMatrix, K: int) -> np.ndarray:
    if points._ints is not None and K == PRECISION:
        return points._ints
    scaled = np.ldexp(points.values, K)
    ints = scaled.astype(np.uint64)
    if not np.array_equal(ints.astype(np.float64), scaled):
        raise ValueError(f"points are not representable with {K} binary digits")
    return ints


def nested_scramble(points: PointMatrix, key: ScrambleKey) -> PointMatrix:
    """Apply Owen's nested uniform scramble to a Sobol point set.

    Examples
    --------
    >>> from scrambledmm.qmc import PointMatrix, Provenance
    >>> pts = PointMatrix([0.125, 0.375, 0.5, 0.875], Provenance.SOBOL)
    >>> key = ScrambleKey(0, 1, forced={(0, ()): 1}, randomize=False)
    >>> nested_scramble(pts, key).values.ravel().tolist()
    [0.625, 0.875, 0.0, 0.375]
    """
    if points.provenance is not Provenance.SOBOL:
        raise ValueError(
            f"nested_scramble expects an unrandomised Sobol set, got {points.label}"
        )
    if key.d != points.d:
        raise ValueError(f"key has d={key.d} but the points have d={points.d}")
    ints = _as_integers(points, key.K)
    out = scramble_integers(
        ints, key.coordinate_keys()[None, :], key.K, key.forced, key.randomize
    )
    vals = np.ldexp(out.astype(np.float64), -key.K)
    pm = PointMatrix(vals, Provenance.SCRAMBLED_SOBOL, seed=key.seed)
    if key.K == PRECISION:
        object.__setattr__(pm, "_ints", out)
    return pm


def digital_shift(points: PointMatrix, shift, seed: Optional[int] = None) -> PointMatrix:
    """Shift every point by the same vector, modulo 1 in each coordinate."""
    shift = np.asarray(shift, dtype=np.float64).reshape(-1)
    if shift.shape[0] != points.d:
        raise ValueError(f"shift has length {shift.shape[0]}, points have d={points.d}")
    if np.any((shift < 0.0) | (shift >= 1.0)):
        raise ValueError("shift entries must lie in [0, 1)")
    u = np.broadcast_to(shift[None, :], points.values.shape)
    big, small = np.maximum(points.values, u), np.minimum(points.values, u)
    # big >= 1/2 whenever the sum wraps, so big - 1 is exact and the result
    # is the correctly rounded value of u + shift - 1
    wrapped = (big - 1.0) + small
    vals = np.where(wrapped >= 0.0, wrapped, points.values + u)
    vals[vals >= 1.0] = np.nextafter(1.0, 0.0)
    return PointMatrix(vals, Provenance.DIGITAL_SHIFTED_SOBOL, seed=seed)


def antithetic_extend(points: PointMatrix) -> PointMatrix:
    """Append the reflections ``1 - u``; row ``i`` pairs with row ``n + i``."""
    if np.any(points.values == 0.0):
        raise ValueError("cannot reflect a point with a zero coordinate into [0, 1)")
    vals = np.vstack([points.values, 1.0 - points.values])
    source = points.source if points.provenance is Provenance.ANTITHETIC else points.provenance
    return PointMatrix(vals, Provenance.ANTITHETIC, seed=points.seed, source=source)
