"""Uniformity diagnostics: star discrepancy and per-coordinate chi-square."""

from __future__ import annotations

import itertools

import numpy as np

from .points import PointMatrix


def _values(points) -> np.ndarray:
    if isinstance(points, PointMatrix):
        return points.values
    vals = np.asarray(points, dtype=np.float64)
    return vals[:, None] if vals.ndim == 1 else vals


def star_discrepancy(points, mode: str = "exact1d", resolution: int = 64) -> float:
    """Star discrepancy of a point set.

    Parameters
    ----------
    points : PointMatrix or array_like
    mode : {"exact1d", "grid"}
        ``"exact1d"`` uses the sorted-points formula and needs ``d == 1``.
        ``"grid"`` evaluates every anchored box whose corner lies on the
        regular grid ``k / resolution`` augmented by the data coordinates,
        taking both open and closed boxes.  Every evaluated gap is attained
        as a limit of the supremum, so the result is a lower bound on the
        true discrepancy (and exact in one dimension).
    resolution : int
        Grid resolution for ``"grid"``; at least 2.

    Notes
    -----
    The grid mode costs ``O(n * prod_l (resolution + n_l))`` operations; it
    is meant for ``d <= 3``.
    """
    x = _values(points)
    n, d = x.shape
    if mode == "exact1d":
        if d != 1:
            raise ValueError(f"exact1d mode needs d == 1, got d={d}")
        xs = np.sort(x[:, 0])
        i = np.arange(1, n + 1)
        return float(np.max(np.maximum(i / n - xs, xs - (i - 1) / n)))
    if mode != "grid":
        raise ValueError(f"unknown discrepancy mode {mode!r}")
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    grid = np.arange(1, resolution + 1) / resolution
    axes = [np.unique(np.concatenate([grid, x[:, ell]])) for ell in range(d)]
    best = 0.0
    # sweep the first axis vectorised, loop over the remaining corner coordinates
    first = axes[0]
    below_open = x[:, 0][None, :] < first[:, None]  # (m0, n)
    below_closed = x[:, 0][None, :] <= first[:, None]
    for rest in itertools.product(*axes[1:]):
        rest = np.asarray(rest, dtype=np.float64)
        vol = first * (np.prod(rest) if rest.size else 1.0)
        if rest.size:
            in_open = np.all(x[:, 1:] < rest[None, :], axis=1)
            in_closed = np.all(x[:, 1:] <= rest[None, :], axis=1)
        else:
            in_open = in_closed = np.ones(n, dtype=bool)
        c_open = (below_open & in_open[None, :]).sum(axis=1) / n
        c_closed = (below_closed & in_closed[None, :]).sum(axis=1) / n
        gap = max(np.max(np.abs(c_open - vol)), np.max(c_closed - vol))
        best = max(best, float(gap))
    return best


def uniformity_chi_square(points, bins_per_dim: int) -> np.ndarray:
    """Per-coordinate chi-square statistic of bin counts against ``n / bins``.

    Raises
    ------
    ValueError
        If ``bins_per_dim < 2`` or ``n < 5 * bins_per_dim``.
    """
    x = _values(points)
    n, d = x.shape
    if bins_per_dim < 2:
        raise ValueError("bins_per_dim must be >= 2")
    if n < 5 * bins_per_dim:
        raise ValueError(
            f"need at least {5 * bins_per_dim} points for {bins_per_dim} bins, got {n}"
        )
    idx = np.minimum((x * bins_per_dim).astype(np.int64), bins_per_dim - 1)
    expected = n / bins_per_dim
    stats = np.empty(d)
    for ell in range(d):
        counts = np.bincount(idx[:, ell], minlength=bins_per_dim)
        stats[ell] = np.sum((counts - expected) ** 2) / expected
    return stats
