"""Sobol direction numbers: parsing, validation and the XOR recursion.

Direction files use the layout popularised by Joe and Kuo::

    d       s       a       m_i
    2       1       0       1
    3       2       1       1 3

one row per dimension ``d >= 2`` with polynomial degree ``s``, the interior
polynomial coefficients packed into the integer ``a`` and the ``s`` initial
odd integers ``m_1 .. m_s``.  Dimension 1 is never listed; it is the van der
Corput sequence and is synthesised.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Sequence

import numpy as np

#: bits of precision carried by every coordinate (fills a double mantissa)
PRECISION = 52


class DirectionFileError(ValueError):
    """Raised for a malformed or invalid direction-number file."""


@dataclass(frozen=True)
class DimensionEntry:
    """Primitive polynomial and initial integers for one Sobol coordinate."""

    dim: int
    degree: int
    coeffs: tuple[int, ...]  # a_1 .. a_{degree-1}
    m: tuple[int, ...]


@dataclass(frozen=True)
class DirectionTable:
    """Per-dimension Sobol generators, dimension 1 first.

    Attributes
    ----------
    entries : tuple of DimensionEntry
        ``entries[k]`` describes coordinate ``k + 1``.
    precision : int
        Number of output bits per coordinate.
    """

    entries: tuple[DimensionEntry, ...]
    precision: int = PRECISION

    def __post_init__(self):
        for e in self.entries:
            _validate_m(e.dim, e.m)

    @property
    def dims(self) -> int:
        return len(self.entries)

    def direction_integers(self, d: int) -> np.ndarray:
        """Direction numbers for coordinates ``1..d`` as ``K``-bit integers.

        Returns a ``(d, K)`` ``uint64`` array whose ``[l, j]`` entry is
        ``v_{j+1} * 2**K`` for coordinate ``l + 1``.
        """
        if d > self.dims:
            raise ValueError(f"requested {d} dimensions but the table has {self.dims}")
        K = self.precision
        out = np.empty((d, K), dtype=np.uint64)
        for k, e in enumerate(self.entries[:d]):
            out[k] = _expand_integers(e.coeffs, e.degree, e.m, K, K)
        return out


def _validate_m(dim: int, m: Sequence[int]) -> None:
    for j, mj in enumerate(m, start=1):
        if mj % 2 == 0 or not 1 <= mj < 2**j:
            raise DirectionFileError(
                f"dimension {dim}: m_{j} = {mj} must be odd and in [1, {2**j - 1}]"
            )


def _expand_integers(coeffs, e, initial_m, count, K):
    # v_j * 2**K held as integers so XOR is exact
    e = int(e)
    if e == 0:
        # van der Corput coordinate: every m_j = 1
        return np.array([1 << (K - j) for j in range(1, count + 1)], dtype=np.uint64)
    v = [int(initial_m[j]) << (K - (j + 1)) for j in range(min(e, count))]
    for j in range(e, count):
        new = v[j - e] ^ (v[j - e] >> e)
        for k, a in enumerate(coeffs, start=1):
            if a:
                new ^= v[j - k]
        v.append(new)
    return np.array(v, dtype=np.uint64)


def expand_direction_numbers(
    poly_coeffs: Sequence[int],
    e: int,
    initial_m: Sequence[int],
    count: int,
    precision: int = PRECISION,
) -> np.ndarray:
    """Expand initial integers into ``count`` direction numbers in (0, 1).

    The first ``e`` values are ``m_j / 2**j``; later ones follow

    ``v_{j+1} = a_1 v_j ^ ... ^ a_{e-1} v_{j+2-e} ^ v_{j+1-e} ^ (v_{j+1-e} / 2**e)``

    evaluated on ``precision``-bit fixed-point words.

    Parameters
    ----------
    poly_coeffs : sequence of {0, 1}
        Interior coefficients ``a_1 .. a_{e-1}`` of the primitive polynomial.
    e : int
        Polynomial degree; ``0`` denotes the van der Corput coordinate whose
        direction numbers simply halve.
    initial_m : sequence of int
        The ``e`` odd initial integers.
    count : int
        Number of direction numbers to return, at least ``e``.

    Examples
    --------
    >>> expand_direction_numbers([1], 2, [1, 3], 4).tolist()
    [0.5, 0.75, 0.375, 0.5625]
    """
    if e < 0:
        raise ValueError("polynomial degree must be >= 0")
    if len(initial_m) != e:
        raise ValueError(f"need exactly {e} initial integers, got {len(initial_m)}")
    if len(poly_coeffs) != max(e - 1, 0):
        raise ValueError(f"need {e - 1} interior coefficients, got {len(poly_coeffs)}")
    if count < e:
        raise ValueError(f"count={count} is smaller than the degree {e}")
    if count > precision:
        raise ValueError(f"count={count} exceeds the {precision}-bit precision")
    _validate_m(0, initial_m)
    ints = _expand_integers(tuple(poly_coeffs), e, initial_m, count, precision)
    return np.ldexp(ints.astype(np.float64), -precision)


def parse_direction_file(text: str) -> DirectionTable:
    """Parse a Joe-Kuo style direction file into a :class:`DirectionTable`.

    The first line is a header and is skipped.  Blank lines are ignored.
    Dimension 1 is synthesised as the degenerate van der Corput entry.

    Raises
    ------
    DirectionFileError
        On a malformed line (with its line number), a non-increasing
        dimension column, or an even / out-of-range ``m`` value.
    """
    entries = [DimensionEntry(1, 0, (), ())]
    lines = text.splitlines()
    expected = 2
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        try:
            fields = [int(tok) for tok in raw.split()]
        except ValueError:
            raise DirectionFileError(f"line {lineno}: non-integer field in {raw!r}") from None
        if len(fields) < 3:
            raise DirectionFileError(f"line {lineno}: expected 'd s a m_1 ... m_s'")
        dim, s, a, *m = fields
        if s < 1 or len(m) != s:
            raise DirectionFileError(
                f"line {lineno}: degree {s} but {len(m)} initial integers given"
            )
        if dim != expected:
            raise DirectionFileError(
                f"line {lineno}: dimension {dim} out of order (expected {expected})"
            )
        if a < 0 or a >= 2 ** (s - 1):
            raise DirectionFileError(f"line {lineno}: coefficient word a={a} too wide")
        coeffs = tuple((a >> (s - 1 - k)) & 1 for k in range(1, s))
        _validate_m(dim, m)
        entries.append(DimensionEntry(dim, s, coeffs, tuple(m)))
        expected += 1
    return DirectionTable(tuple(entries))


_DEFAULT: DirectionTable | None = None


def joe_kuo_table() -> DirectionTable:
    """The first 50 Joe-Kuo dimensions in their published order."""
    text = resources.files(__package__).joinpath("data/new-joe-kuo-50.txt").read_text()
    return parse_direction_file(text)


def default_table() -> DirectionTable:
    """Library default: the 50 Joe-Kuo coordinates, the third moved to the front.

    Coordinate 1 is then generated by ``x**2 + x + 1`` with ``m = (1, 3)``,
    so the one-dimensional sequence starts ``0, 1/2, 3/4, 1/4, 3/8``.  For
    ``d >= 3`` the point set equals the Joe-Kuo set up to a column permutation.
    """
    global _DEFAULT
    if _DEFAULT is None:
        jk = list(joe_kuo_table().entries)
        jk = [jk[2], jk[0], jk[1]] + jk[3:]
        _DEFAULT = DirectionTable(
            tuple(DimensionEntry(k + 1, e.degree, e.coeffs, e.m) for k, e in enumerate(jk))
        )
    return _DEFAULT
