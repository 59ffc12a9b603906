"""Point sets in the unit cube and the Sobol construction."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .directions import DirectionTable, default_table


class Provenance(str, enum.Enum):
    PSEUDO_RANDOM = "PseudoRandom"
    SOBOL = "Sobol"
    SCRAMBLED_SOBOL = "ScrambledSobol"
    DIGITAL_SHIFTED_SOBOL = "DigitalShiftedSobol"
    ANTITHETIC = "Antithetic"


@dataclass(frozen=True)
class PointMatrix:
    """An ``(n, d)`` array of points in ``[0, 1)`` with its provenance.

    ``values`` is stored read-only.  ``source`` records the provenance of the
    reflected set when ``provenance`` is ``ANTITHETIC``.
    """

    values: np.ndarray
    provenance: Provenance
    seed: Optional[int] = None
    source: Optional[Provenance] = None
    _ints: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.float64, copy=True)
        if vals.ndim == 1:
            vals = vals[:, None]
        if vals.ndim != 2:
            raise ValueError("point values must be a 2-d array")
        if vals.size and (vals.min() < 0.0 or vals.max() >= 1.0):
            raise ValueError("point values must lie in [0, 1)")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "provenance", Provenance(self.provenance))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    @property
    def label(self) -> str:
        if self.provenance is Provenance.ANTITHETIC and self.source is not None:
            return f"Antithetic-of-{self.source.value}"
        return self.provenance.value

    def to_csv(self, path=None, header: bool = False) -> str:
        """Render the points as CSV with 17 significant digits."""
        lines = []
        if header:
            lines.append(",".join(f"u{k + 1}" for k in range(self.d)))
        lines.extend(",".join(f"{x:.17g}" for x in row) for row in self.values)
        text = "\n".join(lines) + "\n"
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text


def sobol_integers(
    n: int, d: int, start_index: int = 0, table: DirectionTable | None = None
) -> np.ndarray:
    """Sobol points of indices ``start_index .. start_index + n - 1`` as K-bit words.

    Uses the plain binary-index form: coordinate ``l`` of point ``i`` is the
    XOR of the direction numbers selected by the set bits of ``i``.
    """
    table = table or default_table()
    if n < 1:
        raise ValueError("n must be >= 1")
    if start_index < 0:
        raise ValueError("start_index must be >= 0")
    if d > table.dims:
        raise ValueError(
            f"d={d} exceeds the {table.dims} dimensions of the direction table"
        )
    V = table.direction_integers(d)  # (d, K)
    idx = np.arange(start_index, start_index + n, dtype=np.uint64)
    out = np.zeros((n, d), dtype=np.uint64)
    nbits = int(start_index + n - 1).bit_length()
    if nbits > table.precision:
        raise ValueError("index range exceeds the table precision")
    for b in range(nbits):
        on = ((idx >> np.uint64(b)) & np.uint64(1)).astype(bool)
        out[on] ^= V[:, b]
    return out


def sobol_points(
    n: int, d: int, start_index: int = 0, table: DirectionTable | None = None
) -> PointMatrix:
    """First ``n`` Sobol points (from ``start_index``) in ``d`` dimensions.

    The first point of the default call is the origin.

    Examples
    --------
    >>> sobol_points(5, 1).values.ravel().tolist()
    [0.0, 0.5, 0.75, 0.25, 0.375]
    """
    table = table or default_table()
    ints = sobol_integers(n, d, start_index, table)
    vals = np.ldexp(ints.astype(np.float64), -table.precision)
    pm = PointMatrix(vals, Provenance.SOBOL)
    object.__setattr__(pm, "_ints", ints)
    return pm
