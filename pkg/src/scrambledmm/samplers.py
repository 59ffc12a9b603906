"""Simulation shocks: turn a declarative :class:`DrawSpec` into uniform or
Gaussian arrays laid out the way each estimation algorithm expects.

Rows ``s * n .. (s + 1) * n - 1`` always belong to simulated sample ``s``
(0-based).  Two layouts exist for the scrambled methods:

* ``POOLED`` - one scrambled Sobol sequence of length ``n * S``;
* ``PER_SAMPLE`` - ``S`` independent scrambles of the same ``n``-point set.

Uniforms are odd multiples of ``2**-53``: they never hit 0 or 1, and the
reflection ``1 - u`` is exact.  The pseudo-random source is a counter-based
generator, ``word_k = splitmix64(key + k * golden)``, so a spec reproduces
bit for bit on any platform.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from ._hashing import counter_words, derive_key, words_to_open_unit
from .qmc.directions import PRECISION, DirectionTable
from .qmc.normal import inv_normal_cdf
from .qmc.points import sobol_integers
from .qmc.scramble import scramble_integers


class DrawSpecError(ValueError):
    """Invalid or unsupported draw specification."""


class Method(str, enum.Enum):
    PSEUDO_RANDOM = "PseudoRandom"
    ANTITHETIC = "Antithetic"
    SCRAMBLED_SOBOL = "ScrambledSobol"
    DIGITAL_SHIFTED_SOBOL = "DigitalShiftedSobol"


class Layout(str, enum.Enum):
    POOLED = "Pooled"
    PER_SAMPLE = "PerSample"


class Scale(str, enum.Enum):
    UNIFORM = "Uniform01"
    STD_NORMAL = "StdNormal"


RANDOMIZED_QMC = (Method.SCRAMBLED_SOBOL, Method.DIGITAL_SHIFTED_SOBOL)


@dataclass(frozen=True)
class DrawSpec:
    """How simulation shocks are produced.

    Parameters
    ----------
    method : Method
    n : int
        Observations per simulated sample.
    S : int
        Number of simulated samples.
    d : int
        Shock dimension per observation.
    layout : Layout
        Only meaningful for the Sobol methods.
    seed : int
        64-bit seed.
    """

    method: Method
    n: int
    S: int = 1
    d: int = 1
    layout: Layout = Layout.POOLED
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        object.__setattr__(self, "layout", Layout(self.layout))
        if self.n < 1 or self.S < 1 or self.d < 1:
            raise DrawSpecError("n, S and d must all be >= 1")
        if self.method is Method.ANTITHETIC and self.S % 2:
            raise DrawSpecError(f"antithetic draws need an even S, got S={self.S}")

    @property
    def rows(self) -> int:
        return self.n * self.S

    def with_seed(self, seed: int) -> "DrawSpec":
        return replace(self, seed=seed)


@dataclass(frozen=True)
class ShockArray:
    """``(n * S, d)`` simulation shocks produced from ``spec``."""

    values: np.ndarray
    scale: Scale
    spec: DrawSpec

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def sample(self, s: int) -> np.ndarray:
        n = self.spec.n
        return self.values[s * n:(s + 1) * n]

    def to_csv(self, path=None) -> str:
        text = "\n".join(",".join(f"{x:.17g}" for x in row) for row in self.values) + "\n"
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text


def pseudo_uniforms(key: int, rows: int, d: int) -> np.ndarray:
    """``rows x d`` counter-based uniforms in (0, 1) for a 64-bit ``key``."""
    return words_to_open_unit(counter_words(key, rows * d)).reshape(rows, d)


def _centre(ints: np.ndarray) -> np.ndarray:
    # midpoint of the 2**-52 cell: keeps the digital net and avoids u == 0
    return (2.0 * ints.astype(np.float64) + 1.0) * 2.0**-(PRECISION + 1)


def _scrambled(spec: DrawSpec, table, replicate: int | None) -> np.ndarray:
    tag = () if replicate is None else ("replicate", replicate)
    if spec.layout is Layout.POOLED:
        ints = sobol_integers(spec.rows, spec.d, 0, table)
        keys = np.array(
            [derive_key(spec.seed, *tag, "scramble", ell) for ell in range(spec.d)],
            dtype=np.uint64,
        )[None, :]
    else:
        base = sobol_integers(spec.n, spec.d, 0, table)
        ints = np.tile(base, (spec.S, 1))
        keys = np.array(
            [
                [derive_key(spec.seed, *tag, "sample", s, "scramble", ell) for ell in range(spec.d)]
                for s in range(spec.S)
            ],
            dtype=np.uint64,
        )
        keys = np.repeat(keys, spec.n, axis=0)
    return _centre(scramble_integers(ints, keys))


def _shift_words(key: int, d: int) -> np.ndarray:
    return counter_words(key, d) >> np.uint64(64 - PRECISION)


def _shifted(spec: DrawSpec, table, replicate: int | None) -> np.ndarray:
    # (u + shift) mod 1 carried out on the 52-bit grid, then centred
    tag = () if replicate is None else ("replicate", replicate)
    mask = np.uint64((1 << PRECISION) - 1)
    if spec.layout is Layout.POOLED:
        base = sobol_integers(spec.rows, spec.d, 0, table)
        shift = _shift_words(derive_key(spec.seed, *tag, "shift"), spec.d)
        return _centre((base + shift[None, :]) & mask)
    base = sobol_integers(spec.n, spec.d, 0, table)
    blocks = []
    for s in range(spec.S):
        shift = _shift_words(derive_key(spec.seed, *tag, "sample", s, "shift"), spec.d)
        blocks.append(_centre((base + shift[None, :]) & mask))
    return np.vstack(blocks)


def _uniform_values(spec: DrawSpec, table=None, replicate: int | None = None) -> np.ndarray:
    if replicate is not None and spec.method not in RANDOMIZED_QMC:
        raise DrawSpecError(f"{spec.method.value} draws cannot be re-randomised")
    if spec.method is Method.PSEUDO_RANDOM:
        return pseudo_uniforms(derive_key(spec.seed, "prng"), spec.rows, spec.d)
    if spec.method is Method.ANTITHETIC:
        half = pseudo_uniforms(derive_key(spec.seed, "prng"), spec.rows // 2, spec.d)
        return np.vstack([half, 1.0 - half])
    if spec.method is Method.SCRAMBLED_SOBOL:
        return _scrambled(spec, table, replicate)
    return _shifted(spec, table, replicate)


def make_uniform(
    spec: DrawSpec, table: DirectionTable | None = None, replicate: int | None = None
) -> ShockArray:
    """Uniform shocks on (0, 1) for ``spec``.

    ``ANTITHETIC`` draws samples ``0 .. S/2 - 1`` iid and sets sample
    ``s + S/2`` to the reflection of sample ``s``.  ``replicate`` selects an
    independent re-randomisation of a Sobol method (see
    :func:`replicate_scrambles`).
    """
    return ShockArray(_uniform_values(spec, table, replicate), Scale.UNIFORM, spec)


def make_gaussian(
    spec: DrawSpec, table: DirectionTable | None = None, replicate: int | None = None
) -> ShockArray:
    """Standard normal shocks: :func:`make_uniform` mapped through the inverse CDF."""
    u = _uniform_values(spec, table, replicate)
    return ShockArray(inv_normal_cdf(u), Scale.STD_NORMAL, spec)


def replicate_scrambles(
    spec: DrawSpec,
    R: int,
    scale: Scale = Scale.UNIFORM,
    table: DirectionTable | None = None,
    replicate_ids=None,
) -> list[ShockArray]:
    """``R`` re-randomisations of the same Sobol set under independent keys.

    Keys are derived from ``(spec.seed, replicate index)``.  ``replicate_ids``
    overrides the indices (equal ids give equal arrays).
    """
    if spec.method not in RANDOMIZED_QMC:
        raise DrawSpecError(
            f"replication needs a randomised QMC method, got {spec.method.value}"
        )
    if R < 2:
        raise DrawSpecError("need R >= 2 replicates")
    ids = list(range(R)) if replicate_ids is None else list(replicate_ids)
    if len(ids) != R:
        raise DrawSpecError("replicate_ids must have length R")
    scale = Scale(scale)
    out = []
    for r in ids:
        u = _uniform_values(spec, table, replicate=r)
        vals = inv_normal_cdf(u) if scale is Scale.STD_NORMAL else u
        out.append(ShockArray(vals, scale, spec))
    return out
