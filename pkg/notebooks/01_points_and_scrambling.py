"""
Sobol points, nested scrambling and integration error
=====================================================

A walk through the point generators: the raw Sobol sequence, what a nested
scramble does to it, and how the randomised points integrate smooth and
discontinuous functions compared with plain Monte Carlo.
"""

# %%
import numpy as np

from scrambledmm.harness import run_rate_study
from scrambledmm.qmc import (
    PointMatrix,
    Provenance,
    ScrambleKey,
    nested_scramble,
    sobol_points,
    star_discrepancy,
)
from scrambledmm.samplers import DrawSpec, make_uniform

# %% [markdown]
# The first points of the one-dimensional sequence fill [0, 1) by repeated
# halving.  Every block of 2^m points is a net: one point per dyadic interval.

# %%
print(sobol_points(8, 1).values.ravel())

# %% [markdown]
# Forcing the scramble's permutations makes it deterministic.  Flipping the
# first digit swaps the two halves of the interval.

# %%
box = PointMatrix([0.125, 0.375, 0.5, 0.875], Provenance.SOBOL)
flip = ScrambleKey(0, 1, forced={(0, ()): 1}, randomize=False)
print(nested_scramble(box, flip).values.ravel())

# %% [markdown]
# A random key keeps the net structure but moves every point inside its
# interval, so the sample mean becomes an unbiased estimate.

# %%
pts = sobol_points(64, 1)
for seed in range(3):
    u = nested_scramble(pts, ScrambleKey(seed, 1)).values.ravel()
    cells = np.floor(u * 64).astype(int)
    print(seed, np.round(u[:4], 4), "one point per cell:", np.array_equal(np.sort(cells), np.arange(64)))

# %% [markdown]
# Star discrepancy of 256 points: pseudo-random against scrambled Sobol.

# %%
for method in ("PseudoRandom", "ScrambledSobol"):
    u = make_uniform(DrawSpec(method, 256, 1, 1, seed=5)).values
    print(f"{method:15s} D* = {star_discrepancy(PointMatrix(u, Provenance.SOBOL)):.5f}")

# %% [markdown]
# Integration error.  For f(u) = u^2 the Monte Carlo RMSE falls like n^-1/2
# while the scrambled rule is close to n^-3/2.  For the step 1{u < 1/2} every
# net puts exactly half its points below 1/2 and the error is zero.

# %%
ns = [2**m for m in range(4, 13)]
for integrand in ("Linear", "Square", "StepAtHalf"):
    st = run_rate_study(integrand, ["PseudoRandom", "ScrambledSobol"], ns, reps=100)
    print(integrand, {k: round(v, 3) for k, v in st.slopes.items()})
    print("   scrambled RMSE at n=4096:", st.rmse("ScrambledSobol")[-1])
