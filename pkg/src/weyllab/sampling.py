"""Counter-based random sampling.

Every randomized experiment draws from Philox streams keyed by the user seed
plus fixed integer indices, so any draw is a pure function of (seed, index)
and results cannot depend on chunk sizes or worker counts.
"""

from __future__ import annotations

import numpy as np


def stream(seed: int, *index: int) -> np.random.Generator:
    """Philox generator keyed by the seed and a fixed index tuple."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(i) for i in index))
    return np.random.Generator(np.random.Philox(ss))


def torus_points(seed: int, count: int, *index: int):
    """`count` uniform points on the torus, deterministic in (seed, index)."""
    g = stream(seed, *index)
    pts = g.random((count, 2))
    return pts[:, 0], pts[:, 1]


def unit_draws(seed: int, count: int, *index: int) -> np.ndarray:
    """`count` uniforms in [0, 1), deterministic in (seed, index)."""
    return stream(seed, *index).random(count)
