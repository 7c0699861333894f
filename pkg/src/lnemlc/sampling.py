"""O(1) discrete sampling via Vose's alias method."""

from __future__ import annotations

import numpy as np


class AliasTable:
    """Samples outcome i with probability weights[i] / sum(weights)."""

    def __init__(self, weights):
        w = np.asarray(weights, dtype=np.float64)
        if w.ndim != 1 or len(w) == 0:
            raise ValueError("weights must be a non-empty 1-d array")
        if (w < 0).any():
            raise ValueError("weights must be non-negative")
        total = w.sum()
        if total <= 0:
            raise ValueError("at least one weight must be positive")

        n = len(w)
        scaled = w * (n / total)
        self.prob = np.ones(n)
        self.alias = np.arange(n)

        small = [i for i, v in enumerate(scaled) if v < 1.0]
        large = [i for i, v in enumerate(scaled) if v >= 1.0]
        scaled = scaled.copy()
        while small and large:
            s = small.pop()
            g = large.pop()
            self.prob[s] = scaled[s]
            self.alias[s] = g
            scaled[g] = scaled[g] - (1.0 - scaled[s])
            (small if scaled[g] < 1.0 else large).append(g)
        for i in large + small:
            self.prob[i] = 1.0  # numerical leftovers

    def __len__(self) -> int:
        return len(self.prob)

    def draw(self, u1: float, u2: float) -> int:
        """Map two uniforms in [0, 1) to an outcome."""
        i = min(int(u1 * len(self.prob)), len(self.prob) - 1)
        return int(i if u2 < self.prob[i] else self.alias[i])

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        """Vectorized draws using the given generator."""
        n = len(self.prob)
        i = rng.integers(0, n, size=size)
        take_alias = rng.random(size=size) >= self.prob[i]
        return np.where(take_alias, self.alias[i], i)


def build_alias(weights) -> AliasTable:
    return AliasTable(weights)
