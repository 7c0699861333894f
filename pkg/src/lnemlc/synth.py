"""Synthetic multi-label generators for smoke runs and surrogate benchmarks."""

from __future__ import annotations

import numpy as np

from .dataset import MultiLabelDataset


def clustered_dataset(
    n: int,
    m: int,
    l: int,
    clusters: int = 8,
    noise: float = 0.8,
    structure_seed: int = 42,
    sample_seed: int = 0,
) -> MultiLabelDataset:
    """Samples drawn around cluster centers, each cluster carrying one fixed
    label combination.  ``structure_seed`` fixes the cluster/label geometry so
    independently sampled train and test sets share semantics.
    """
    struct = np.random.default_rng(structure_seed)
    combos = struct.integers(0, 2, size=(clusters, l))
    # every cluster carries at least one label, every label some cluster
    for c in range(clusters):
        if combos[c].sum() == 0:
            combos[c, struct.integers(0, l)] = 1
    for j in range(l):
        if combos[:, j].sum() == 0:
            combos[struct.integers(0, clusters), j] = 1
    centers = struct.normal(0.0, 1.0, size=(clusters, m))

    rng = np.random.default_rng(sample_seed)
    assignment = rng.integers(0, clusters, size=n)
    X = centers[assignment] + rng.normal(0.0, noise, size=(n, m))
    Y = combos[assignment]
    return MultiLabelDataset(
        X.astype(np.float64),
        Y.astype(np.int8),
        [f"label_{j}" for j in range(l)],
        [f"feature_{j}" for j in range(m)],
    )
