"""Aggregation of per-label embedding vectors into one vector per sample."""

from __future__ import annotations

import numpy as np

from .embedding import EmbeddingTable

AGGREGATION_KINDS = ("sum", "mean", "product")


def aggregate(labels: np.ndarray, table: EmbeddingTable, kind: str) -> np.ndarray:
    """Reduce each sample's assigned label vectors to a single d-dim vector.

    Empty label sets map to the zero vector for every kind (a product
    identity of ones would inject a spurious constant signal).  Beware that
    zero-vector labels (isolated graph nodes) zero out product rows.
    """
    if kind not in AGGREGATION_KINDS:
        raise ValueError(f"kind must be one of {AGGREGATION_KINDS}")
    Y = np.asarray(labels, dtype=np.float64)
    if Y.ndim != 2 or Y.shape[1] != table.node_count:
        raise ValueError("label matrix width must match the embedding table")
    V = table.vectors
    n = Y.shape[0]
    cardinality = Y.sum(axis=1)

    if kind in ("sum", "mean"):
        E = Y @ V
        if kind == "mean":
            nonzero = cardinality > 0
            E[nonzero] /= cardinality[nonzero, None]
    else:
        E = np.zeros((n, table.dimension))
        for i in range(n):
            idx = np.flatnonzero(Y[i])
            if len(idx):
                E[i] = V[idx].prod(axis=0)
    return E
