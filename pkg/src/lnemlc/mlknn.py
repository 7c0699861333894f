"""ML-kNN: multi-label k-nearest-neighbor classifier with MAP label assignment.

Per label, a Bayesian prior over label presence is combined with conditional
distributions over the number of positive neighbors, both Laplace-smoothed
and estimated from leave-one-out neighborhoods of the training set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class MlknnModel:
    store: np.ndarray = field(repr=False)  # n x D training points
    labels: np.ndarray = field(repr=False)  # n x l binary
    k: int
    smoothing: float
    prior: np.ndarray  # P(H_j), length l
    cond_pos: np.ndarray  # P(C_j = c | H_j), l x (k+1)
    cond_neg: np.ndarray  # P(C_j = c | not H_j), l x (k+1)


def _sq_distances(queries: np.ndarray, store: np.ndarray) -> np.ndarray:
    """Pairwise squared Euclidean distances, queries x store."""
    q2 = (queries ** 2).sum(axis=1)[:, None]
    s2 = (store ** 2).sum(axis=1)[None, :]
    return q2 + s2 - 2.0 * queries @ store.T


def _neighbor_matrix(
    queries: np.ndarray, store: np.ndarray, k: int, exclude_self: bool = False
) -> np.ndarray:
    """k nearest store indices per query row; distance ties resolve to the
    lower store index (stable sort).  ``exclude_self`` drops store row i for
    query row i (leave-one-out within the training set)."""
    dist = _sq_distances(queries, store)
    if exclude_self:
        np.fill_diagonal(dist, np.inf)
    order = np.argsort(dist, axis=1, kind="stable")
    return order[:, :k]


def knn_search(
    query: np.ndarray, store: np.ndarray, k: int, exclude: int | None = None
) -> np.ndarray:
    """Indices of the k store rows nearest to a single query vector.

    ``exclude`` removes one store index from consideration (leave-one-out).
    """
    store = np.asarray(store, dtype=np.float64)
    if store.ndim != 2 or len(store) == 0:
        raise ValueError("store must be a non-empty matrix")
    available = len(store) - (1 if exclude is not None else 0)
    if k > available:
        raise ValueError(f"k={k} exceeds available rows {available}")
    dist = _sq_distances(np.asarray(query, dtype=np.float64)[None, :], store)[0]
    if exclude is not None:
        dist[exclude] = np.inf
    return np.argsort(dist, kind="stable")[:k]


def fit(X_aug: np.ndarray, Y: np.ndarray, k: int = 5, s: float = 1.0) -> MlknnModel:
    """Estimate priors and neighbor-count conditionals from training data."""
    X_aug = np.asarray(X_aug, dtype=np.float64)
    Y = np.asarray(Y)
    n, l = Y.shape
    if n <= k:
        raise ValueError(f"need more than k={k} training samples, got {n}")

    prior = (s + Y.sum(axis=0)) / (2.0 * s + n)

    neighbors = _neighbor_matrix(X_aug, X_aug, k, exclude_self=True)
    counts = Y[neighbors].sum(axis=1)  # n x l positive-neighbor counts

    cond_pos = np.empty((l, k + 1))
    cond_neg = np.empty((l, k + 1))
    for j in range(l):
        pos = Y[:, j] == 1
        c1 = np.bincount(counts[pos, j], minlength=k + 1)
        c0 = np.bincount(counts[~pos, j], minlength=k + 1)
        cond_pos[j] = (s + c1) / (s * (k + 1) + c1.sum())
        cond_neg[j] = (s + c0) / (s * (k + 1) + c0.sum())

    return MlknnModel(X_aug, Y, k, s, prior, cond_pos, cond_neg)


def predict(model: MlknnModel, queries: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """MAP label assignments and posterior scores for query rows.

    A label is assigned when P(H)P(c|H) >= P(not H)P(c|not H); the score is
    the normalized posterior P(H|c) in [0, 1].
    """
    queries = np.asarray(queries, dtype=np.float64)
    if queries.ndim != 2 or queries.shape[1] != model.store.shape[1]:
        raise ValueError("query column count must match the training store")
    n_q = queries.shape[0]
    l = model.labels.shape[1]
    if n_q == 0:
        return np.zeros((0, l), dtype=np.int8), np.zeros((0, l))

    neighbors = _neighbor_matrix(queries, model.store, model.k)
    counts = model.labels[neighbors].sum(axis=1)  # n_q x l

    labels_idx = np.arange(l)
    p_pos = model.prior[None, :] * model.cond_pos[labels_idx, counts]
    p_neg = (1.0 - model.prior)[None, :] * model.cond_neg[labels_idx, counts]
    assignments = (p_pos >= p_neg).astype(np.int8)
    scores = p_pos / (p_pos + p_neg)
    return assignments, scores
