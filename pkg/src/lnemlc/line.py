"""LINE-style label network embedding trained by edge-sampling SGD.

First-order proximity trains node vectors directly against each other;
second-order proximity keeps a separate context matrix for the target side.
"concat" trains both objectives independently on half the dimension and half
the sample budget each, and glues the halves without re-normalization.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .embedding import EmbeddingTable
from .label_graph import LabelGraph
from .sampling import AliasTable

DIMENSION_GRID = tuple(2 ** k for k in range(2, 13))  # 4 .. 4096

LINE_ORDERS = ("first", "second", "concat")

_NOISE_POWER = 0.75
_MIN_BUDGET = 100_000


def sigmoid(x):
    return 1.0 / (1.0 + np.exp(-np.clip(x, -35.0, 35.0)))


@dataclass(frozen=True)
class LineConfig:
    dimension: int
    order: str = "concat"
    negative_ratio: int = 5
    sample_budget: int | None = None  # default: 1000 x edge count, min 1e5
    initial_learning_rate: float = 0.025
    seed: int = 0

    def __post_init__(self):
        if self.order not in LINE_ORDERS:
            raise ValueError(f"order must be one of {LINE_ORDERS}")
        if self.dimension < 2:
            raise ValueError("dimension must be >= 2")
        if self.order == "concat" and self.dimension % 2 != 0:
            raise ValueError("concat order needs an even dimension")
        if self.negative_ratio < 1:
            raise ValueError("negative_ratio must be >= 1")
        if self.initial_learning_rate <= 0:
            raise ValueError("learning rate must be positive")


def resolve_budget(config: LineConfig, edge_count: int) -> int:
    if config.sample_budget is not None:
        return config.sample_budget
    return max(_MIN_BUDGET, 1000 * edge_count)


def line_objective(u_s, u_t, negatives) -> float:
    """Negative-sampling step objective (to be ascended)."""
    val = float(np.log(sigmoid(u_s @ u_t)))
    for n in np.atleast_2d(negatives):
        val += float(np.log(sigmoid(-(u_s @ n))))
    return val


def line_gradient(u_s, u_t, negatives):
    """Analytic ascent gradient of :func:`line_objective`.

    Returns (g_s, g_t, g_negatives) where g_negatives has one row per
    negative vector.
    """
    negatives = np.atleast_2d(np.asarray(negatives, dtype=np.float64))
    f_pos = sigmoid(u_s @ u_t)
    g_s = (1.0 - f_pos) * u_t
    g_t = (1.0 - f_pos) * np.asarray(u_s, dtype=np.float64)
    g_negs = np.empty_like(negatives)
    for i, n in enumerate(negatives):
        f = sigmoid(u_s @ n)
        g_s = g_s - f * n
        g_negs[i] = -f * np.asarray(u_s, dtype=np.float64)
    return g_s, g_t, g_negs


def _sgns_train(
    graph: LabelGraph,
    dimension: int,
    order: str,
    budget: int,
    negative_ratio: int,
    rho0: float,
    seed_seq: np.random.SeedSequence,
    objective_log: list | None = None,
    record_every: int | None = None,
) -> np.ndarray:
    directed = graph.directed_edges()
    src = np.array([e[0] for e in directed])
    dst = np.array([e[1] for e in directed])
    weights = np.array([e[2] for e in directed])
    edge_alias = AliasTable(weights)
    noise_alias = AliasTable(graph.degrees() ** _NOISE_POWER)

    l = graph.node_count
    rng = np.random.default_rng(seed_seq)
    emb = (rng.random((l, dimension)) - 0.5) / dimension
    ctx = np.zeros((l, dimension)) if order == "second" else emb

    if objective_log is not None:
        eval_rng = np.random.default_rng(seed_seq.spawn(1)[0])
        eval_edges = edge_alias.sample(eval_rng, 256)
        eval_negs = noise_alias.sample(eval_rng, (256, negative_ratio))

        def record(step):
            total = 0.0
            for e, negs in zip(eval_edges, eval_negs):
                s, t = src[e], dst[e]
                total += float(np.log(sigmoid(emb[s] @ ctx[t])))
                if s != t:
                    for n in negs:
                        if n != s and n != t:
                            total += float(np.log(sigmoid(-(emb[s] @ ctx[n]))))
            objective_log.append((step, total / len(eval_edges)))

    chunk = 65536
    step = 0
    while step < budget:
        nsteps = min(chunk, budget - step)
        eidx = edge_alias.sample(rng, nsteps)
        flips = rng.random(nsteps) < 0.5
        negs = noise_alias.sample(rng, (nsteps, negative_ratio))
        for ii in range(nsteps):
            global_step = step + ii
            if objective_log is not None and global_step % record_every == 0:
                record(global_step)
            lr = rho0 * max(1.0 - global_step / budget, 0.01)
            e = eidx[ii]
            s, t = src[e], dst[e]
            if flips[ii] and s != t:
                s, t = t, s
            u_s = emb[s]
            f = sigmoid(u_s @ ctx[t])
            g = (1.0 - f) * lr
            accum = g * ctx[t]
            ctx[t] = ctx[t] + g * u_s
            if s != t:
                # self-edge draws are positive-only: they exist to keep
                # singleton labels trained, not to generate repulsion
                for n in negs[ii]:
                    if n == t or n == s:
                        continue
                    f = sigmoid(u_s @ ctx[n])
                    accum = accum - f * lr * ctx[n]
                    ctx[n] = ctx[n] - f * lr * u_s
            emb[s] = u_s + accum
        step += nsteps

    if objective_log is not None:
        record(budget)
    emb[graph.isolated_nodes] = 0.0
    return emb


def train_line(
    graph: LabelGraph,
    config: LineConfig,
    objective_log: list | None = None,
    record_every: int = 1000,
) -> EmbeddingTable:
    """Train LINE embeddings for every node of the label graph.

    Isolated nodes (labels without any positive sample) get zero vectors.
    With a fixed seed the result is bitwise reproducible.  ``objective_log``,
    when given a list, collects (step, estimated objective) checkpoints.
    """
    if not graph.edges:
        raise ValueError("cannot embed an empty graph")

    root = np.random.SeedSequence(config.seed)
    budget = resolve_budget(config, len(graph.edges))

    if config.order == "concat":
        half = config.dimension // 2
        if half < 2:
            raise ValueError("concat order needs dimension >= 4")
        seq1, seq2 = root.spawn(2)
        first = _sgns_train(
            graph, half, "first", budget // 2, config.negative_ratio,
            config.initial_learning_rate, seq1, objective_log, record_every,
        )
        second = _sgns_train(
            graph, half, "second", budget // 2, config.negative_ratio,
            config.initial_learning_rate, seq2, objective_log, record_every,
        )
        vectors = np.hstack([first, second])
    else:
        vectors = _sgns_train(
            graph, config.dimension, config.order, budget, config.negative_ratio,
            config.initial_learning_rate, root, objective_log, record_every,
        )
    return EmbeddingTable(vectors, config.dimension, config.order)


def with_seed(config: LineConfig, seed: int) -> LineConfig:
    return replace(config, seed=seed)
