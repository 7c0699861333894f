"""node2vec embedding of the label graph: biased second-order random walks
feeding a skip-gram trainer with negative sampling.

Label graphs are tiny, so transition biases are computed on the fly instead
of pre-building alias tables for every (prev, cur) edge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embedding import EmbeddingTable
from .label_graph import LabelGraph
from .line import sigmoid
from .sampling import AliasTable

_NOISE_POWER = 0.75


@dataclass(frozen=True)
class Node2vecConfig:
    dimension: int
    walks_per_node: int = 200
    max_walk_length: int = 8  # pipeline sets 2 x max label cardinality
    return_p: float = 1.0
    inout_q: float = 1.0
    window_size: int = 10
    negative_ratio: int = 5
    epochs: int = 5
    learning_rate: float = 0.025
    seed: int = 0

    def __post_init__(self):
        if self.dimension < 2:
            raise ValueError("dimension must be >= 2")
        if self.walks_per_node < 1:
            raise ValueError("walks_per_node must be >= 1")
        if self.max_walk_length < 2:
            raise ValueError("max_walk_length must be >= 2")
        if self.return_p <= 0 or self.inout_q <= 0:
            raise ValueError("p and q must be positive")


@dataclass(frozen=True)
class WalkCorpus:
    walks: list[list[int]]

    def to_text(self, names: list[str] | None = None) -> str:
        fmt = (lambda v: names[v]) if names is not None else str
        return "\n".join(" ".join(fmt(v) for v in w) for w in self.walks) + "\n"


def _step_distribution(
    graph_adj, neighbor_sets, prev: int | None, cur: int, p: float, q: float
) -> tuple[list[int], np.ndarray]:
    """Unnormalized transition weights out of ``cur`` given the previous node."""
    nbrs = graph_adj[cur]
    nodes = [x for x, _ in nbrs]
    w = np.array([wt for _, wt in nbrs], dtype=np.float64)
    if prev is not None:
        bias = np.empty(len(nodes))
        for i, x in enumerate(nodes):
            if x == prev:
                bias[i] = 1.0 / p
            elif x in neighbor_sets[prev]:
                bias[i] = 1.0
            else:
                bias[i] = 1.0 / q
        w = w * bias
    return nodes, w


def generate_walks(graph: LabelGraph, config: Node2vecConfig) -> WalkCorpus:
    """Biased random walks from every non-isolated node.

    Walks have ``max_walk_length`` nodes and only stop early at dead ends.
    Start-node order is shuffled per round with the run seed.
    """
    if not graph.edges:
        raise ValueError("cannot walk an empty graph")
    adj = graph.adjacency()
    neighbor_sets = [set(x for x, _ in nbrs) for nbrs in adj]
    starts = [v for v in range(graph.node_count) if adj[v]]

    rng = np.random.default_rng(config.seed)
    walks: list[list[int]] = []
    for _ in range(config.walks_per_node):
        order = list(starts)
        rng.shuffle(order)
        for start in order:
            walk = [start]
            while len(walk) < config.max_walk_length:
                cur = walk[-1]
                if not adj[cur]:
                    break
                prev = walk[-2] if len(walk) > 1 else None
                nodes, w = _step_distribution(
                    adj, neighbor_sets, prev, cur, config.return_p, config.inout_q
                )
                probs = w / w.sum()
                walk.append(int(rng.choice(nodes, p=probs)))
            walks.append(walk)
    return WalkCorpus(walks)


def train_skipgram(
    corpus: WalkCorpus, config: Node2vecConfig, node_count: int
) -> EmbeddingTable:
    """word2vec-style skip-gram with negative sampling over walk sequences.

    The update has exactly the form of the LINE first-order gradient: center
    and context roles share one vector matrix, negatives hitting either end
    of the pair are skipped, and negatives are drawn proportional to corpus
    frequency^0.75.  Nodes absent from the corpus get zero vectors.
    """
    if not corpus.walks:
        raise ValueError("empty walk corpus")

    freq = np.zeros(node_count)
    for walk in corpus.walks:
        for v in walk:
            freq[v] += 1
    noise_alias = AliasTable(freq ** _NOISE_POWER)

    pairs = []
    for walk in corpus.walks:
        for pos, center in enumerate(walk):
            lo = max(0, pos - config.window_size)
            hi = min(len(walk), pos + config.window_size + 1)
            for cpos in range(lo, hi):
                if cpos != pos:
                    pairs.append((center, walk[cpos]))
    if not pairs:
        raise ValueError("corpus has no context pairs (walks of length 1)")

    total_steps = config.epochs * len(pairs)
    rng = np.random.default_rng(config.seed)
    d = config.dimension
    emb = (rng.random((node_count, d)) - 0.5) / d

    step = 0
    for _ in range(config.epochs):
        negs = noise_alias.sample(rng, (len(pairs), config.negative_ratio))
        for (center, context), step_negs in zip(pairs, negs):
            lr = config.learning_rate * max(1.0 - step / total_steps, 0.01)
            u = emb[center]
            f = sigmoid(u @ emb[context])
            g = (1.0 - f) * lr
            accum = g * emb[context]
            emb[context] = emb[context] + g * u
            for n in step_negs:
                if n == context or n == center:
                    continue
                f = sigmoid(u @ emb[n])
                accum = accum - f * lr * emb[n]
                emb[n] = emb[n] - f * lr * u
            emb[center] = u + accum
            step += 1

    emb[freq == 0] = 0.0
    return EmbeddingTable(emb, d, "skipgram")


def train_node2vec(graph: LabelGraph, config: Node2vecConfig) -> EmbeddingTable:
    corpus = generate_walks(graph, config)
    return train_skipgram(corpus, config, graph.node_count)
