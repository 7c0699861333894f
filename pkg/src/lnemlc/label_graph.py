"""Label co-occurrence network built from the training label matrix.

Nodes are labels; an edge (s, t) exists when some training sample carries
both labels (s = t gives self-edges, so every active label has at least one
edge).  Weighted mode normalizes co-occurrence counts by the number of
training samples, so w(j, j) is label j's prior frequency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LabelGraph:
    """Undirected weighted graph over labels, edges stored canonically (s <= t)."""

    node_count: int
    edges: list[tuple[int, int, float]]
    weighted: bool

    def __post_init__(self):
        seen = set()
        for s, t, w in self.edges:
            if s > t:
                raise ValueError(f"edge ({s},{t}) not in canonical order")
            if (s, t) in seen:
                raise ValueError(f"duplicate edge ({s},{t})")
            seen.add((s, t))
            if not 0 < w <= 1:
                raise ValueError(f"edge weight {w} outside (0, 1]")

    @property
    def isolated_nodes(self) -> list[int]:
        touched = {v for s, t, _ in self.edges for v in (s, t)}
        return [v for v in range(self.node_count) if v not in touched]

    def directed_edges(self) -> list[tuple[int, int, float]]:
        """Both directions of every edge; self-edges appear once."""
        out = []
        for s, t, w in self.edges:
            out.append((s, t, w))
            if s != t:
                out.append((t, s, w))
        return out

    def adjacency(self) -> list[list[tuple[int, float]]]:
        """Neighbor lists (node -> [(neighbor, weight), ...]), sorted by neighbor."""
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.node_count)]
        for s, t, w in self.directed_edges():
            adj[s].append((t, w))
        for nbrs in adj:
            nbrs.sort()
        return adj

    def degrees(self) -> np.ndarray:
        """Weighted out-degree per node over the expanded directed edge list."""
        deg = np.zeros(self.node_count)
        for s, _, w in self.directed_edges():
            deg[s] += w
        return deg

    def to_edge_list_text(self) -> str:
        lines = [f"{s} {t} {w:.17g}" for s, t, w in self.edges]
        return "\n".join(lines) + "\n"


def build_graph(labels: np.ndarray, weighted: bool) -> LabelGraph:
    """Build the co-occurrence network from a binary n x l label matrix."""
    Y = np.asarray(labels)
    if not np.isin(Y, (0, 1)).all():
        raise ValueError("labels must be binary")
    n, l = Y.shape
    cooc = Y.T.astype(np.float64) @ Y  # cooc[s, t] = co-occurrence count
    edges = []
    for s in range(l):
        for t in range(s, l):
            c = cooc[s, t]
            if c > 0:
                edges.append((s, t, c / n if weighted else 1.0))
    return LabelGraph(l, edges, weighted)
