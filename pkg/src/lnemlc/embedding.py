"""Per-label embedding vectors and their word2vec-style text serialization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EmbeddingTable:
    """l x d matrix of label vectors.

    ``order`` records which proximity objective produced the table: "first",
    "second" or "concat" for LINE, "skipgram" for walk-based training.
    """

    vectors: np.ndarray
    dimension: int
    order: str

    def __post_init__(self):
        if self.vectors.ndim != 2 or self.vectors.shape[1] != self.dimension:
            raise ValueError("vectors must be l x dimension")
        if self.dimension < 2:
            raise ValueError("dimension must be >= 2")
        if not np.isfinite(self.vectors).all():
            raise ValueError("embedding vectors must be finite")
        if self.order == "concat" and self.dimension % 2 != 0:
            raise ValueError("concatenated embeddings need an even dimension")

    @property
    def node_count(self) -> int:
        return self.vectors.shape[0]

    def to_text(self, names: list[str] | None = None) -> str:
        l, d = self.vectors.shape
        names = names if names is not None else [str(i) for i in range(l)]
        if len(names) != l:
            raise ValueError("one name per vector required")
        lines = [f"{l} {d}"]
        for name, row in zip(names, self.vectors):
            lines.append(name + " " + " ".join(f"{v:.17g}" for v in row))
        return "\n".join(lines) + "\n"


def table_from_text(text: str, order: str = "first") -> tuple[EmbeddingTable, list[str]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    l, d = (int(tok) for tok in lines[0].split())
    names, rows = [], []
    for ln in lines[1 : 1 + l]:
        parts = ln.split()
        names.append(parts[0])
        rows.append([float(v) for v in parts[1:]])
    vectors = np.array(rows, dtype=np.float64)
    if vectors.shape != (l, d):
        raise ValueError("embedding text body does not match its header")
    return EmbeddingTable(vectors, d, order), names
