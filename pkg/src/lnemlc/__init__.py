"""Label network embeddings for multi-label classification."""

__version__ = "0.1.0"

from .dataset import (  # noqa: F401
    FoldAssignment,
    MultiLabelDataset,
    iterative_stratification,
    parse_arff,
    serialize_arff,
    split,
)
from .embedding import EmbeddingTable  # noqa: F401
from .label_graph import LabelGraph, build_graph  # noqa: F401
from .pipeline import (  # noqa: F401
    LnemlcConfig,
    TrainedLnemlc,
    predict,
    predict_exact,
    train,
)
