"""End-to-end LNEMLC orchestration.

Training runs: label graph -> network embedding -> per-sample aggregation ->
embedding regressor -> ML-kNN on the feature-plus-embedding space.  Prediction
concatenates (scaled) input features with regressed embeddings; the exact
diagnostic path substitutes embeddings aggregated from the true test labels.
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import mlknn, regress
from .aggregate import AGGREGATION_KINDS, aggregate
from .dataset import MultiLabelDataset
from .embedding import EmbeddingTable, table_from_text
from .label_graph import build_graph
from .line import DIMENSION_GRID, LineConfig, train_line
from .metrics import evaluate_all
from .node2vec import Node2vecConfig, train_node2vec

NETWORK_VARIANTS = ("unweighted", "weighted")
EMBEDDERS = ("line", "node2vec")
REGRESSORS = ("ridge", "forest", "none")
SCALING_MODES = ("none", "standardize-both", "standardize-E-only")


class ConfigurationError(ValueError):
    """Invalid or inconsistent LNEMLC configuration."""


def dimension_for_labels(l: int) -> int:
    """Power of two closest to 5l, ties rounding up, clamped to the 4..4096 grid."""
    target = 5 * l
    best = min(DIMENSION_GRID, key=lambda d: (abs(d - target), -d))
    return best


@dataclass(frozen=True)
class LnemlcConfig:
    network_variant: str = "unweighted"
    embedder: str = "line"
    dimension: int | None = None  # None -> 5l rule; 0 -> no-embedding baseline
    line_order: str = "concat"
    aggregation: str = "sum"
    regressor: str = "forest"
    scaling: str = "standardize-both"
    k: int = 5
    smoothing: float = 1.0
    seed: int = 0
    # embedder knobs
    negative_ratio: int = 5
    sample_budget: int | None = None
    initial_learning_rate: float = 0.025
    walks_per_node: int = 200
    max_walk_length: int | None = None  # None -> 2 x max training cardinality
    return_p: float = 1.0
    inout_q: float = 1.0
    window_size: int = 10
    epochs: int = 5
    # regressor knobs
    ridge_lambda: float = 1.0
    trees_count: int = 100
    max_depth: int | None = None
    min_samples_leaf: int = 1
    features_per_split: int | None = None

    def __post_init__(self):
        if self.network_variant not in NETWORK_VARIANTS:
            raise ConfigurationError(f"network_variant must be one of {NETWORK_VARIANTS}")
        if self.embedder not in EMBEDDERS:
            raise ConfigurationError(f"embedder must be one of {EMBEDDERS}")
        if self.aggregation not in AGGREGATION_KINDS:
            raise ConfigurationError(f"aggregation must be one of {AGGREGATION_KINDS}")
        if self.regressor not in REGRESSORS:
            raise ConfigurationError(f"regressor must be one of {REGRESSORS}")
        if self.scaling not in SCALING_MODES:
            raise ConfigurationError(f"scaling must be one of {SCALING_MODES}")
        if self.dimension is not None and self.dimension != 0:
            if self.dimension not in DIMENSION_GRID:
                raise ConfigurationError(
                    f"dimension {self.dimension} is not in the power-of-two grid "
                    f"{DIMENSION_GRID[0]}..{DIMENSION_GRID[-1]}"
                )
        if self.k < 1:
            raise ConfigurationError("k must be >= 1")

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "LnemlcConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


@dataclass(frozen=True)
class Scaler:
    mean: np.ndarray
    std: np.ndarray

    @classmethod
    def fit(cls, X: np.ndarray) -> "Scaler":
        std = X.std(axis=0)
        std = np.where(std == 0, 1.0, std)
        return cls(X.mean(axis=0), std)

    def apply(self, X: np.ndarray) -> np.ndarray:
        return (X - self.mean) / self.std

    @classmethod
    def identity(cls, width: int) -> "Scaler":
        return cls(np.zeros(width), np.ones(width))


@dataclass(frozen=True)
class TrainedLnemlc:
    config: LnemlcConfig
    dimension: int
    label_names: list[str]
    feature_names: list[str]
    table: EmbeddingTable | None
    scaler_x: Scaler
    scaler_e: Scaler | None
    phi: regress.RidgeModel | regress.ForestModel | None
    theta: mlknn.MlknnModel
    metadata: dict = field(default_factory=dict)


def _embed(graph, config: LnemlcConfig, dimension: int, max_cardinality: int) -> EmbeddingTable:
    if config.embedder == "line":
        line_cfg = LineConfig(
            dimension=dimension,
            order=config.line_order,
            negative_ratio=config.negative_ratio,
            sample_budget=config.sample_budget,
            initial_learning_rate=config.initial_learning_rate,
            seed=config.seed,
        )
        return train_line(graph, line_cfg)
    walk_len = config.max_walk_length or max(2, 2 * max_cardinality)
    n2v_cfg = Node2vecConfig(
        dimension=dimension,
        walks_per_node=config.walks_per_node,
        max_walk_length=walk_len,
        return_p=config.return_p,
        inout_q=config.inout_q,
        window_size=config.window_size,
        negative_ratio=config.negative_ratio,
        epochs=config.epochs,
        learning_rate=config.initial_learning_rate,
        seed=config.seed,
    )
    return train_node2vec(graph, n2v_cfg)


def train(train_set: MultiLabelDataset, config: LnemlcConfig) -> TrainedLnemlc:
    """Run the five LNEMLC training steps in order.

    ``dimension=0`` trains the no-embedding ML-kNN baseline on (scaled)
    features alone.  ``regressor="none"`` skips the embedding regressor and
    restricts prediction to the exact diagnostic path.
    """
    X, Y = train_set.features, train_set.labels
    l = train_set.n_labels
    dimension = config.dimension if config.dimension is not None else dimension_for_labels(l)

    timings: list[tuple[str, float]] = []
    t0 = time.perf_counter()

    def mark(step):
        timings.append((step, time.perf_counter() - t0))

    scale_x = config.scaling in ("standardize-both",)
    scaler_x = Scaler.fit(X) if scale_x else Scaler.identity(X.shape[1])

    metadata: dict = {
        "dimension": dimension,
        "isolated_labels": train_set.unused_labels,
    }
    if train_set.unused_labels:
        metadata["warnings"] = [
            "labels never assigned in training data embed as zero vectors: "
            f"{[train_set.label_names[j] for j in train_set.unused_labels]}"
        ]

    if dimension == 0:
        theta = mlknn.fit(scaler_x.apply(X), Y, k=config.k, s=config.smoothing)
        mark("classifier")
        metadata["timings"] = timings
        return TrainedLnemlc(
            config, 0, train_set.label_names, train_set.feature_names,
            None, scaler_x, None, None, theta, metadata,
        )

    graph = build_graph(Y, weighted=config.network_variant == "weighted")
    mark("label_graph")

    table = _embed(graph, config, dimension, train_set.max_cardinality)
    mark("embedding")

    E = aggregate(Y, table, config.aggregation)
    mark("aggregation")

    scale_e = config.scaling in ("standardize-both", "standardize-E-only")
    scaler_e = Scaler.fit(E) if scale_e else Scaler.identity(E.shape[1])

    if config.regressor == "ridge":
        # ridge is scale-sensitive; trees are not
        phi = regress.fit_ridge(scaler_x.apply(X), E, config.ridge_lambda)
    elif config.regressor == "forest":
        forest_cfg = regress.ForestConfig(
            trees_count=config.trees_count,
            max_depth=config.max_depth,
            min_samples_leaf=config.min_samples_leaf,
            features_per_split=config.features_per_split,
            seed=config.seed,
        )
        phi = regress.fit_forest(X, E, forest_cfg)
    else:
        phi = None
    mark("regressor")

    theta = mlknn.fit(
        np.hstack([scaler_x.apply(X), scaler_e.apply(E)]),
        Y,
        k=config.k,
        s=config.smoothing,
    )
    mark("classifier")

    metadata["timings"] = timings
    return TrainedLnemlc(
        config, dimension, train_set.label_names, train_set.feature_names,
        table, scaler_x, scaler_e, phi, theta, metadata,
    )


def _augment(model: TrainedLnemlc, X: np.ndarray, E: np.ndarray) -> np.ndarray:
    return np.hstack([model.scaler_x.apply(X), model.scaler_e.apply(E)])


def predict(model: TrainedLnemlc, X_test: np.ndarray) -> np.ndarray:
    """Deployment path: classifier over features plus regressed embeddings."""
    X_test = np.asarray(X_test, dtype=np.float64)
    if model.dimension == 0:
        assignments, _ = mlknn.predict(model.theta, model.scaler_x.apply(X_test))
        return assignments
    if model.phi is None:
        raise ConfigurationError(
            "model was trained with regressor='none'; only predict_exact is available"
        )
    if model.config.regressor == "ridge":
        E = regress.predict(model.phi, model.scaler_x.apply(X_test))
    else:
        E = regress.predict(model.phi, X_test)
    assignments, _ = mlknn.predict(model.theta, _augment(model, X_test, E))
    return assignments


def predict_exact(model: TrainedLnemlc, X_test: np.ndarray, Y_true: np.ndarray) -> np.ndarray:
    """Diagnostic path: aggregate the true test labels through the training
    embedding table instead of regressing (upper bound on potential)."""
    X_test = np.asarray(X_test, dtype=np.float64)
    Y_true = np.asarray(Y_true)
    if model.dimension == 0:
        assignments, _ = mlknn.predict(model.theta, model.scaler_x.apply(X_test))
        return assignments
    if Y_true.shape[1] != len(model.label_names):
        raise ValueError("label dimension mismatch")
    E = aggregate(Y_true, model.table, model.config.aggregation)
    assignments, _ = mlknn.predict(model.theta, _augment(model, X_test, E))
    return assignments


def run_experiment(
    train_set: MultiLabelDataset,
    test_set: MultiLabelDataset,
    configs: list[LnemlcConfig],
    measures: list[str] | None = None,
    modes: tuple[str, ...] = ("exact", "regressed"),
    include_baseline: bool = True,
) -> list[dict]:
    """Train and evaluate each config, one report row per (config, mode).

    The no-embedding baseline control row is appended unless disabled.
    """
    if train_set.label_names != test_set.label_names:
        raise ValueError("train/test label schemas differ")
    if train_set.n_features != test_set.n_features:
        raise ValueError("train/test feature schemas differ")

    rows: list[dict] = []

    def evaluate(model, mode, config):
        t0 = time.perf_counter()
        if mode == "regressed":
            Y_pred = predict(model, test_set.features)
        else:
            Y_pred = predict_exact(model, test_set.features, test_set.labels)
        elapsed = time.perf_counter() - t0
        report = evaluate_all(test_set.labels, Y_pred)
        if measures is not None:
            report = {k: v for k, v in report.items() if k in measures}
        row = {
            "mode": mode,
            "seed": config.seed,
            "dimension": model.dimension,
            "predict_seconds": round(elapsed, 6),
            "train_seconds": round(model.metadata["timings"][-1][1], 6),
        }
        row.update({f"config.{k}": v for k, v in dataclasses.asdict(config).items()})
        row.update(report)
        return row

    for config in configs:
        model = train(train_set, config)
        for mode in modes:
            if mode == "regressed" and config.regressor == "none":
                continue
            rows.append(evaluate(model, mode, config))

    if include_baseline:
        base_cfg = dataclasses.replace(configs[0], dimension=0) if configs else LnemlcConfig(dimension=0)
        base_model = train(train_set, base_cfg)
        row = evaluate(base_model, "baseline", base_cfg)
        rows.append(row)
    return rows


def report_to_csv(rows: list[dict]) -> str:
    if not rows:
        return "\n"
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_csv_cell(row.get(c, "")) for c in columns))
    return "\n".join(lines) + "\n"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    text = str(value)
    if "," in text or '"' in text:
        text = '"' + text.replace('"', '""') + '"'
    return text


def report_to_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2, default=str)
