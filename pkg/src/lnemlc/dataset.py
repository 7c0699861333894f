"""Multi-label dataset handling: ARFF parsing, splitting, iterative stratification.

Datasets follow the MULAN convention: a block of feature attributes plus a
block of binary nominal label attributes, either at the end (default) or at
the start of the attribute list.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np


class ArffError(ValueError):
    """Raised when an ARFF stream is malformed or violates the label contract."""


@dataclass(frozen=True)
class MultiLabelDataset:
    """Feature matrix paired with a binary label matrix.

    ``features`` is n x m float, ``labels`` is n x l in {0, 1}.  Labels that
    never occur in the data are kept as all-zero columns and listed in
    ``unused_labels``.
    """

    features: np.ndarray
    labels: np.ndarray
    label_names: list[str]
    feature_names: list[str]

    def __post_init__(self):
        X, Y = self.features, self.labels
        if X.ndim != 2 or Y.ndim != 2:
            raise ValueError("features and labels must be 2-d")
        if X.shape[0] != Y.shape[0]:
            raise ValueError("feature/label row count mismatch")
        if X.shape[0] < 1 or X.shape[1] < 1:
            raise ValueError("need at least one sample and one feature")
        if Y.shape[1] < 2:
            raise ValueError("need at least two labels")
        if not np.isfinite(X).all():
            raise ValueError("features contain NaN/Inf")
        if not np.isin(Y, (0, 1)).all():
            raise ValueError("labels must be binary")
        if len(self.label_names) != Y.shape[1]:
            raise ValueError("label_names length mismatch")
        if len(self.feature_names) != X.shape[1]:
            raise ValueError("feature_names length mismatch")

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def n_labels(self) -> int:
        return self.labels.shape[1]

    @property
    def unused_labels(self) -> list[int]:
        """Indices of labels never assigned to any sample."""
        return [j for j in range(self.n_labels) if self.labels[:, j].sum() == 0]

    @property
    def max_cardinality(self) -> int:
        return int(self.labels.sum(axis=1).max())

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiLabelDataset):
            return NotImplemented
        return (
            np.array_equal(self.features, other.features)
            and np.array_equal(self.labels, other.labels)
            and self.label_names == other.label_names
            and self.feature_names == other.feature_names
        )


@dataclass(frozen=True)
class FoldAssignment:
    """Assignment of every sample to one of ``k`` folds."""

    fold_of: np.ndarray
    k: int

    def __post_init__(self):
        counts = np.bincount(self.fold_of, minlength=self.k)
        if len(counts) > self.k or (counts == 0).any():
            raise ValueError("every fold must be non-empty")

    def indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.fold_of == fold)

    def to_csv(self) -> str:
        lines = ["row_index,fold"]
        lines += [f"{i},{f}" for i, f in enumerate(self.fold_of)]
        return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# ARFF parsing

_ATTR_RE = re.compile(
    r"""^@attribute\s+ (?: '([^']*)' | "([^"]*)" | (\S+) ) \s+ (.+?)\s*$""",
    re.IGNORECASE | re.VERBOSE,
)


@dataclass
class _Attribute:
    name: str
    kind: str  # "numeric" or "nominal"
    values: list[str] = field(default_factory=list)


def _parse_header_line(line: str) -> _Attribute:
    m = _ATTR_RE.match(line)
    if m is None:
        raise ArffError(f"malformed @attribute line: {line!r}")
    name = next(g for g in m.groups()[:3] if g is not None)
    spec = m.group(4).strip()
    if spec.startswith("{"):
        if not spec.endswith("}"):
            raise ArffError(f"unterminated nominal specification: {line!r}")
        values = [v.strip().strip("'\"") for v in spec[1:-1].split(",")]
        if any(not v for v in values):
            raise ArffError(f"empty nominal value in: {line!r}")
        return _Attribute(name, "nominal", values)
    if spec.lower() in ("numeric", "real", "integer"):
        return _Attribute(name, "numeric")
    raise ArffError(f"unsupported attribute type {spec!r} for {name!r}")


def _split_dense_row(line: str) -> list[str]:
    return [tok.strip().strip("'\"") for tok in line.split(",")]


def _split_sparse_row(line: str) -> list[tuple[int, str]]:
    body = line[1:-1].strip()
    if not body:
        return []
    entries = []
    for chunk in body.split(","):
        parts = chunk.strip().split(None, 1)
        if len(parts) != 2:
            raise ArffError(f"malformed sparse entry {chunk!r}")
        try:
            idx = int(parts[0])
        except ValueError as exc:
            raise ArffError(f"non-integer sparse index in {chunk!r}") from exc
        entries.append((idx, parts[1].strip().strip("'\"")))
    return entries


def parse_arff(text: str, label_count: int, labels_at_end: bool = True) -> MultiLabelDataset:
    """Parse a dense or sparse MULAN-style ARFF document.

    The last (or first, with ``labels_at_end=False``) ``label_count``
    attributes are treated as binary nominal labels.  Nominal feature
    attributes with more than two values are one-hot expanded; missing
    values ('?') are rejected.
    """
    if label_count < 1:
        raise ArffError("label_count must be positive")

    attributes: list[_Attribute] = []
    data_lines: list[str] = []
    in_data = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        low = line.lower()
        if in_data:
            data_lines.append(line)
        elif low.startswith("@relation"):
            continue
        elif low.startswith("@attribute"):
            attributes.append(_parse_header_line(line))
        elif low.startswith("@data"):
            in_data = True
        else:
            raise ArffError(f"unexpected header line: {line!r}")

    if not in_data:
        raise ArffError("missing @data section")
    n_attr = len(attributes)
    if label_count >= n_attr:
        raise ArffError(f"label_count {label_count} >= attribute count {n_attr}")

    if labels_at_end:
        label_idx = set(range(n_attr - label_count, n_attr))
    else:
        label_idx = set(range(label_count))
    for i in sorted(label_idx):
        a = attributes[i]
        if a.kind != "nominal" or set(a.values) - {"0", "1"}:
            raise ArffError(f"label attribute {a.name!r} is not nominal {{0,1}}")

    # raw cell values per row, one string per attribute
    rows: list[list[str]] = []
    sparse_defaults = [("0" if a.kind == "numeric" else a.values[0]) for a in attributes]
    for line in data_lines:
        if line.startswith("{"):
            if not line.endswith("}"):
                raise ArffError(f"unterminated sparse row: {line!r}")
            row = list(sparse_defaults)
            for idx, val in _split_sparse_row(line):
                if not 0 <= idx < n_attr:
                    raise ArffError(f"sparse index {idx} out of range")
                row[idx] = val
        else:
            row = _split_dense_row(line)
            if len(row) != n_attr:
                raise ArffError(
                    f"row has {len(row)} values, expected {n_attr}: {line!r}"
                )
        rows.append(row)
    if not rows:
        raise ArffError("empty @data section")

    # sparse rows leave nominal defaults at values[0]; for {0,1} labels the
    # MULAN convention is that an omitted entry means 0
    for i in sorted(label_idx):
        if attributes[i].values[0] != "0":
            for line, row in zip(data_lines, rows):
                if line.startswith("{"):
                    raise ArffError(
                        f"sparse data with label {attributes[i].name!r} whose "
                        "first nominal value is not 0"
                    )

    feature_cols: list[np.ndarray] = []
    feature_names: list[str] = []
    label_cols: list[np.ndarray] = []
    label_names: list[str] = []

    for j, attr in enumerate(attributes):
        cells = [row[j] for row in rows]
        if any(c == "?" for c in cells):
            raise ArffError(f"missing value in attribute {attr.name!r}")
        if j in label_idx:
            try:
                col = np.array([int(c) for c in cells], dtype=np.int8)
            except ValueError as exc:
                raise ArffError(f"non-binary label value in {attr.name!r}") from exc
            if not np.isin(col, (0, 1)).all():
                raise ArffError(f"non-binary label value in {attr.name!r}")
            label_cols.append(col)
            label_names.append(attr.name)
        elif attr.kind == "numeric":
            try:
                col = np.array([float(c) for c in cells], dtype=np.float64)
            except ValueError as exc:
                raise ArffError(f"non-numeric value in {attr.name!r}") from exc
            feature_cols.append(col)
            feature_names.append(attr.name)
        else:
            domain = attr.values
            bad = set(cells) - set(domain)
            if bad:
                raise ArffError(f"value {bad.pop()!r} outside domain of {attr.name!r}")
            if set(domain) <= {"0", "1"}:
                feature_cols.append(np.array([float(c) for c in cells]))
                feature_names.append(attr.name)
            else:
                # one-hot expansion keeps the feature matrix real-valued
                for v in domain:
                    feature_cols.append(
                        np.array([1.0 if c == v else 0.0 for c in cells])
                    )
                    feature_names.append(f"{attr.name}={v}")

    X = np.column_stack(feature_cols)
    Y = np.column_stack(label_cols)
    return MultiLabelDataset(X, Y, label_names, feature_names)


def serialize_arff(dataset: MultiLabelDataset, relation: str = "dataset") -> str:
    """Write a dataset as dense ARFF with labels at the end (round-trips
    through :func:`parse_arff`)."""
    lines = [f"@relation {relation}", ""]
    for name in dataset.feature_names:
        lines.append(f"@attribute '{name}' numeric")
    for name in dataset.label_names:
        lines.append(f"@attribute '{name}' {{0,1}}")
    lines.append("")
    lines.append("@data")
    for xi, yi in zip(dataset.features, dataset.labels):
        cells = [repr(float(v)) for v in xi] + [str(int(v)) for v in yi]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Stratification and splitting


def _pair_evidence(Y: np.ndarray, include_singletons: bool) -> dict[tuple[int, int], np.ndarray]:
    """Map each label pair (s <= t) to the row indices exhibiting it."""
    n, l = Y.shape
    evidence: dict[tuple[int, int], np.ndarray] = {}
    for s in range(l):
        for t in range(s, l):
            if s == t and not include_singletons:
                continue
            rows = np.flatnonzero(Y[:, s] * Y[:, t])
            if len(rows):
                evidence[(s, t)] = rows
    return evidence


def iterative_stratification(
    labels: np.ndarray,
    k: int,
    seed: int,
    include_singletons: bool = True,
) -> FoldAssignment:
    """Greedy second-order iterative stratification over label-pair evidence.

    Repeatedly picks the label pair with the fewest remaining samples and
    hands each of those samples to the fold with the greatest remaining
    demand for that pair, breaking ties by remaining fold capacity and then
    by fold index.  ``include_singletons`` adds (j, j) evidence so single
    labels are balanced as well as pairs.
    """
    Y = np.asarray(labels)
    n, l = Y.shape
    if k < 2:
        raise ValueError("k must be >= 2")
    if k > n:
        raise ValueError(f"k={k} exceeds sample count {n}")
    if (Y.sum(axis=0) == 0).any() and include_singletons is False:
        pass  # zero-evidence labels simply contribute no pairs

    rng = np.random.default_rng(seed)

    evidence = _pair_evidence(Y, include_singletons)
    unassigned = np.ones(n, dtype=bool)
    fold_of = np.full(n, -1, dtype=np.int64)

    # desired per-fold counts: total/k for samples, pair_count/k per pair
    capacity = np.full(k, n / k)
    demand = {pair: np.full(k, len(rows) / k) for pair, rows in evidence.items()}
    remaining = {pair: set(rows.tolist()) for pair, rows in evidence.items()}

    def assign(i: int, f: int):
        fold_of[i] = f
        unassigned[i] = False
        capacity[f] -= 1
        for pair, rows in remaining.items():
            if i in rows:
                rows.discard(i)
                demand[pair][f] -= 1

    while any(remaining.values()):
        # rarest remaining pair; deterministic tie-break on the pair itself
        pair = min(
            (p for p, rows in remaining.items() if rows),
            key=lambda p: (len(remaining[p]), p),
        )
        rows = sorted(remaining[pair])
        rng.shuffle(rows)
        for i in rows:
            d = demand[pair]
            best = max(d)
            cands = [f for f in range(k) if d[f] == best]
            if len(cands) > 1:
                cap = capacity[cands]
                cands = [f for f, c in zip(cands, cap) if c == cap.max()]
            assign(i, cands[0])
        remaining[pair].clear()

    # samples with no pair evidence: fill by remaining capacity
    leftovers = np.flatnonzero(unassigned)
    rng.shuffle(leftovers)
    for i in leftovers:
        f = int(np.argmax(capacity))
        assign(i, f)

    return FoldAssignment(fold_of, k)


def random_fold_assignment(n: int, k: int, seed: int) -> FoldAssignment:
    """Seeded uniform split into k near-equal folds (stratification baseline)."""
    rng = np.random.default_rng(seed)
    fold_of = np.arange(n) % k
    rng.shuffle(fold_of)
    return FoldAssignment(fold_of, k)


def split(
    dataset: MultiLabelDataset, folds: FoldAssignment, held_out_fold: int
) -> tuple[MultiLabelDataset, MultiLabelDataset]:
    """Partition into (train, test) with ``held_out_fold`` as the test part."""
    if held_out_fold >= folds.k:
        raise ValueError(f"held_out_fold {held_out_fold} >= k {folds.k}")
    test_mask = folds.fold_of == held_out_fold
    if test_mask.all():
        raise ValueError("empty training part")

    def subset(mask):
        return MultiLabelDataset(
            dataset.features[mask],
            dataset.labels[mask],
            dataset.label_names,
            dataset.feature_names,
        )

    return subset(~test_mask), subset(test_mask)
