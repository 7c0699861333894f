"""Label-based multi-label evaluation measures.

Empty denominators follow the 0/0 -> 0 convention throughout (labels absent
from both truth and prediction contribute zero to macro averages).
"""

from __future__ import annotations

import numpy as np

MEASURE_NAMES = (
    "subset_accuracy",
    "hamming_loss",
    "precision_micro",
    "recall_micro",
    "f1_micro",
    "precision_macro",
    "recall_macro",
    "f1_macro",
)


def _check(Y_true, Y_pred):
    Y_true = np.asarray(Y_true)
    Y_pred = np.asarray(Y_pred)
    if Y_true.shape != Y_pred.shape:
        raise ValueError(f"shape mismatch: {Y_true.shape} vs {Y_pred.shape}")
    return Y_true, Y_pred


def _safe_div(num, den):
    return num / den if den > 0 else 0.0


def subset_accuracy(Y_true, Y_pred) -> float:
    """Fraction of rows predicted exactly."""
    Y_true, Y_pred = _check(Y_true, Y_pred)
    return float((Y_true == Y_pred).all(axis=1).mean())


def hamming_loss(Y_true, Y_pred) -> float:
    """Fraction of mismatched label cells."""
    Y_true, Y_pred = _check(Y_true, Y_pred)
    return float((Y_true != Y_pred).mean())


def micro_macro_prf(Y_true, Y_pred) -> dict[str, float]:
    """Micro- and macro-averaged precision, recall, and F1."""
    Y_true, Y_pred = _check(Y_true, Y_pred)
    tp = ((Y_true == 1) & (Y_pred == 1)).sum(axis=0).astype(float)
    fp = ((Y_true == 0) & (Y_pred == 1)).sum(axis=0).astype(float)
    fn = ((Y_true == 1) & (Y_pred == 0)).sum(axis=0).astype(float)

    p_micro = _safe_div(tp.sum(), tp.sum() + fp.sum())
    r_micro = _safe_div(tp.sum(), tp.sum() + fn.sum())
    f_micro = _safe_div(2 * p_micro * r_micro, p_micro + r_micro)

    p_per = np.array([_safe_div(t, t + f) for t, f in zip(tp, fp)])
    r_per = np.array([_safe_div(t, t + f) for t, f in zip(tp, fn)])
    f_per = np.array(
        [_safe_div(2 * p * r, p + r) for p, r in zip(p_per, r_per)]
    )
    return {
        "precision_micro": float(p_micro),
        "recall_micro": float(r_micro),
        "f1_micro": float(f_micro),
        "precision_macro": float(p_per.mean()),
        "recall_macro": float(r_per.mean()),
        "f1_macro": float(f_per.mean()),
    }


def evaluate_all(Y_true, Y_pred) -> dict[str, float]:
    """All measures in one report dictionary."""
    report = {
        "subset_accuracy": subset_accuracy(Y_true, Y_pred),
        "hamming_loss": hamming_loss(Y_true, Y_pred),
    }
    report.update(micro_macro_prf(Y_true, Y_pred))
    return report
