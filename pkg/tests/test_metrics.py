import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lnemlc.metrics import (
    MEASURE_NAMES,
    evaluate_all,
    hamming_loss,
    micro_macro_prf,
    subset_accuracy,
)


def naive_metrics(Y_true, Y_pred):
    """Oracle: explicit double loops over cells and labels."""
    n, l = Y_true.shape
    exact = sum(
        1 for i in range(n) if all(Y_true[i][j] == Y_pred[i][j] for j in range(l))
    )
    mismatches = sum(
        1 for i in range(n) for j in range(l) if Y_true[i][j] != Y_pred[i][j]
    )

    def div(a, b):
        return a / b if b > 0 else 0.0

    tp = [0] * l
    fp = [0] * l
    fn = [0] * l
    for i in range(n):
        for j in range(l):
            if Y_true[i][j] == 1 and Y_pred[i][j] == 1:
                tp[j] += 1
            elif Y_true[i][j] == 0 and Y_pred[i][j] == 1:
                fp[j] += 1
            elif Y_true[i][j] == 1 and Y_pred[i][j] == 0:
                fn[j] += 1
    p_mi = div(sum(tp), sum(tp) + sum(fp))
    r_mi = div(sum(tp), sum(tp) + sum(fn))
    p_ma = [div(tp[j], tp[j] + fp[j]) for j in range(l)]
    r_ma = [div(tp[j], tp[j] + fn[j]) for j in range(l)]
    f_ma = [div(2 * p * r, p + r) for p, r in zip(p_ma, r_ma)]
    return {
        "subset_accuracy": exact / n,
        "hamming_loss": mismatches / (n * l),
        "precision_micro": p_mi,
        "recall_micro": r_mi,
        "f1_micro": div(2 * p_mi * r_mi, p_mi + r_mi),
        "precision_macro": sum(p_ma) / l,
        "recall_macro": sum(r_ma) / l,
        "f1_macro": sum(f_ma) / l,
    }


def test_perfect_prediction():
    Y = np.array([[1, 0], [0, 1], [1, 1]])
    report = evaluate_all(Y, Y)
    assert report["subset_accuracy"] == 1.0
    assert report["hamming_loss"] == 0.0
    assert report["f1_micro"] == 1.0 and report["f1_macro"] == 1.0


def test_all_wrong_prediction():
    Y = np.array([[1, 0], [0, 1]])
    report = evaluate_all(Y, 1 - Y)
    assert report["subset_accuracy"] == 0.0
    assert report["hamming_loss"] == 1.0
    assert report["precision_micro"] == 0.0 and report["recall_micro"] == 0.0


def test_zero_over_zero_convention():
    # no positives anywhere: precision/recall/F1 are 0, not NaN
    Z = np.zeros((4, 3), dtype=int)
    report = evaluate_all(Z, Z)
    assert report["subset_accuracy"] == 1.0
    for name in MEASURE_NAMES[2:]:
        assert report[name] == 0.0


def test_hand_computed_case():
    Y_true = np.array([[1, 1, 0], [0, 1, 0]])
    Y_pred = np.array([[1, 0, 0], [0, 1, 1]])
    assert subset_accuracy(Y_true, Y_pred) == 0.0
    assert hamming_loss(Y_true, Y_pred) == pytest.approx(2 / 6)
    report = micro_macro_prf(Y_true, Y_pred)
    # tp = [1, 1, 0], fp = [0, 0, 1], fn = [0, 1, 0]
    assert report["precision_micro"] == pytest.approx(2 / 3)
    assert report["recall_micro"] == pytest.approx(2 / 3)
    assert report["f1_micro"] == pytest.approx(2 / 3)
    assert report["precision_macro"] == pytest.approx((1 + 1 + 0) / 3)
    assert report["recall_macro"] == pytest.approx((1 + 1 / 2 + 0) / 3)
    assert report["f1_macro"] == pytest.approx((1 + 2 / 3 + 0) / 3)


def test_matches_naive_oracle():
    rng = np.random.default_rng(0)
    for _ in range(50):
        n = int(rng.integers(1, 20))
        l = int(rng.integers(1, 8))
        Y_true = (rng.random((n, l)) < rng.random()).astype(int)
        Y_pred = (rng.random((n, l)) < rng.random()).astype(int)
        report = evaluate_all(Y_true, Y_pred)
        oracle = naive_metrics(Y_true, Y_pred)
        assert set(report) == set(oracle)
        for name in report:
            assert abs(report[name] - oracle[name]) < 1e-12, name


@settings(max_examples=30, deadline=None)
@given(
    arrays(np.int8, (6, 4), elements=st.integers(0, 1)),
    arrays(np.int8, (6, 4), elements=st.integers(0, 1)),
    st.permutations(list(range(6))),
)
def test_row_permutation_invariance(Y_true, Y_pred, perm):
    perm = np.array(perm)
    before = evaluate_all(Y_true, Y_pred)
    after = evaluate_all(Y_true[perm], Y_pred[perm])
    for name in MEASURE_NAMES:
        assert before[name] == pytest.approx(after[name])


@settings(max_examples=30, deadline=None)
@given(
    arrays(np.int8, (5, 3), elements=st.integers(0, 1)),
    arrays(np.int8, (5, 3), elements=st.integers(0, 1)),
)
def test_subset_one_iff_hamming_zero(Y_true, Y_pred):
    subset = subset_accuracy(Y_true, Y_pred)
    hamming = hamming_loss(Y_true, Y_pred)
    assert (subset == 1.0) == (hamming == 0.0)
    assert 0.0 <= subset <= 1.0 and 0.0 <= hamming <= 1.0


def test_single_label_macro_equals_micro():
    rng = np.random.default_rng(1)
    Y_true = (rng.random((20, 1)) < 0.5).astype(int)
    Y_pred = (rng.random((20, 1)) < 0.5).astype(int)
    report = micro_macro_prf(Y_true, Y_pred)
    assert report["precision_macro"] == pytest.approx(report["precision_micro"])
    assert report["recall_macro"] == pytest.approx(report["recall_micro"])
    assert report["f1_macro"] == pytest.approx(report["f1_micro"])


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        subset_accuracy(np.zeros((2, 3)), np.zeros((3, 2)))
