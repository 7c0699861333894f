import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lnemlc.aggregate import aggregate
from lnemlc.embedding import EmbeddingTable


def table(vectors):
    vectors = np.asarray(vectors, dtype=np.float64)
    return EmbeddingTable(vectors, vectors.shape[1], "first")


def test_singleton_row_is_identity():
    t = table([[1.0, 2.0], [3.0, -2.0]])
    Y = np.array([[0, 1]])
    for kind in ("sum", "mean", "product"):
        assert np.array_equal(aggregate(Y, t, kind), [[3.0, -2.0]])


def test_sum_arithmetic():
    t = table([[1.0, 2.0], [3.0, -2.0]])
    assert np.array_equal(aggregate(np.array([[1, 1]]), t, "sum"), [[4.0, 0.0]])


def test_product_arithmetic():
    t = table([[2.0, 3.0], [4.0, -1.0]])
    assert np.array_equal(aggregate(np.array([[1, 1]]), t, "product"), [[8.0, -3.0]])


@settings(max_examples=30, deadline=None)
@given(arrays(np.int8, (5, 4), elements=st.integers(0, 1)))
def test_mean_equals_sum_over_cardinality(Y):
    rng = np.random.default_rng(0)
    t = table(rng.normal(size=(4, 3)))
    s = aggregate(Y, t, "sum")
    m = aggregate(Y, t, "mean")
    card = Y.sum(axis=1)
    for i in range(5):
        if card[i] > 0:
            assert np.allclose(m[i], s[i] / card[i])
        else:
            assert np.array_equal(m[i], np.zeros(3))


def test_empty_label_set_maps_to_zero_for_all_kinds():
    t = table([[1.0, 1.0], [2.0, 2.0]])
    Y = np.zeros((1, 2), dtype=int)
    for kind in ("sum", "mean", "product"):
        assert np.array_equal(aggregate(Y, t, kind), [[0.0, 0.0]])


def test_identical_label_sets_identical_rows():
    rng = np.random.default_rng(1)
    t = table(rng.normal(size=(6, 4)))
    row = np.array([1, 0, 1, 1, 0, 0])
    Y = np.vstack([row, row, row])
    for kind in ("sum", "mean", "product"):
        E = aggregate(Y, t, kind)
        assert np.array_equal(E[0], E[1]) and np.array_equal(E[0], E[2])


def test_sum_linear_in_table_product_not():
    rng = np.random.default_rng(2)
    V = rng.normal(size=(3, 2))
    Y = np.array([[1, 1, 0], [1, 1, 1]])
    for kind in ("sum", "mean"):
        doubled = aggregate(Y, table(2 * V), kind)
        assert np.allclose(doubled, 2 * aggregate(Y, table(V), kind))
    prod_doubled = aggregate(Y, table(2 * V), "product")
    assert not np.allclose(prod_doubled, 2 * aggregate(Y, table(V), "product"))


def test_zero_vector_label_zeroes_product_row():
    V = np.array([[1.0, 2.0], [0.0, 0.0]])
    Y = np.array([[1, 1]])
    assert np.array_equal(aggregate(Y, table(V), "product"), [[0.0, 0.0]])
    assert np.array_equal(aggregate(Y, table(V), "sum"), [[1.0, 2.0]])


def test_dimension_mismatch_and_bad_kind():
    t = table([[1.0, 2.0], [3.0, 4.0]])
    with pytest.raises(ValueError):
        aggregate(np.array([[1, 0, 1]]), t, "sum")
    with pytest.raises(ValueError):
        aggregate(np.array([[1, 0]]), t, "median")
