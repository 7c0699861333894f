import numpy as np
import pytest

from lnemlc.sampling import build_alias


def test_symmetric_weights():
    table = build_alias([1, 1])
    assert table.draw(0.0, 0.0) == 0
    assert table.draw(0.5, 0.0) == 1
    draws = table.sample(np.random.default_rng(0), 10000)
    assert abs((draws == 0).mean() - 0.5) < 0.02


def test_three_to_one_monte_carlo():
    # exact probability 0.75; 3 sigma over 1e6 draws is ~0.0013
    table = build_alias([3, 1])
    draws = table.sample(np.random.default_rng(123), 1_000_000)
    freq = (draws == 0).mean()
    assert 0.747 <= freq <= 0.753


def test_degenerate_weight():
    table = build_alias([0, 5])
    draws = table.sample(np.random.default_rng(7), 1000)
    assert (draws == 1).all()


def test_all_zero_rejected():
    with pytest.raises(ValueError):
        build_alias([0.0, 0.0])
    with pytest.raises(ValueError):
        build_alias([])
    with pytest.raises(ValueError):
        build_alias([1.0, -0.5])


def test_distribution_matches_weights():
    rng = np.random.default_rng(11)
    weights = rng.random(17)
    table = build_alias(weights)
    draws = table.sample(np.random.default_rng(5), 400_000)
    freq = np.bincount(draws, minlength=17) / len(draws)
    target = weights / weights.sum()
    # 4 sigma per-outcome tolerance
    sigma = np.sqrt(target * (1 - target) / len(draws))
    assert (np.abs(freq - target) < 4 * sigma + 1e-9).all()


def test_draw_consistent_with_sample():
    table = build_alias([2, 5, 3])
    # draw() and sample() agree on the same uniforms
    rng = np.random.default_rng(42)
    idx = rng.integers(0, 3, 100)
    u2 = rng.random(100)
    manual = [table.draw((i + 0.5) / 3, u) for i, u in zip(idx, u2)]
    expected = [int(i if u < table.prob[i] else table.alias[i]) for i, u in zip(idx, u2)]
    assert manual == expected
