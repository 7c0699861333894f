"""Multi-output regressors mapping input features to sample embeddings.

Ridge is solved in closed form via a Cholesky factorization of the normal
equations on centered data (intercept unpenalized).  The random forest is
backed by scikit-learn's multi-output CART forest; splits minimize summed
per-output variance, leaves store d-dimensional target means.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from sklearn.ensemble import RandomForestRegressor


@dataclass(frozen=True)
class RidgeModel:
    coef: np.ndarray  # m x d
    intercept: np.ndarray  # d
    regularization: float


@dataclass(frozen=True)
class ForestConfig:
    trees_count: int = 100
    max_depth: int | None = None
    min_samples_leaf: int = 1
    features_per_split: int | None = None  # default ceil(m / 3)
    bootstrap: bool = True
    seed: int = 0


@dataclass(frozen=True)
class ForestModel:
    estimator: RandomForestRegressor = field(repr=False)
    config: ForestConfig
    n_features: int
    n_outputs: int

    @property
    def trees(self):
        return self.estimator.estimators_


def fit_ridge(X: np.ndarray, E: np.ndarray, lam: float) -> RidgeModel:
    """Minimize ||XW + b - E||^2 + lam ||W||^2 with unpenalized intercept."""
    X = np.asarray(X, dtype=np.float64)
    E = np.asarray(E, dtype=np.float64)
    if lam < 0:
        raise ValueError("regularization strength must be >= 0")
    if X.shape[0] != E.shape[0]:
        raise ValueError("X and E row counts differ")
    mu_x = X.mean(axis=0)
    mu_e = E.mean(axis=0)
    Xc = X - mu_x
    gram = Xc.T @ Xc + lam * np.eye(X.shape[1])
    try:
        factor = scipy.linalg.cho_factor(gram)
    except scipy.linalg.LinAlgError as exc:
        raise ValueError(
            "singular normal equations; centered X lacks full column rank at lam=0"
        ) from exc
    W = scipy.linalg.cho_solve(factor, Xc.T @ (E - mu_e))
    b = mu_e - mu_x @ W
    return RidgeModel(W, b, lam)


def fit_forest(X: np.ndarray, E: np.ndarray, config: ForestConfig | None = None) -> ForestModel:
    """Fit a multi-output CART forest on bootstrap samples."""
    config = config or ForestConfig()
    X = np.asarray(X, dtype=np.float64)
    E = np.asarray(E, dtype=np.float64)
    if X.shape[0] < config.min_samples_leaf:
        raise ValueError("fewer samples than min_samples_leaf")
    max_features = config.features_per_split or math.ceil(X.shape[1] / 3)
    est = RandomForestRegressor(
        n_estimators=config.trees_count,
        max_depth=config.max_depth,
        min_samples_leaf=config.min_samples_leaf,
        max_features=max_features,
        bootstrap=config.bootstrap,
        random_state=config.seed,
        n_jobs=1,
    )
    est.fit(X, E)
    return ForestModel(est, config, X.shape[1], E.shape[1])


def predict(model: RidgeModel | ForestModel, X: np.ndarray) -> np.ndarray:
    """Predict an n x d embedding matrix for new inputs."""
    X = np.asarray(X, dtype=np.float64)
    if isinstance(model, RidgeModel):
        if X.shape[1] != model.coef.shape[0]:
            raise ValueError("feature count mismatch")
        return X @ model.coef + model.intercept
    if isinstance(model, ForestModel):
        if X.shape[1] != model.n_features:
            raise ValueError("feature count mismatch")
        if X.shape[0] == 0:
            return np.zeros((0, model.n_outputs))
        out = model.estimator.predict(X)
        return out.reshape(X.shape[0], model.n_outputs)
    raise TypeError(f"unknown model type {type(model).__name__}")


def out_of_bag_mse(model: ForestModel, X: np.ndarray, E: np.ndarray) -> float:
    """MSE of per-sample predictions averaged over trees that did not see
    the sample in their bootstrap draw."""
    X = np.asarray(X, dtype=np.float64)
    E = np.asarray(E, dtype=np.float64)
    n = X.shape[0]
    pred_sum = np.zeros((n, model.n_outputs))
    counts = np.zeros(n)
    for tree, sampled in zip(model.trees, model.estimator.estimators_samples_):
        in_bag = np.zeros(n, dtype=bool)
        in_bag[sampled] = True
        oob = ~in_bag
        if not oob.any():
            continue
        pred_sum[oob] += tree.predict(X[oob]).reshape(oob.sum(), model.n_outputs)
        counts[oob] += 1
    covered = counts > 0
    if not covered.any():
        raise ValueError("no out-of-bag samples; was the forest fit without bootstrap?")
    resid = pred_sum[covered] / counts[covered, None] - E[covered]
    return float((resid ** 2).mean())
