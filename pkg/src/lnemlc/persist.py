"""Model bundle persistence: one directory per trained model.

Layout:
    config.json     LnemlcConfig fields
    manifest.json   run metadata (dimension, timings, names, versions)
    embedding.txt   label embedding table, word2vec text layout (if d > 0)
    scalers.npz     feature/embedding standardization parameters
    theta.npz       ML-kNN store, labels and probability tables
    ridge.npz       ridge coefficients (regressor="ridge")
    forest.joblib   pickled CART forest (regressor="forest")
"""

from __future__ import annotations

import json
from pathlib import Path

import joblib
import numpy as np

from . import __version__
from .embedding import table_from_text
from .mlknn import MlknnModel
from .pipeline import LnemlcConfig, Scaler, TrainedLnemlc
from .regress import ForestConfig, ForestModel, RidgeModel

BUNDLE_VERSION = 1


def save_model(model: TrainedLnemlc, path: str | Path) -> Path:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)

    (path / "config.json").write_text(model.config.to_json())
    manifest = {
        "bundle_version": BUNDLE_VERSION,
        "tool_version": __version__,
        "dimension": model.dimension,
        "label_names": model.label_names,
        "feature_names": model.feature_names,
        "metadata": model.metadata,
    }
    (path / "manifest.json").write_text(json.dumps(manifest, indent=2, default=str))

    if model.table is not None:
        (path / "embedding.txt").write_text(model.table.to_text(model.label_names))

    scalers = {"x_mean": model.scaler_x.mean, "x_std": model.scaler_x.std}
    if model.scaler_e is not None:
        scalers["e_mean"] = model.scaler_e.mean
        scalers["e_std"] = model.scaler_e.std
    np.savez(path / "scalers.npz", **scalers)

    theta = model.theta
    np.savez(
        path / "theta.npz",
        store=theta.store,
        labels=theta.labels,
        k=theta.k,
        smoothing=theta.smoothing,
        prior=theta.prior,
        cond_pos=theta.cond_pos,
        cond_neg=theta.cond_neg,
    )

    if isinstance(model.phi, RidgeModel):
        np.savez(
            path / "ridge.npz",
            coef=model.phi.coef,
            intercept=model.phi.intercept,
            regularization=model.phi.regularization,
        )
    elif isinstance(model.phi, ForestModel):
        joblib.dump(
            {"estimator": model.phi.estimator, "config": model.phi.config,
             "n_features": model.phi.n_features, "n_outputs": model.phi.n_outputs},
            path / "forest.joblib",
        )
    return path


def load_model(path: str | Path) -> TrainedLnemlc:
    path = Path(path)
    config = LnemlcConfig.from_dict(json.loads((path / "config.json").read_text()))
    manifest = json.loads((path / "manifest.json").read_text())
    if manifest.get("bundle_version") != BUNDLE_VERSION:
        raise ValueError(f"unsupported bundle version {manifest.get('bundle_version')}")

    table = None
    if (path / "embedding.txt").exists():
        order = config.line_order if config.embedder == "line" else "skipgram"
        table, _ = table_from_text((path / "embedding.txt").read_text(), order)

    with np.load(path / "scalers.npz") as sc:
        scaler_x = Scaler(sc["x_mean"], sc["x_std"])
        scaler_e = Scaler(sc["e_mean"], sc["e_std"]) if "e_mean" in sc else None

    with np.load(path / "theta.npz") as th:
        theta = MlknnModel(
            store=th["store"],
            labels=th["labels"],
            k=int(th["k"]),
            smoothing=float(th["smoothing"]),
            prior=th["prior"],
            cond_pos=th["cond_pos"],
            cond_neg=th["cond_neg"],
        )

    phi = None
    if (path / "ridge.npz").exists():
        with np.load(path / "ridge.npz") as rg:
            phi = RidgeModel(rg["coef"], rg["intercept"], float(rg["regularization"]))
    elif (path / "forest.joblib").exists():
        payload = joblib.load(path / "forest.joblib")
        phi = ForestModel(
            payload["estimator"], payload["config"],
            payload["n_features"], payload["n_outputs"],
        )

    return TrainedLnemlc(
        config=config,
        dimension=manifest["dimension"],
        label_names=manifest["label_names"],
        feature_names=manifest["feature_names"],
        table=table,
        scaler_x=scaler_x,
        scaler_e=scaler_e,
        phi=phi,
        theta=theta,
        metadata=manifest.get("metadata", {}),
    )
