"""Command-line workflow: train, evaluate, sweep.

Exit codes: 0 success, 2 usage, 3 I/O error, 4 ARFF parse error,
5 configuration error, 6 bundle/test schema mismatch.
"""

from __future__ import annotations

import dataclasses
import itertools
import json
import sys
import time
from pathlib import Path

import click
import numpy as np

from . import __version__, mlknn, pipeline
from .dataset import ArffError, iterative_stratification, parse_arff, split
from .metrics import evaluate_all
from .persist import load_model, save_model
from .pipeline import ConfigurationError, LnemlcConfig

EXIT_IO = 3
EXIT_PARSE = 4
EXIT_CONFIG = 5
EXIT_SCHEMA = 6

ORDER_ALIASES = {"1": "first", "2": "second", "1+2": "concat"}
AGG_ALIASES = {"sum": "sum", "mean": "mean", "prod": "product"}


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        _fail(EXIT_IO, f"cannot read {path}: {exc}")


def _load_dataset(path: str, labels: int, labels_at_start: bool):
    text = _read_text(path)
    try:
        return parse_arff(text, labels, labels_at_end=not labels_at_start)
    except ArffError as exc:
        _fail(EXIT_PARSE, f"{path}: {exc}")


def _build_config(config_path: str | None, overrides: dict) -> LnemlcConfig:
    data: dict = {}
    if config_path and config_path != "default":
        try:
            data = json.loads(_read_text(config_path))
        except json.JSONDecodeError as exc:
            _fail(EXIT_CONFIG, f"config file {config_path} is not valid JSON: {exc}")
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return LnemlcConfig.from_dict(data)
    except (ConfigurationError, TypeError, ValueError) as exc:
        _fail(EXIT_CONFIG, str(exc))


def _write(path: Path, content: str):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot write {path}: {exc}")


def _run_manifest(command: str, out: Path, started: float, **extra) -> dict:
    return {
        "command": command,
        "tool_version": __version__,
        "wall_clock_seconds": round(time.perf_counter() - started, 6),
        "output_directory": str(out),
        **extra,
    }


common_data_options = [
    click.option("--data", required=True, help="training ARFF file"),
    click.option("--labels", required=True, type=int, help="number of label attributes"),
    click.option("--labels-at-start", is_flag=True, help="labels are the first attributes"),
]


def _apply(options):
    def deco(f):
        for opt in reversed(options):
            f = opt(f)
        return f

    return deco


def _override_options(f):
    f = click.option("--config", "config_path", default=None, help="JSON config file or 'default'")(f)
    f = click.option("--seed", type=int, default=None)(f)
    f = click.option("--dim", type=int, default=None, help="embedding dimension (power of two, 0 = baseline)")(f)
    f = click.option("--embedder", type=click.Choice(["line", "node2vec"]), default=None)(f)
    f = click.option("--order", type=click.Choice(["1", "2", "1+2"]), default=None)(f)
    f = click.option("--agg", type=click.Choice(["sum", "mean", "prod"]), default=None)(f)
    f = click.option("--weighted", is_flag=True, default=False)(f)
    f = click.option("--regressor", type=click.Choice(["ridge", "forest", "none"]), default=None)(f)
    f = click.option("--sample-budget", type=int, default=None, help="LINE SGD edge-sample budget")(f)
    f = click.option("--trees", type=int, default=None, help="forest size")(f)
    return f


def _overrides(seed, dim, embedder, order, agg, weighted, regressor, sample_budget, trees) -> dict:
    return {
        "seed": seed,
        "dimension": dim,
        "embedder": embedder,
        "line_order": ORDER_ALIASES.get(order) if order else None,
        "aggregation": AGG_ALIASES.get(agg) if agg else None,
        "network_variant": "weighted" if weighted else None,
        "regressor": regressor,
        "sample_budget": sample_budget,
        "trees_count": trees,
    }


@click.group()
@click.version_option(__version__)
def main():
    """Label network embeddings for multi-label classification."""


@main.command("train")
@_apply(common_data_options)
@_override_options
@click.option("--out", required=True, help="output bundle directory")
def cmd_train(data, labels, labels_at_start, config_path, out, **flag_overrides):
    """Train a model and persist it as a bundle directory."""
    started = time.perf_counter()
    config = _build_config(config_path, _overrides(**flag_overrides))
    train_set = _load_dataset(data, labels, labels_at_start)
    try:
        model = pipeline.train(train_set, config)
    except (ConfigurationError, ValueError) as exc:
        _fail(EXIT_CONFIG, str(exc))
    out_path = Path(out)
    save_model(model, out_path)
    manifest = _run_manifest(
        "train", out_path, started,
        config_path=config_path, seed=config.seed, dataset_paths=[data],
    )
    _write(out_path / "run_manifest.json", json.dumps(manifest, indent=2))
    click.echo(f"trained model (d={model.dimension}) written to {out_path}")


@main.command("evaluate")
@click.option("--model", "model_path", required=True, help="bundle directory from `train`")
@click.option("--test", required=True, help="test ARFF file")
@click.option("--labels", required=True, type=int)
@click.option("--labels-at-start", is_flag=True)
@click.option("--mode", type=click.Choice(["exact", "regressed", "both"]), default="regressed")
@click.option("--baseline", is_flag=True, help="include the no-embedding control row")
@click.option("--out", required=True, help="report directory")
def cmd_evaluate(model_path, test, labels, labels_at_start, mode, baseline, out):
    """Evaluate a trained bundle on a test set and write CSV + JSON reports."""
    started = time.perf_counter()
    try:
        model = load_model(model_path)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot load bundle {model_path}: {exc}")
    except (ValueError, KeyError) as exc:
        _fail(EXIT_CONFIG, f"invalid bundle {model_path}: {exc}")
    test_set = _load_dataset(test, labels, labels_at_start)

    if test_set.label_names != model.label_names:
        _fail(EXIT_SCHEMA, "test label schema does not match the model bundle")
    if test_set.n_features != len(model.feature_names):
        _fail(EXIT_SCHEMA, "test feature schema does not match the model bundle")

    modes = ("exact", "regressed") if mode == "both" else (mode,)
    rows = []
    for m in modes:
        if m == "regressed" and model.dimension > 0 and model.phi is None:
            _fail(EXIT_CONFIG, "bundle has no regressor; use --mode exact")
        t0 = time.perf_counter()
        if m == "regressed":
            Y_pred = pipeline.predict(model, test_set.features)
        else:
            Y_pred = pipeline.predict_exact(model, test_set.features, test_set.labels)
        row = {"mode": m, "seed": model.config.seed, "dimension": model.dimension,
               "predict_seconds": round(time.perf_counter() - t0, 6)}
        row.update(evaluate_all(test_set.labels, Y_pred))
        rows.append(row)

    if baseline:
        m_feat = len(model.feature_names)
        base_theta = mlknn.fit(
            model.theta.store[:, :m_feat], model.theta.labels,
            k=model.theta.k, s=model.theta.smoothing,
        )
        assignments, _ = mlknn.predict(base_theta, model.scaler_x.apply(test_set.features))
        row = {"mode": "baseline", "seed": model.config.seed, "dimension": 0}
        row.update(evaluate_all(test_set.labels, assignments))
        rows.append(row)

    out_path = Path(out)
    _write(out_path / "report.csv", pipeline.report_to_csv(rows))
    _write(out_path / "report.json", pipeline.report_to_json(rows))
    manifest = _run_manifest(
        "evaluate", out_path, started,
        seed=model.config.seed, dataset_paths=[test], model_path=model_path,
    )
    _write(out_path / "run_manifest.json", json.dumps(manifest, indent=2))
    for row in rows:
        click.echo(f"{row['mode']}: subset_accuracy={row['subset_accuracy']:.4f}")


GRID_KEYS = {
    "network_variant", "embedder", "dimension", "line_order", "aggregation",
    "regressor", "sample_budget", "trees_count",
}


@main.command("sweep")
@_apply(common_data_options)
@click.option("--grid", "grid_path", required=True, help="JSON grid: config key -> list of values")
@click.option("--config", "config_path", default=None, help="base JSON config")
@click.option("--folds", type=int, default=5)
@click.option("--seed", type=int, default=0)
@click.option("--mode", type=click.Choice(["exact", "regressed", "both"]), default="regressed")
@click.option("--out", required=True, help="report directory")
def cmd_sweep(data, labels, labels_at_start, grid_path, config_path, folds, seed, mode, out):
    """Cross-validated grid sweep; one long-format CSV row per
    (combination, fold, mode, measure)."""
    started = time.perf_counter()
    dataset = _load_dataset(data, labels, labels_at_start)

    try:
        grid = json.loads(_read_text(grid_path))
    except json.JSONDecodeError as exc:
        _fail(EXIT_CONFIG, f"grid file {grid_path} is not valid JSON: {exc}")
    unknown = set(grid) - GRID_KEYS
    if unknown:
        _fail(EXIT_CONFIG, f"unsupported grid keys: {sorted(unknown)}")
    base = dataclasses.asdict(_build_config(config_path, {"seed": seed}))

    keys = sorted(grid)
    combos = [dict(zip(keys, values)) for values in itertools.product(*(grid[k] for k in keys))]
    if folds < 2 or folds > dataset.n_samples:
        _fail(EXIT_CONFIG, f"infeasible fold count {folds} for {dataset.n_samples} samples")

    assignment = iterative_stratification(dataset.labels, folds, seed)
    modes = ("exact", "regressed") if mode == "both" else (mode,)

    rows = []
    for combo_id, combo in enumerate(combos):
        try:
            config = LnemlcConfig.from_dict({**base, **combo})
        except ConfigurationError as exc:
            _fail(EXIT_CONFIG, f"grid combination {combo}: {exc}")
        for fold in range(folds):
            train_set, test_set = split(dataset, assignment, fold)
            model = pipeline.train(train_set, config)
            for m in modes:
                if m == "regressed" and config.regressor == "none":
                    continue
                if m == "regressed":
                    Y_pred = pipeline.predict(model, test_set.features)
                else:
                    Y_pred = pipeline.predict_exact(model, test_set.features, test_set.labels)
                for measure, value in evaluate_all(test_set.labels, Y_pred).items():
                    row = {"combination": combo_id, "fold": fold, "mode": m,
                           "measure": measure, "value": value, "seed": seed}
                    row.update({f"config.{k}": v for k, v in combo.items()})
                    rows.append(row)

    out_path = Path(out)
    _write(out_path / "sweep.csv", pipeline.report_to_csv(rows))
    _write(out_path / "sweep.json", pipeline.report_to_json(rows))
    manifest = _run_manifest(
        "sweep", out_path, started,
        seed=seed, dataset_paths=[data], grid_path=grid_path,
        combinations=len(combos), folds=folds,
    )
    _write(out_path / "run_manifest.json", json.dumps(manifest, indent=2))
    click.echo(f"swept {len(combos)} combinations x {folds} folds -> {out_path}")


if __name__ == "__main__":
    main()
