"""Command-line driver: train, predict, evaluate, grid, validate-config,
make-toy-data."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import experiment
from .errors import PlausifillError
from .toydata import generate_toy_files


@click.group()
def main():
    """Cloze filler plausibility experiments."""


def _load_validated(config_path: str) -> experiment.ExperimentConfig:
    config = experiment.load_config(config_path)
    experiment.validate_config(config)
    return config


def _fail(err: Exception):
    click.echo(f"error: {err}", err=True)
    sys.exit(1)


@main.command()
@click.option("--config", "-c", "config_path", required=True, type=click.Path(exists=True))
@click.option("--output-dir", "-o", default=None, type=click.Path(), help="Override config output_dir.")
@click.option("--seed", default=None, type=int, help="Override config seed.")
def train(config_path, output_dir, seed):
    """Fit the configured head on the training set and persist it."""
    try:
        config = _load_validated(config_path)
        if output_dir is not None:
            config.output_dir = output_dir
        if seed is not None:
            config.seed = seed
        model_path = experiment.train(config)
    except PlausifillError as err:
        _fail(err)
    click.echo(f"wrote {model_path}")


@main.command()
@click.option("--config", "-c", "config_path", required=True, type=click.Path(exists=True))
@click.option("--model", "-m", "model_path", required=True, type=click.Path(exists=True))
@click.option("--dataset", "-d", "dataset_path", default=None, type=click.Path(exists=True),
              help="Dataset to predict on (defaults to the config dev set).")
@click.option("--output-dir", "-o", default=None, type=click.Path())
def predict(config_path, model_path, dataset_path, output_dir):
    """Predict labels for every (instance, candidate) pair."""
    try:
        config = _load_validated(config_path)
        if output_dir is not None:
            config.output_dir = output_dir
        pred_path = experiment.predict(config, model_path, dataset_path)
    except PlausifillError as err:
        _fail(err)
    click.echo(f"wrote {pred_path}")


@main.command()
@click.option("--dataset", "-d", "dataset_path", required=True, type=click.Path(exists=True))
@click.option("--predictions", "-p", "predictions_path", required=True, type=click.Path(exists=True))
@click.option("--output-dir", "-o", "output_dir", required=True, type=click.Path())
@click.option("--name", default="model", help="Row label in the rendered table.")
def evaluate(dataset_path, predictions_path, output_dir, name):
    """Score a predictions file against gold labels."""
    try:
        report = experiment.evaluate(dataset_path, predictions_path, Path(output_dir), name=name)
    except PlausifillError as err:
        _fail(err)
    rho = "-" if report.spearman is None else f"{report.spearman:.3f}"
    click.echo(f"accuracy {report.accuracy:.2f}  spearman {rho}")


@main.command()
@click.option("--config", "-c", "grid_path", required=True, type=click.Path(exists=True))
@click.option("--output-dir", "-o", default=None, type=click.Path())
def grid(grid_path, output_dir):
    """Run every experiment in a grid config and emit one comparison table."""
    try:
        root = experiment.run_grid(grid_path, Path(output_dir) if output_dir else None)
    except PlausifillError as err:
        _fail(err)
    click.echo((root / "grid_report.txt").read_text(), nl=False)
    click.echo(f"wrote {root / 'grid_report.json'}")


@main.command("validate-config")
@click.option("--config", "-c", "config_path", required=True, type=click.Path(exists=True))
def validate_config(config_path):
    """Check an experiment config without running anything."""
    try:
        _load_validated(config_path)
    except PlausifillError as err:
        _fail(err)
    click.echo("config ok")


@main.command("make-toy-data")
@click.option("--output-dir", "-o", required=True, type=click.Path())
@click.option("--seed", default=0, type=int, show_default=True)
def make_toy_data(output_dir, seed):
    """Emit the bundled synthetic dataset and score files."""
    paths = generate_toy_files(output_dir, seed=seed)
    for path in paths.values():
        click.echo(f"wrote {path}")


if __name__ == "__main__":
    main()
