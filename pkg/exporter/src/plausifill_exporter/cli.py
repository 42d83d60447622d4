"""CLI: export-mlm, export-embeddings, export-rtd."""

from __future__ import annotations

import sys

import click

from plausifill.errors import PlausifillError
from plausifill.preprocess import ContextMethod

from .backends import ExporterError
from .exports import ExportJob, export_embeddings, export_mlm, export_rtd


@click.group()
def main():
    """Produce the precomputed score files plausifill consumes."""


def _job(dataset, model, context_method, top_k, out) -> ExportJob:
    try:
        method = ContextMethod(context_method)
    except ValueError:
        raise ExporterError(f"unknown context method {context_method!r}") from None
    return ExportJob(
        dataset_path=dataset,
        model_id=model,
        output_path=out,
        context_method=method,
        top_k=top_k,
    )


def _common(fn):
    fn = click.option("--dataset", "-d", required=True, type=click.Path(exists=True))(fn)
    fn = click.option("--model", "-m", required=True, help="Model id ('stub-*' for fakes).")(fn)
    fn = click.option("--context-method", default="full", show_default=True)(fn)
    fn = click.option("--top-k", "-k", default=50, show_default=True, type=int)(fn)
    fn = click.option("--out", "-o", required=True, type=click.Path())(fn)
    return fn


def _run(action):
    try:
        return action()
    except (ExporterError, PlausifillError) as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(1)


@main.command("export-mlm")
@_common
def export_mlm_cmd(dataset, model, context_method, top_k, out):
    """Top-K logits, exact log partition, per-candidate logits (JSONL)."""
    def action():
        job = _job(dataset, model, context_method, top_k, out)
        path, sidecar = export_mlm(job)
        click.echo(f"wrote {path}")
        click.echo(f"wrote {sidecar}")
    _run(action)


@main.command("export-embeddings")
@_common
def export_embeddings_cmd(dataset, model, context_method, top_k, out):
    """Contextual sentence embeddings per (instance, candidate) (JSONL)."""
    def action():
        job = _job(dataset, model, context_method, top_k, out)
        click.echo(f"wrote {export_embeddings(job)}")
    _run(action)


@main.command("export-rtd")
@_common
def export_rtd_cmd(dataset, model, context_method, top_k, out):
    """Replaced-token probabilities per (instance, candidate) (TSV)."""
    def action():
        job = _job(dataset, model, context_method, top_k, out)
        click.echo(f"wrote {export_rtd(job)}")
    _run(action)


if __name__ == "__main__":
    main()
