"""Offline exporters for the plausifill score-file formats."""

from .backends import (
    EncodeFailure,
    ExporterError,
    resolve_discriminator,
    resolve_encoder,
    resolve_masked_lm,
)
from .exports import ExportJob, export_embeddings, export_mlm, export_rtd
from .stubs import StubDiscriminator, StubEncoder, StubMaskedLM

__all__ = [
    "EncodeFailure",
    "ExportJob",
    "ExporterError",
    "StubDiscriminator",
    "StubEncoder",
    "StubMaskedLM",
    "export_embeddings",
    "export_mlm",
    "export_rtd",
    "resolve_discriminator",
    "resolve_encoder",
    "resolve_masked_lm",
]
