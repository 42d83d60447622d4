"""Experiment configuration and the train/predict/evaluate/grid drivers.

A config is one JSON document naming the datasets, the context method, the
score sources, and the head. Head/source compatibility is enforced up
front: tf-idf only feeds the multinomial NB baseline, sentence embeddings
only feed logistic regression, and the numeric score columns feed Gaussian
NB or the calibrated regression. All randomness flows from the single
config seed, and identical config + seed produces byte-identical
machine-readable outputs.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import Dataset, Label, load_dataset
from .errors import (
    ConfigInvalidError,
    IncompatibleHeadSourceError,
    PlausifillError,
)
from .evaluation import EvaluationReport, build_report, render_report_json, render_reports_table
from .models import (
    CalibratedRegressionClassifier,
    GaussianNBClassifier,
    LogisticRegressionClassifier,
    MultinomialNBClassifier,
    SavedModel,
    load_model,
    save_model,
)
from .preprocess import ContextMethod, fill_placeholder, render_context
from .scores import (
    MlmLogitSource,
    MlmSoftmaxSource,
    NgramSource,
    NgramTransform,
    RtdSource,
    SentenceEmbeddingSource,
    SimilaritySource,
    SimilarityVariant,
    TfidfVectorizer,
    assemble_score_matrix,
    load_contextual_embeddings,
    load_embedding_table,
    load_ngram_table,
    load_rtd_file,
    load_scores_file,
)

OUTPUT_ROOT_ENV = "PLAUSIFILL_OUTPUT_ROOT"

_SCALAR_SOURCE_TYPES = {"mlm_logit", "mlm_softmax", "similarity", "ngram", "rtd"}
_SOURCE_TYPES = _SCALAR_SOURCE_TYPES | {"sentence_embedding", "tfidf"}
_HEAD_TYPES = {"gaussian_nb", "multinomial_nb", "logistic", "linear_regression"}


@dataclass
class SourceSpec:
    type: str
    path: str | None = None
    embeddings_path: str | None = None
    contextual_path: str | None = None
    variant: str | None = None
    transform: str = "log1p"
    renormalize: bool = True

    @classmethod
    def from_dict(cls, obj: dict) -> "SourceSpec":
        unknown = set(obj) - {
            "type", "path", "embeddings_path", "contextual_path",
            "variant", "transform", "renormalize",
        }
        if unknown:
            raise ConfigInvalidError(f"unknown source fields {sorted(unknown)}")
        return cls(**obj)


@dataclass
class ExperimentConfig:
    name: str
    train_dataset: str
    dev_dataset: str
    context_method: str = "full"
    sources: list[SourceSpec] = field(default_factory=list)
    head: str = "gaussian_nb"
    head_params: dict = field(default_factory=dict)
    zero_ngram_rule: bool = False
    calibration_split: str = "train"
    output_dir: str = "out"
    seed: int = 0

    @classmethod
    def from_dict(cls, obj: dict) -> "ExperimentConfig":
        obj = dict(obj)
        sources = [SourceSpec.from_dict(s) for s in obj.pop("sources", [])]
        head = obj.pop("head", "gaussian_nb")
        head_params = dict(obj.pop("head_params", {}))
        known = {
            "name", "train_dataset", "dev_dataset", "context_method",
            "zero_ngram_rule", "calibration_split", "output_dir", "seed",
        }
        unknown = set(obj) - known
        if unknown:
            raise ConfigInvalidError(f"unknown config fields {sorted(unknown)}")
        missing = {"name", "train_dataset", "dev_dataset"} - set(obj)
        if missing:
            raise ConfigInvalidError(f"missing required fields {sorted(missing)}")
        return cls(sources=sources, head=head, head_params=head_params, **obj)

    def resolve_output_dir(self) -> Path:
        out = Path(self.output_dir)
        root = os.environ.get(OUTPUT_ROOT_ENV)
        if root and not out.is_absolute():
            out = Path(root) / out
        return out


def load_config(path: str | Path) -> ExperimentConfig:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise ConfigInvalidError(f"{path}: {err}") from None
    return ExperimentConfig.from_dict(obj)


def validate_config(config: ExperimentConfig) -> None:
    """Check field values, file existence, and head/source compatibility."""
    if config.head not in _HEAD_TYPES:
        raise ConfigInvalidError(f"unknown head {config.head!r}")
    try:
        ContextMethod(config.context_method)
    except ValueError:
        raise ConfigInvalidError(f"unknown context method {config.context_method!r}") from None
    if config.calibration_split not in ("train", "dev"):
        raise ConfigInvalidError(f"calibration_split must be 'train' or 'dev'")
    if not config.sources:
        raise ConfigInvalidError("at least one score source is required")

    for ds in (config.train_dataset, config.dev_dataset):
        if not Path(ds).is_file():
            raise ConfigInvalidError(f"dataset file {ds!r} does not exist")
    for src in config.sources:
        if src.type not in _SOURCE_TYPES:
            raise ConfigInvalidError(f"unknown source type {src.type!r}")
        if src.type in ("mlm_logit", "mlm_softmax", "ngram", "rtd") and not src.path:
            raise ConfigInvalidError(f"source {src.type!r} needs a 'path'")
        if src.type == "similarity":
            if src.variant not in {v.value for v in SimilarityVariant}:
                raise ConfigInvalidError(f"similarity variant {src.variant!r} unknown")
            if not src.path or not src.embeddings_path:
                raise ConfigInvalidError("similarity sources need 'path' and 'embeddings_path'")
        if src.type == "sentence_embedding" and not src.embeddings_path:
            raise ConfigInvalidError("sentence_embedding sources need 'embeddings_path'")
        if src.type == "ngram" and src.transform not in {t.value for t in NgramTransform}:
            raise ConfigInvalidError(f"ngram transform {src.transform!r} unknown")
        for p in (src.path, src.embeddings_path, src.contextual_path):
            if p and not Path(p).is_file():
                raise ConfigInvalidError(f"source file {p!r} does not exist")

    types = [s.type for s in config.sources]
    if config.head == "multinomial_nb":
        if types != ["tfidf"]:
            raise IncompatibleHeadSourceError(config.head, "needs exactly one tfidf source")
    elif config.head == "logistic":
        if types != ["sentence_embedding"]:
            raise IncompatibleHeadSourceError(
                config.head, "needs exactly one sentence_embedding source"
            )
    else:
        bad = [t for t in types if t not in _SCALAR_SOURCE_TYPES]
        if bad:
            raise IncompatibleHeadSourceError(
                config.head, f"numeric-score head cannot take {bad} sources"
            )
    if config.zero_ngram_rule:
        if config.head != "linear_regression":
            raise IncompatibleHeadSourceError(
                config.head, "zero_ngram_rule applies to linear_regression only"
            )
        if "ngram" not in types:
            raise ConfigInvalidError("zero_ngram_rule needs an ngram source for raw counts")


class FeaturePipeline:
    """Loads the configured tables once and turns datasets into features."""

    def __init__(self, config: ExperimentConfig):
        validate_config(config)
        self.config = config
        self.method = ContextMethod(config.context_method)
        self.kind = (
            "tfidf" if config.head == "multinomial_nb"
            else "embedding" if config.head == "logistic"
            else "scores"
        )
        self.vectorizer: TfidfVectorizer | None = None
        self._sources = None
        self._ngram_source = None

    # -- source construction ------------------------------------------------

    def _build_sources(self) -> list:
        if self._sources is not None:
            return self._sources
        sources = []
        file_cache: dict[str, object] = {}

        def cached(path, loader):
            if path not in file_cache:
                file_cache[path] = loader(path)
            return file_cache[path]

        for spec in self.config.sources:
            if spec.type == "mlm_logit":
                sources.append(MlmLogitSource(cached(spec.path, load_scores_file)))
            elif spec.type == "mlm_softmax":
                sources.append(MlmSoftmaxSource(cached(spec.path, load_scores_file)))
            elif spec.type == "similarity":
                sources.append(
                    SimilaritySource(
                        cached(spec.path, load_scores_file),
                        cached(spec.embeddings_path, load_embedding_table),
                        SimilarityVariant(spec.variant),
                        self.method,
                        renormalize=spec.renormalize,
                    )
                )
            elif spec.type == "ngram":
                source = NgramSource(
                    cached(spec.path, load_ngram_table), NgramTransform(spec.transform)
                )
                if self._ngram_source is None:
                    self._ngram_source = source
                sources.append(source)
            elif spec.type == "rtd":
                sources.append(RtdSource(cached(spec.path, load_rtd_file)))
            elif spec.type == "sentence_embedding":
                contextual = (
                    load_contextual_embeddings(spec.contextual_path)
                    if spec.contextual_path
                    else None
                )
                sources.append(
                    SentenceEmbeddingSource(
                        cached(spec.embeddings_path, load_embedding_table),
                        self.method,
                        contextual=contextual,
                    )
                )
        self._sources = sources
        return sources

    # -- features ------------------------------------------------------------

    def documents(self, dataset: Dataset) -> list[str]:
        docs = []
        for instance, candidate in dataset.pairs():
            docs.append(fill_placeholder(render_context(instance, self.method), candidate.text))
        return docs

    def features(self, dataset: Dataset, fit_vectorizer: bool = False):
        """Features plus column names for one dataset.

        For the tf-idf baseline the vectorizer is fitted on the first
        (training) call and reused afterwards.
        """
        if self.kind == "tfidf":
            docs = self.documents(dataset)
            if fit_vectorizer or self.vectorizer is None:
                self.vectorizer = TfidfVectorizer().fit(docs)
            X = self.vectorizer.transform(docs)
            columns = sorted(self.vectorizer.vocabulary_, key=self.vectorizer.vocabulary_.get)
            return X, tuple(columns)
        matrix = assemble_score_matrix(dataset, self._build_sources())
        return matrix.values, matrix.column_names

    def ngram_counts(self, dataset: Dataset) -> np.ndarray | None:
        """Raw slot-gram counts for the zero-frequency rule, if configured."""
        if not self.config.zero_ngram_rule:
            return None
        self._build_sources()
        counts = [
            self._ngram_source.count(instance, candidate)
            for instance, candidate in dataset.pairs()
        ]
        return np.asarray(counts, dtype=np.int64)


def _make_head(config: ExperimentConfig):
    params = dict(config.head_params)
    if config.head == "gaussian_nb":
        return GaussianNBClassifier(**params)
    if config.head == "multinomial_nb":
        return MultinomialNBClassifier(**params)
    if config.head == "logistic":
        params.setdefault("seed", config.seed)
        return LogisticRegressionClassifier(**params)
    params.setdefault("zero_ngram_rule", config.zero_ngram_rule)
    return CalibratedRegressionClassifier(**params)


def train(config: ExperimentConfig, out_dir: Path | None = None) -> Path:
    """Fit the configured head on the training dataset; write model.json."""
    pipeline = FeaturePipeline(config)
    dataset = load_dataset(config.train_dataset, labeled=True)
    X, columns = pipeline.features(dataset, fit_vectorizer=True)
    y = dataset.gold_labels()
    head = _make_head(config)
    head.fit(X, y)
    if config.head == "linear_regression" and config.calibration_split == "dev":
        dev = load_dataset(config.dev_dataset, labeled=True)
        X_dev, _ = pipeline.features(dev)
        head.recalibrate(X_dev, dev.gold_labels())
    out_dir = out_dir if out_dir is not None else config.resolve_output_dir()
    out_dir.mkdir(parents=True, exist_ok=True)
    model_path = out_dir / "model.json"
    save_model(model_path, head, columns, vectorizer=pipeline.vectorizer)
    return model_path


def predict(
    config: ExperimentConfig,
    model_path: str | Path,
    dataset_path: str | Path | None = None,
    out_dir: Path | None = None,
) -> Path:
    """Apply a persisted model to a dataset; write predictions.tsv."""
    saved = load_model(model_path)
    pipeline = FeaturePipeline(config)
    if saved.vectorizer is not None:
        pipeline.vectorizer = saved.vectorizer
    dataset = load_dataset(dataset_path or config.dev_dataset, labeled=False)
    X, columns = pipeline.features(dataset)
    saved.check_columns(columns)
    if saved.head_type == "linear_regression":
        labels = saved.head.predict(X, ngram_counts=pipeline.ngram_counts(dataset))
    else:
        labels = saved.head.predict(X)
    out_dir = out_dir if out_dir is not None else config.resolve_output_dir()
    out_dir.mkdir(parents=True, exist_ok=True)
    pred_path = out_dir / "predictions.tsv"
    lines = ["instance_id\tcandidate_id\tlabel"]
    for (instance, candidate), label in zip(dataset.pairs(), labels):
        lines.append(f"{instance.id}\t{candidate.candidate_id}\t{Label(int(label)).name}")
    pred_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return pred_path


def load_predictions(path: str | Path) -> dict[tuple[str, int], Label]:
    """Parse a predictions TSV into a (instance, candidate) -> label map."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].split("\t") != ["instance_id", "candidate_id", "label"]:
        raise PlausifillError(f"{path}: not a predictions file")
    out: dict[tuple[str, int], Label] = {}
    for line in lines[1:]:
        if not line:
            continue
        instance_id, candidate_id, label = line.split("\t")
        out[(instance_id, int(candidate_id))] = Label[label]
    return out


def evaluate(
    dataset_path: str | Path,
    predictions_path: str | Path,
    out_dir: Path,
    name: str = "model",
) -> EvaluationReport:
    """Score a predictions file against a gold dataset; write report files."""
    dataset = load_dataset(dataset_path, labeled=True)
    predictions = load_predictions(predictions_path)
    pred, gold = [], []
    for instance, candidate in dataset.pairs():
        key = (instance.id, candidate.candidate_id)
        if key not in predictions:
            raise PlausifillError(f"predictions missing pair {key}")
        pred.append(predictions[key])
        gold.append(candidate.gold_label)
    report = build_report(pred, gold, gold_scores=dataset.gold_scores())
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.txt").write_text(
        render_reports_table([(name, report)]), encoding="utf-8"
    )
    (out_dir / "report.json").write_text(render_report_json([(name, report)]), encoding="utf-8")
    return report


def run_experiment(config: ExperimentConfig, out_dir: Path | None = None) -> EvaluationReport:
    """train -> predict on dev -> evaluate, all inside one output directory."""
    out_dir = out_dir if out_dir is not None else config.resolve_output_dir()
    model_path = train(config, out_dir=out_dir)
    pred_path = predict(config, model_path, config.dev_dataset, out_dir=out_dir)
    return evaluate(config.dev_dataset, pred_path, out_dir, name=config.name)


def run_grid(grid_path: str | Path, out_dir: Path | None = None) -> Path:
    """Run every experiment in a grid config; emit one combined table.

    Row order follows config order, entries write only inside their own
    subdirectory, and re-running the grid reproduces the outputs byte for
    byte.
    """
    try:
        obj = json.loads(Path(grid_path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise ConfigInvalidError(f"{grid_path}: {err}") from None
    if "experiments" not in obj or not isinstance(obj["experiments"], list):
        raise ConfigInvalidError("grid config needs an 'experiments' list")
    grid_seed = obj.get("seed", 0)
    root = Path(obj.get("output_dir", "grid-out")) if out_dir is None else out_dir
    if out_dir is None:
        env_root = os.environ.get(OUTPUT_ROOT_ENV)
        if env_root and not root.is_absolute():
            root = Path(env_root) / root

    configs = []
    for entry in obj["experiments"]:
        entry = dict(entry)
        entry.setdefault("seed", grid_seed)
        entry.setdefault("output_dir", "unused")
        config = ExperimentConfig.from_dict(entry)
        validate_config(config)
        configs.append(config)
    names = [c.name for c in configs]
    if len(set(names)) != len(names):
        raise ConfigInvalidError("experiment names in a grid must be unique")

    rows = []
    for config in configs:
        report = run_experiment(config, out_dir=root / config.name)
        rows.append((config.name, report))

    (root / "grid_report.txt").write_text(render_reports_table(rows), encoding="utf-8")
    (root / "grid_report.json").write_text(render_report_json(rows), encoding="utf-8")
    return root
