"""Configuration and wiring: one place that loads the immutable stores
and hands out a ready-to-use engine for the CLI, service, and tests.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .embedding import EmbeddingStore, load_stopwords, load_vectors
from .ontology import Ontology, load_ontology
from .recognizer import (
    ExternalParserClient, Recognizer, RecognizerConfig, TrainingLog,
)
from .session import BUILTIN_TEMPLATES, TemplateSpec
from .suggest import ExternalGenerator, RetrievalStub

ENV_PREFIX = "SKATE_"


def _data_path(name: str) -> Path:
    return Path(resources.files("skate").joinpath("data", name))


@dataclass
class SkateConfig:
    ontology_path: str | None = None
    vectors_path: str | None = None
    stopwords_path: str | None = None
    corpus_path: str | None = None
    correction_log: str | None = None
    k: int = 3
    tau: float = 0.35
    role_similarity_floor: float = 0.15
    external_parser: str | None = None
    external_generator: str | None = None
    extra: dict = field(default_factory=dict)

    @staticmethod
    def load(path: str | os.PathLike | None = None,
             env: dict | None = None) -> "SkateConfig":
        """Config file plus SKATE_-prefixed environment overrides."""
        data: dict = {}
        if path is not None:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        env = dict(os.environ if env is None else env)
        mapping = {
            "ONTOLOGY": "ontology_path",
            "VECTORS": "vectors_path",
            "STOPWORDS": "stopwords_path",
            "CORPUS": "corpus_path",
            "CORRECTION_LOG": "correction_log",
            "K": "k",
            "TAU": "tau",
            "ROLE_FLOOR": "role_similarity_floor",
            "EXTERNAL_PARSER": "external_parser",
            "EXTERNAL_GENERATOR": "external_generator",
        }
        for env_key, field_name in mapping.items():
            value = env.get(ENV_PREFIX + env_key)
            if value is not None:
                data[field_name] = value
        known = {f for f in SkateConfig.__dataclass_fields__ if f != "extra"}
        kwargs = {k: v for k, v in data.items() if k in known}
        extra = {k: v for k, v in data.items() if k not in known}
        cfg = SkateConfig(**kwargs, extra=extra)
        cfg.k = int(cfg.k)
        cfg.tau = float(cfg.tau)
        cfg.role_similarity_floor = float(cfg.role_similarity_floor)
        return cfg


class Engine:
    """Immutable stores plus the recognizer and suggestion generator."""

    def __init__(self, ontology: Ontology, store: EmbeddingStore,
                 recognizer: Recognizer, suggester,
                 templates: dict[str, TemplateSpec] | None = None,
                 config: SkateConfig | None = None):
        self.ontology = ontology
        self.store = store
        self.recognizer = recognizer
        self.suggester = suggester
        self.templates = templates or BUILTIN_TEMPLATES
        self.config = config or SkateConfig()

    @staticmethod
    def from_config(config: SkateConfig | None = None) -> "Engine":
        config = config or SkateConfig()
        ontology_path = config.ontology_path or _data_path("ontology.json")
        vectors_path = config.vectors_path or _data_path("vectors.txt")
        stopwords_path = config.stopwords_path or _data_path("stopwords.txt")
        corpus_path = config.corpus_path or _data_path("corpus.txt")

        with open(ontology_path, "rb") as fh:
            ontology = load_ontology(fh)
        with open(vectors_path, "rb") as fh:
            store = load_vectors(fh)
        with open(stopwords_path, "rb") as fh:
            store = store.with_stopwords(load_stopwords(fh))

        external = None
        if config.external_parser:
            external = ExternalParserClient(config.external_parser)
        training_log = TrainingLog(config.correction_log) if config.correction_log else None
        recognizer = Recognizer(
            ontology, store,
            RecognizerConfig(
                k=config.k,
                low_confidence_threshold=config.tau,
                role_similarity_floor=config.role_similarity_floor,
            ),
            external=external,
            training_log=training_log,
        )
        if config.external_generator:
            suggester = ExternalGenerator(config.external_generator)
        else:
            suggester = RetrievalStub.from_path(corpus_path, store)
        return Engine(ontology, store, recognizer, suggester, config=config)


def default_policy_fixture() -> str:
    with open(_data_path("covid_policy.json"), encoding="utf-8") as fh:
        return fh.read()
