# serialization.py
# MIT License 2026
import json
import logging
from typing import Any, Dict, Mapping, Optional

from weedmap.exceptions import MalformedInput, UnsupportedModelVersion
from weedmap.learn.model import ModelArtifact
from weedmap.learn.registry import LearnerFactory, load_learners

MODEL_FORMAT = "weedmap-model"
FORMAT_VERSION = 1

logger = logging.getLogger(__name__)


def model_to_dict(model: ModelArtifact) -> Dict[str, Any]:
    """Get the self-describing JSON document of a trained model"""
    return {
        "format": MODEL_FORMAT,
        "format_version": FORMAT_VERSION,
        "model_kind": model.model_kind,
        "hyperparams": model.hyperparams,
        "seed": model.seed,
        "schema_fingerprint": model.fingerprint,
        "schema": list(model.schema),
        "metadata": model.metadata,
        "state": model.learner.get_state()
    }


def model_from_dict(document: Mapping[str, Any], learners: Optional[Mapping[str, LearnerFactory]] = None) -> ModelArtifact:
    """Rebuild a trained model from its JSON document.

    Throws: `UnsupportedModelVersion` if the document uses an unknown format version,
    `MalformedInput` if it is not a model document or if its schema was altered.
    """
    if document.get("format") != MODEL_FORMAT:
        raise MalformedInput(f"Not a weedmap model document (format {document.get('format')!r})")
    if document.get("format_version") != FORMAT_VERSION:
        raise UnsupportedModelVersion(f"Unsupported model format version {document.get('format_version')!r}, this version of weedmap reads version {FORMAT_VERSION}")
    learners = load_learners() if learners is None else learners
    kind = document["model_kind"]
    if kind not in learners:
        raise MalformedInput(f"The model was trained with learner '{kind}', which is not registered")
    learner = learners[kind](document["hyperparams"])
    learner.load_state(document["state"])
    model = ModelArtifact(kind, learner.hyperparams, tuple(document["schema"]), int(document["seed"]), learner, dict(document.get("metadata", dict())))
    if model.fingerprint != document["schema_fingerprint"]:
        raise MalformedInput("The schema of the model does not match its recorded fingerprint")
    return model


def save_model(model: ModelArtifact, path: str) -> None:
    """Save a trained model as a single JSON file.

    The same model is always written to the same bytes.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        json.dump(model_to_dict(model), file, sort_keys=True, separators=(",", ":"))
        file.write("\n")
    logger.info(f"Model written to {path}")


def load_model(path: str, learners: Optional[Mapping[str, LearnerFactory]] = None) -> ModelArtifact:
    """Load a trained model saved by `save_model`"""
    with open(path, "r", encoding="utf-8") as file:
        try:
            document = json.load(file)
        except json.JSONDecodeError as error:
            raise MalformedInput(f"Cannot parse model file {path}: {error}")
    return model_from_dict(document, learners)
