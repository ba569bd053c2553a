"""Model persistence.

A trained pipeline (fitted transform + ridge classifier + label vocabulary)
serialises to a single JSON document:

    {
      "format": "convpool-model",
      "version": 1,
      "label_names": ["1", "2"],
      "transform": {
        "config": {"num_features": ..., "representations": [...],
                    "pooling": [...], "seed": ...},
        "input_length": ...,
        "representations": [
          {"tag": ..., "dilations": [...], "combos_per_dilation": [...],
           "biases": [[...]], "paddings": [...]}
        ]
      },
      "classifier": {"alpha": ..., "feature_means": [...],
                      "feature_stds": [...], "weights": [[...]],
                      "intercepts": [...]}
    }

Floats are written with shortest round-trip precision, so a reloaded model
is bit-for-bit identical to the saved one. Unknown format names or versions
are rejected on load.
"""

from __future__ import annotations

import json

import numpy as np

from .classifier import RidgeModel
from .core import RepresentationParams
from .transform import FittedTransform, TransformConfig

FORMAT_NAME = "convpool-model"
FORMAT_VERSION = 1


def to_document(fitted: FittedTransform, model: RidgeModel, label_names) -> dict:
    """Build the JSON-ready document for a trained pipeline."""
    if model.num_classes != len(label_names):
        raise ValueError(
            f"classifier has {model.num_classes} classes but {len(label_names)} "
            f"label names were given"
        )
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "label_names": [str(s) for s in label_names],
        "transform": {
            "config": {
                "num_features": fitted.config.num_features,
                "representations": list(fitted.config.representations),
                "pooling": list(fitted.config.pooling),
                "seed": fitted.config.seed,
            },
            "input_length": fitted.input_length,
            "representations": [
                {
                    "tag": rep.tag,
                    "dilations": rep.dilations.tolist(),
                    "combos_per_dilation": rep.combos_per_dilation.tolist(),
                    "biases": rep.biases.tolist(),
                    "paddings": rep.paddings.tolist(),
                }
                for rep in fitted.representations
            ],
        },
        "classifier": {
            "alpha": model.alpha,
            "feature_means": model.feature_means.tolist(),
            "feature_stds": model.feature_stds.tolist(),
            "weights": model.weights.tolist(),
            "intercepts": model.intercepts.tolist(),
        },
    }


def from_document(doc: dict) -> tuple[FittedTransform, RidgeModel, tuple[str, ...]]:
    """Reconstruct a trained pipeline, validating format and content."""
    if not isinstance(doc, dict):
        raise ValueError("model document must be a JSON object")
    if doc.get("format") != FORMAT_NAME:
        raise ValueError(
            f"not a {FORMAT_NAME} document (format={doc.get('format')!r})"
        )
    if doc.get("version") != FORMAT_VERSION:
        raise ValueError(
            f"unsupported model version {doc.get('version')!r}; this build reads "
            f"version {FORMAT_VERSION}"
        )
    try:
        tdoc = doc["transform"]
        config = TransformConfig(
            num_features=tdoc["config"]["num_features"],
            representations=tuple(tdoc["config"]["representations"]),
            pooling=tuple(tdoc["config"]["pooling"]),
            seed=tdoc["config"]["seed"],
        )
        reps = tuple(
            RepresentationParams(
                tag=r["tag"],
                dilations=np.asarray(r["dilations"], dtype=np.int64),
                combos_per_dilation=np.asarray(r["combos_per_dilation"], dtype=np.int64),
                biases=np.asarray(r["biases"], dtype=np.float64),
                paddings=np.asarray(r["paddings"], dtype=np.bool_),
            )
            for r in tdoc["representations"]
        )
        fitted = FittedTransform(
            config=config, input_length=tdoc["input_length"], representations=reps
        )
        cdoc = doc["classifier"]
        model = RidgeModel(
            alpha=cdoc["alpha"],
            feature_means=np.asarray(cdoc["feature_means"], dtype=np.float64),
            feature_stds=np.asarray(cdoc["feature_stds"], dtype=np.float64),
            weights=np.asarray(cdoc["weights"], dtype=np.float64),
            intercepts=np.asarray(cdoc["intercepts"], dtype=np.float64),
        )
        label_names = tuple(str(s) for s in doc["label_names"])
    except KeyError as e:
        raise ValueError(f"model document is missing field {e}") from None
    if model.num_features != fitted.num_features:
        raise ValueError(
            f"classifier expects {model.num_features} features but the transform "
            f"produces {fitted.num_features}"
        )
    if model.num_classes != len(label_names):
        raise ValueError(
            f"classifier has {model.num_classes} classes but the document lists "
            f"{len(label_names)} label names"
        )
    return fitted, model, label_names


def save_model(path: str, fitted: FittedTransform, model: RidgeModel, label_names) -> None:
    with open(path, "w") as fh:
        json.dump(to_document(fitted, model, label_names), fh, allow_nan=False)
        fh.write("\n")


def load_model(path: str) -> tuple[FittedTransform, RidgeModel, tuple[str, ...]]:
    with open(path) as fh:
        return from_document(json.load(fh))
