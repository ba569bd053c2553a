"""End-to-end runs with stage timing, and the results CSV format.

One run is: resample the split pair, fit the transform on the training
side, turn both sides into features, fit the ridge classifier, and score
both sides. Each stage is timed with the monotonic wall clock and the
outcome is a RunRecord, one CSV row.

The CSV schema is stable:

    dataset,resample,num_features,representations,pooling,seed,threads,
    t_fit,t_apply_train,t_apply_test,t_clf,t_pred,acc_train,acc_test

``representations`` and ``pooling`` cells join their values with ``+`` so
rows never need quoting. ``num_features`` is the actual feature count, not
the requested budget. ``t_pred`` times prediction of the test split only.
"""

from __future__ import annotations

import csv
import os
import time
from dataclasses import dataclass, fields

import numpy as np

from . import transform
from .classifier import RidgeModel, ridge_fit, ridge_predict
from .core import Dataset
from .data import apply_resample, stratified_resample

CSV_COLUMNS = (
    "dataset",
    "resample",
    "num_features",
    "representations",
    "pooling",
    "seed",
    "threads",
    "t_fit",
    "t_apply_train",
    "t_apply_test",
    "t_clf",
    "t_pred",
    "acc_train",
    "acc_test",
)

CSV_HEADER = ",".join(CSV_COLUMNS)

_LIST_SEP = "+"


@dataclass(frozen=True)
class RunRecord:
    """One benchmark run: configuration, stage timings, accuracies."""

    dataset: str
    resample: int
    num_features: int
    representations: tuple[str, ...]
    pooling: tuple[str, ...]
    seed: int
    threads: int
    t_fit: float
    t_apply_train: float
    t_apply_test: float
    t_clf: float
    t_pred: float
    acc_train: float
    acc_test: float

    def __post_init__(self):
        for name in ("t_fit", "t_apply_train", "t_apply_test", "t_clf", "t_pred"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        for name in ("acc_train", "acc_test"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if self.resample < 0:
            raise ValueError("resample id must be non-negative")
        object.__setattr__(self, "representations", tuple(self.representations))
        object.__setattr__(self, "pooling", tuple(self.pooling))

    def to_csv_row(self) -> str:
        cells = []
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                cells.append(_LIST_SEP.join(v))
            elif isinstance(v, float):
                cells.append(repr(v))
            else:
                cells.append(str(v))
        return ",".join(cells)

    @classmethod
    def from_csv_row(cls, row: dict) -> "RunRecord":
        return cls(
            dataset=row["dataset"],
            resample=int(row["resample"]),
            num_features=int(row["num_features"]),
            representations=tuple(row["representations"].split(_LIST_SEP)),
            pooling=tuple(row["pooling"].split(_LIST_SEP)),
            seed=int(row["seed"]),
            threads=int(row["threads"]),
            t_fit=float(row["t_fit"]),
            t_apply_train=float(row["t_apply_train"]),
            t_apply_test=float(row["t_apply_test"]),
            t_clf=float(row["t_clf"]),
            t_pred=float(row["t_pred"]),
            acc_train=float(row["acc_train"]),
            acc_test=float(row["acc_test"]),
        )


def set_threads(requested: int) -> int:
    """Set the worker thread count, clamped to what the runtime allows,
    and return the count actually in effect."""
    import numba

    if requested < 1:
        raise ValueError(f"threads must be at least 1, got {requested}")
    actual = min(requested, numba.config.NUMBA_NUM_THREADS)
    numba.set_num_threads(actual)
    return actual


def run_once(
    train: Dataset,
    test: Dataset,
    config: transform.TransformConfig | None = None,
    threads: int = 1,
    resample_id: int = 0,
) -> RunRecord:
    """Execute one full run on a split pair and return its record."""
    config = config or transform.TransformConfig()
    actual_threads = set_threads(threads)
    plan = stratified_resample(train, test, resample_id)
    rtrain, rtest = apply_resample(train, test, plan)

    t0 = time.perf_counter()
    fitted = transform.fit(rtrain, config)
    t_fit = time.perf_counter() - t0

    t0 = time.perf_counter()
    train_features = transform.apply(fitted, rtrain.values)
    t_apply_train = time.perf_counter() - t0

    t0 = time.perf_counter()
    test_features = transform.apply(fitted, rtest.values)
    t_apply_test = time.perf_counter() - t0

    t0 = time.perf_counter()
    model = ridge_fit(train_features, rtrain.labels, num_classes=rtrain.num_classes)
    t_clf = time.perf_counter() - t0

    t0 = time.perf_counter()
    test_pred = ridge_predict(model, test_features)
    t_pred = time.perf_counter() - t0
    train_pred = ridge_predict(model, train_features)

    return RunRecord(
        dataset=train.name,
        resample=resample_id,
        num_features=fitted.num_features,
        representations=config.representations,
        pooling=config.pooling,
        seed=config.seed,
        threads=actual_threads,
        t_fit=t_fit,
        t_apply_train=t_apply_train,
        t_apply_test=t_apply_test,
        t_clf=t_clf,
        t_pred=t_pred,
        acc_train=float(np.mean(train_pred == rtrain.labels)),
        acc_test=float(np.mean(test_pred == rtest.labels)),
    )


def fit_pipeline(
    train: Dataset, config: transform.TransformConfig | None = None, threads: int = 1
) -> tuple[transform.FittedTransform, RidgeModel, dict]:
    """Fit transform and classifier on a training set.

    Returns the fitted pair plus a stats dict with stage timings and the
    training accuracy.
    """
    config = config or transform.TransformConfig()
    set_threads(threads)
    t0 = time.perf_counter()
    fitted = transform.fit(train, config)
    t_fit = time.perf_counter() - t0
    t0 = time.perf_counter()
    features = transform.apply(fitted, train.values)
    t_apply = time.perf_counter() - t0
    t0 = time.perf_counter()
    model = ridge_fit(features, train.labels, num_classes=train.num_classes)
    t_clf = time.perf_counter() - t0
    acc = float(np.mean(ridge_predict(model, features) == train.labels))
    stats = {
        "t_fit": t_fit,
        "t_apply_train": t_apply,
        "t_clf": t_clf,
        "acc_train": acc,
    }
    return fitted, model, stats


def predict_pipeline(
    fitted: transform.FittedTransform,
    model: RidgeModel,
    values: np.ndarray,
    threads: int = 1,
) -> np.ndarray:
    """Predict class ids for a batch of series with a trained pipeline."""
    set_threads(threads)
    return ridge_predict(model, transform.apply(fitted, values))


def append_record(path: str, record: RunRecord) -> None:
    """Append one row, writing the header first on a fresh file."""
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a") as fh:
        if fresh:
            fh.write(CSV_HEADER + "\n")
        fh.write(record.to_csv_row() + "\n")


def read_records(path: str) -> list[RunRecord]:
    """Parse a results CSV back into records, validating the header."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        got = tuple(reader.fieldnames or ())
        if got != CSV_COLUMNS:
            raise ValueError(
                f"{path}: unexpected results header {','.join(got)!r}"
            )
        return [RunRecord.from_csv_row(row) for row in reader]


def completed_runs(path: str) -> set[tuple[str, int]]:
    """(dataset, resample) pairs already present in a results CSV, for
    resume. An absent file means nothing is done yet."""
    if not os.path.exists(path):
        return set()
    return {(r.dataset, r.resample) for r in read_records(path)}
