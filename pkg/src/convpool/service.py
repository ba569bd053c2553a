"""HTTP service around the pipeline.

Endpoints:

- ``GET /health`` — liveness and version.
- ``POST /datasets`` — list dataset names under a root directory.
- ``POST /run`` — one full benchmark run on a dataset, returns the record.
- ``POST /fit`` — train on a dataset's TRAIN split, returns the model
  document plus fit statistics.
- ``POST /predict`` — predict with a model document, on inline series or a
  server-side split file.

Dataset paths are resolved on the host running the service. The bundled
CLI runs the service in-process by default, so paths behave as local files
there; against a remote server they must exist on the server.

Requests that fail validation or reference bad data return 400 with a
human-readable detail message. Worker threads are a process-global setting,
so run one request at a time per process; parallelism belongs inside a run,
not across runs.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__, serialize
from .core import POOLING_OPS, REPRESENTATIONS
from .data import discover_datasets, load_tsv, load_ucr_pair
from .pipeline import RunRecord, fit_pipeline, predict_pipeline, run_once
from .transform import TransformConfig

app = FastAPI(title="convpool", version=__version__)


class TransformSettings(BaseModel):
    """Flags shared by everything that fits a transform."""

    num_features: int = 50_000
    representations: list[str] = list(REPRESENTATIONS)
    pooling: list[str] = list(POOLING_OPS)
    seed: int = 0
    threads: int = Field(default=1, ge=1)

    def to_config(self) -> TransformConfig:
        return TransformConfig(
            num_features=self.num_features,
            representations=tuple(self.representations),
            pooling=tuple(self.pooling),
            seed=self.seed,
        )


class DatasetsRequest(BaseModel):
    root: str


class DatasetsResponse(BaseModel):
    datasets: list[str]


class RunRequest(TransformSettings):
    root: str
    dataset: str
    resample: int = Field(default=0, ge=0)


class RunResponse(BaseModel):
    dataset: str
    resample: int
    num_features: int
    representations: list[str]
    pooling: list[str]
    seed: int
    threads: int
    t_fit: float
    t_apply_train: float
    t_apply_test: float
    t_clf: float
    t_pred: float
    acc_train: float
    acc_test: float

    @classmethod
    def from_record(cls, record: RunRecord) -> "RunResponse":
        return cls(
            dataset=record.dataset,
            resample=record.resample,
            num_features=record.num_features,
            representations=list(record.representations),
            pooling=list(record.pooling),
            seed=record.seed,
            threads=record.threads,
            t_fit=record.t_fit,
            t_apply_train=record.t_apply_train,
            t_apply_test=record.t_apply_test,
            t_clf=record.t_clf,
            t_pred=record.t_pred,
            acc_train=record.acc_train,
            acc_test=record.acc_test,
        )


class FitRequest(TransformSettings):
    root: str
    dataset: str


class FitResponse(BaseModel):
    model: dict
    t_fit: float
    t_apply_train: float
    t_clf: float
    acc_train: float


class PredictRequest(BaseModel):
    """Exactly one of ``values`` (inline series) or ``path`` (a split file
    on the service host) must be set."""

    model: dict
    values: list[list[float]] | None = None
    path: str | None = None
    threads: int = Field(default=1, ge=1)


class PredictResponse(BaseModel):
    class_ids: list[int]
    labels: list[str]
    accuracy: float | None = None


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail=str(exc))


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post("/datasets", response_model=DatasetsResponse)
def datasets(req: DatasetsRequest):
    try:
        return DatasetsResponse(datasets=discover_datasets(req.root))
    except OSError as e:
        raise _bad_request(e)


@app.post("/run", response_model=RunResponse)
def run(req: RunRequest):
    try:
        train, test = load_ucr_pair(req.root, req.dataset)
        record = run_once(
            train,
            test,
            req.to_config(),
            threads=req.threads,
            resample_id=req.resample,
        )
    except (ValueError, OSError) as e:
        raise _bad_request(e)
    return RunResponse.from_record(record)


@app.post("/fit", response_model=FitResponse)
def fit(req: FitRequest):
    try:
        train, _ = load_ucr_pair(req.root, req.dataset)
        fitted, model, stats = fit_pipeline(train, req.to_config(), threads=req.threads)
        document = serialize.to_document(fitted, model, train.label_names)
    except (ValueError, OSError) as e:
        raise _bad_request(e)
    return FitResponse(model=document, **stats)


@app.post("/predict", response_model=PredictResponse)
def predict(req: PredictRequest):
    if (req.values is None) == (req.path is None):
        raise HTTPException(
            status_code=400, detail="provide exactly one of 'values' or 'path'"
        )
    try:
        fitted, model, label_names = serialize.from_document(req.model)
        accuracy = None
        if req.path is not None:
            ds = load_tsv(req.path)
            values = ds.values
            ids = predict_pipeline(fitted, model, values, threads=req.threads)
            if ds.label_names == label_names:
                accuracy = float(np.mean(ids == ds.labels))
        else:
            values = np.asarray(req.values, dtype=np.float64)
            ids = predict_pipeline(fitted, model, values, threads=req.threads)
    except (ValueError, OSError) as e:
        raise _bad_request(e)
    return PredictResponse(
        class_ids=[int(i) for i in ids],
        labels=[label_names[i] for i in ids],
        accuracy=accuracy,
    )
