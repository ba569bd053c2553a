"""Convolutional feature extraction and ridge classification for univariate
time series, plus a small service and CLI around them."""

# Exports resolve lazily so that importing the package stays cheap and, more
# importantly, so the CLI can set NUMBA_NUM_THREADS before anything here
# drags numba in.
_EXPORTS = {
    "Dataset": "core",
    "FittedTransform": "transform",
    "RidgeModel": "classifier",
    "RunRecord": "pipeline",
    "TransformConfig": "transform",
    "apply": "transform",
    "fit": "transform",
    "fit_pipeline": "pipeline",
    "load_model": "serialize",
    "load_tsv": "data",
    "load_ucr_pair": "data",
    "predict_pipeline": "pipeline",
    "ridge_fit": "classifier",
    "ridge_predict": "classifier",
    "ridge_scores": "classifier",
    "run_once": "pipeline",
    "save_model": "serialize",
    "stratified_resample": "data",
    "write_tsv": "data",
}

__version__ = "0.1.0"

__all__ = sorted(_EXPORTS) + ["__version__"]


def __getattr__(name):
    try:
        module = _EXPORTS[name]
    except KeyError:
        raise AttributeError(f"module {__name__!r} has no attribute {name!r}") from None
    from importlib import import_module

    value = getattr(import_module(f".{module}", __name__), name)
    globals()[name] = value
    return value


def __dir__():
    return sorted(set(globals()) | set(_EXPORTS))
