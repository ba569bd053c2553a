"""Test fixtures and environment setup.

The thread-count knob must be in the environment before numba is first
imported anywhere in the test process, so it is set here at conftest import
time. The sandbox may expose a single CPU; forcing the maximum lets the
determinism tests exercise set_num_threads(1) vs set_num_threads(8) for
real.
"""

import os

os.environ.setdefault("NUMBA_NUM_THREADS", "8")

import numpy as np
import pytest


def make_dataset(num_examples=12, length=64, num_classes=2, seed=0, name="synthetic"):
    """Build a small labelled dataset with class-dependent structure.

    Class c is a sine of frequency (c + 1) plus noise, so the classes are
    separable but not trivially so at short lengths.
    """
    from convpool.core import Dataset

    rng = np.random.default_rng(seed)
    t = np.linspace(0.0, 2.0 * np.pi, length)
    values = np.empty((num_examples, length), dtype=np.float64)
    labels = np.empty(num_examples, dtype=np.int64)
    for i in range(num_examples):
        c = i % num_classes
        phase = rng.uniform(0.0, 2.0 * np.pi)
        values[i] = np.sin((c + 1) * t + phase) + 0.1 * rng.standard_normal(length)
        labels[i] = c
    return Dataset(
        name=name,
        values=values,
        labels=labels,
        label_names=tuple(str(c) for c in range(num_classes)),
    )


@pytest.fixture
def small_dataset():
    return make_dataset()


def write_ucr_dataset(root, name, train, test, sep="\t"):
    """Write a train/test pair in the on-disk layout the loader expects.

    ``train`` and ``test`` are (values, raw_labels) pairs; raw labels may be
    any strings or numbers and are written as the first column.
    """
    ddir = root / name
    ddir.mkdir(parents=True, exist_ok=True)
    for split, (values, labels) in (("TRAIN", train), ("TEST", test)):
        path = ddir / f"{name}_{split}.tsv"
        with open(path, "w") as fh:
            for row, lab in zip(values, labels):
                fields = [str(lab)] + [repr(float(v)) for v in row]
                fh.write(sep.join(fields) + "\n")
    return ddir
