"""Dataset ingestion and deterministic stratified resampling.

Datasets are read from the common archive distribution format: one series
per line, class label first, values tab- or comma-separated, stored as
``<root>/<Name>/<Name>_TRAIN.tsv`` and ``<root>/<Name>/<Name>_TEST.tsv``.
Raw label text is preserved; classes are relabelled to dense ids 0..C-1 in
numeric order when every label parses as a number, else in lexicographic
order.

Resampling follows the usual benchmark protocol: pool train and test,
reshuffle within each class, and keep the original per-class split sizes.
The shuffle seed is derived from (dataset name, resample id) with a fixed
hash (first 8 bytes, big-endian, of SHA-256 over ``"{name}:{id}"``), so any
single resample is reproducible from those two values alone.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass

import numpy as np

from .core import Dataset


def derive_seed(name: str, resample_id: int) -> int:
    """64-bit resample seed from the dataset name and resample id."""
    digest = hashlib.sha256(f"{name}:{resample_id}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _label_order(raw_labels):
    """Dense-id assignment order: numeric when possible, else lexicographic."""
    unique = sorted(set(raw_labels))
    try:
        return sorted(unique, key=lambda s: (float(s), s))
    except ValueError:
        return unique


def load_tsv(path: str, name: str | None = None) -> Dataset:
    """Parse one split file into a Dataset.

    Each line is a label followed by the series values, separated by tabs
    or commas. Rows must agree in length and contain only finite numbers;
    errors carry 1-based line/column coordinates.
    """
    if name is None:
        name = os.path.splitext(os.path.basename(path))[0]
        for suffix in ("_TRAIN", "_TEST"):
            if name.endswith(suffix):
                name = name[: -len(suffix)]
    rows = []
    raw_labels = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            fields = line.split("\t") if "\t" in line else line.split(",")
            if len(fields) < 2:
                raise ValueError(f"{path}:{lineno}: need a label and at least one value")
            values = np.empty(len(fields) - 1)
            for col, cell in enumerate(fields[1:], start=2):
                try:
                    values[col - 2] = float(cell)
                except ValueError:
                    raise ValueError(
                        f"{path}:{lineno}: column {col}: {cell!r} is not a number"
                    ) from None
                if not np.isfinite(values[col - 2]):
                    raise ValueError(
                        f"{path}:{lineno}: column {col}: missing or non-finite value "
                        f"{cell!r}; series with missing values are not supported"
                    )
            if rows and len(values) != len(rows[0]):
                raise ValueError(
                    f"{path}:{lineno}: row has {len(values)} values, expected "
                    f"{len(rows[0])}; variable-length series are not supported"
                )
            rows.append(values)
            raw_labels.append(fields[0])
    if not rows:
        raise ValueError(f"{path}: file contains no data rows")
    order = _label_order(raw_labels)
    label_to_id = {lab: i for i, lab in enumerate(order)}
    labels = np.array([label_to_id[lab] for lab in raw_labels], dtype=np.int64)
    return Dataset(
        name=name, values=np.vstack(rows), labels=labels, label_names=tuple(order)
    )


def write_tsv(path: str, dataset: Dataset) -> None:
    """Emit a Dataset in the same format load_tsv reads, value-exact."""
    with open(path, "w") as fh:
        for row, label in zip(dataset.values, dataset.labels):
            fields = [dataset.label_names[label]]
            fields.extend(repr(float(v)) for v in row)
            fh.write("\t".join(fields) + "\n")


def load_ucr_pair(root: str, name: str) -> tuple[Dataset, Dataset]:
    """Load the train/test split pair of one archive dataset.

    Both splits are relabelled against their combined label vocabulary so
    class ids agree across the pair.
    """
    train_path = os.path.join(root, name, f"{name}_TRAIN.tsv")
    test_path = os.path.join(root, name, f"{name}_TEST.tsv")
    train = load_tsv(train_path, name=name)
    test = load_tsv(test_path, name=name)
    if train.length != test.length:
        raise ValueError(
            f"{name}: train series length {train.length} differs from test "
            f"length {test.length}"
        )
    if train.label_names != test.label_names:
        merged = _label_order(set(train.label_names) | set(test.label_names))
        missing = set(merged) - set(train.label_names)
        if missing:
            raise ValueError(
                f"{name}: classes {sorted(missing)} appear in the test split "
                f"but not in training"
            )
        mapping = {lab: i for i, lab in enumerate(merged)}
        remap = np.array([mapping[lab] for lab in test.label_names], dtype=np.int64)
        test = Dataset(
            name=name,
            values=test.values,
            labels=remap[test.labels],
            label_names=tuple(merged),
        )
    return train, test


def discover_datasets(root: str) -> list[str]:
    """Names of all datasets under ``root`` that have a complete split pair."""
    names = []
    for entry in sorted(os.listdir(root)):
        ddir = os.path.join(root, entry)
        if os.path.isdir(ddir) and all(
            os.path.isfile(os.path.join(ddir, f"{entry}_{s}.tsv")) for s in ("TRAIN", "TEST")
        ):
            names.append(entry)
    return names


@dataclass(frozen=True)
class ResamplePlan:
    """A re-split of the pooled train+test examples.

    Indices refer to the pooled dataset with training examples first. The
    two index sets are disjoint and together cover every pooled example.
    """

    resample_id: int
    seed: int
    train_indices: np.ndarray
    test_indices: np.ndarray

    def __post_init__(self):
        if self.resample_id < 0:
            raise ValueError(f"resample id must be non-negative, got {self.resample_id}")
        train = np.asarray(self.train_indices, dtype=np.int64)
        test = np.asarray(self.test_indices, dtype=np.int64)
        combined = np.concatenate([train, test])
        total = combined.shape[0]
        if not np.array_equal(np.sort(combined), np.arange(total)):
            raise ValueError("train and test indices must partition 0..N-1")
        train.setflags(write=False)
        test.setflags(write=False)
        object.__setattr__(self, "train_indices", train)
        object.__setattr__(self, "test_indices", test)


def stratified_resample(train: Dataset, test: Dataset, resample_id: int) -> ResamplePlan:
    """Plan resample ``resample_id`` of a split pair.

    Id 0 is the original split. Any other id shuffles the pooled examples
    within each class with a counter-based generator keyed on
    (derived seed, class id) and assigns the first ``train_count[c]`` of
    each class to training. Index sets come out sorted, so the resampled
    datasets keep pooled order.
    """
    if train.length != test.length:
        raise ValueError(
            f"train series length {train.length} differs from test length {test.length}"
        )
    if set(test.label_names) - set(train.label_names):
        missing = sorted(set(test.label_names) - set(train.label_names))
        raise ValueError(f"classes {missing} appear in the test split but not in training")
    if train.label_names != test.label_names:
        raise ValueError(
            "train and test must share one label vocabulary; load them as a pair"
        )
    n_train = train.num_examples
    total = n_train + test.num_examples
    seed = derive_seed(train.name, resample_id)
    if resample_id == 0:
        return ResamplePlan(
            resample_id=0,
            seed=seed,
            train_indices=np.arange(n_train),
            test_indices=np.arange(n_train, total),
        )
    pooled_labels = np.concatenate([train.labels, test.labels])
    train_counts = train.class_counts()
    train_idx = []
    test_idx = []
    for c in range(train.num_classes):
        members = np.flatnonzero(pooled_labels == c)
        rng = np.random.Generator(np.random.Philox(key=np.array([seed, c], dtype=np.uint64)))
        members = members[rng.permutation(members.shape[0])]
        train_idx.append(members[: train_counts[c]])
        test_idx.append(members[train_counts[c] :])
    return ResamplePlan(
        resample_id=resample_id,
        seed=seed,
        train_indices=np.sort(np.concatenate(train_idx)),
        test_indices=np.sort(np.concatenate(test_idx)),
    )


def apply_resample(train: Dataset, test: Dataset, plan: ResamplePlan) -> tuple[Dataset, Dataset]:
    """Materialise the planned split as two Datasets."""
    values = np.concatenate([train.values, test.values])
    labels = np.concatenate([train.labels, test.labels])
    make = lambda idx: Dataset(
        name=train.name,
        values=values[idx],
        labels=labels[idx],
        label_names=train.label_names,
    )
    return make(plan.train_indices), make(plan.test_indices)
