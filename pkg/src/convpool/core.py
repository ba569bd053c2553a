"""Shared domain types: labelled series collections, the fixed kernel bank,
and fitted per-representation convolution parameters.

A single time series is represented as a 1-D float64 numpy array throughout
the package; ``as_series`` is the validating constructor. Feature matrices
are plain ``(num_examples, num_features)`` float64 arrays whose column
layout is documented in :mod:`convpool.transform`.

Everything defined here is immutable after construction (frozen dataclasses
holding read-only arrays) and safe to share across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

KERNEL_LENGTH = 9
NUM_KERNELS = 84

# Shortest series the convolution transform accepts: one more than the
# kernel span at dilation 1, so an unpadded output always exists.
MIN_TRANSFORM_LENGTH = 10
# Shortest series a Dataset may hold: two points, enough for a first
# difference. The transform enforces its own stricter floor at fit time.
MIN_SERIES_LENGTH = 2

BASE = "base"
FIRST_DIFF = "first_diff"
REPRESENTATIONS = (BASE, FIRST_DIFF)

PPV = "ppv"
MPV = "mpv"
MIPV = "mipv"
LSPV = "lspv"
POOLING_OPS = (PPV, MPV, MIPV, LSPV)


def as_series(values) -> np.ndarray:
    """Validate and return a single time series as a read-only float64 array.

    Rejects non-1-D input, series shorter than ``MIN_SERIES_LENGTH``, and
    non-finite values.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"a time series must be 1-D, got shape {x.shape}")
    if x.shape[0] < MIN_SERIES_LENGTH:
        raise ValueError(
            f"a time series needs at least {MIN_SERIES_LENGTH} values, got {x.shape[0]}"
        )
    if not np.isfinite(x).all():
        raise ValueError("time series values must be finite (no NaN or Inf)")
    x = x.copy()
    x.setflags(write=False)
    return x


@dataclass(frozen=True)
class Kernel:
    """A length-9 convolution kernel with six -1 weights and three 2 weights."""

    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.weights) != KERNEL_LENGTH:
            raise ValueError(f"kernel must have {KERNEL_LENGTH} weights, got {len(self.weights)}")
        low = sum(1 for w in self.weights if w == -1.0)
        high = sum(1 for w in self.weights if w == 2.0)
        if low != 6 or high != 3:
            raise ValueError(
                "kernel weights must be six -1s and three 2s, got "
                f"{sorted(self.weights)}"
            )

    @property
    def high_positions(self) -> tuple[int, ...]:
        """Indices of the three weight-2 taps."""
        return tuple(i for i, w in enumerate(self.weights) if w == 2.0)


@dataclass(frozen=True)
class KernelBank:
    """The complete ordered set of 84 fixed kernels."""

    kernels: tuple[Kernel, ...]

    def __post_init__(self):
        if len(self.kernels) != NUM_KERNELS:
            raise ValueError(f"kernel bank must hold {NUM_KERNELS} kernels, got {len(self.kernels)}")
        if len({k.high_positions for k in self.kernels}) != NUM_KERNELS:
            raise ValueError("kernel bank contains duplicate kernels")

    def __len__(self) -> int:
        return len(self.kernels)

    def __iter__(self):
        return iter(self.kernels)

    def weight_matrix(self) -> np.ndarray:
        """All kernel weights as an (84, 9) float64 array."""
        return np.array([k.weights for k in self.kernels], dtype=np.float64)


def enumerate_kernels() -> KernelBank:
    """Enumerate all C(9,3) = 84 kernels, ordered lexicographically by the
    index triple of the weight-2 positions.

    The order is fixed so that feature columns are reproducible across runs
    and platforms.
    """
    kernels = []
    for triple in itertools.combinations(range(KERNEL_LENGTH), 3):
        weights = [-1.0] * KERNEL_LENGTH
        for i in triple:
            weights[i] = 2.0
        kernels.append(Kernel(weights=tuple(weights)))
    return KernelBank(kernels=tuple(kernels))


@dataclass(frozen=True)
class Dataset:
    """A labelled collection of equal-length univariate series.

    ``labels`` are dense integer class ids in 0..C-1; ``label_names`` keeps
    the original label text for class id ``i`` at position ``i``.
    """

    name: str
    values: np.ndarray
    labels: np.ndarray
    label_names: tuple[str, ...]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        if values.ndim != 2:
            raise ValueError(f"dataset values must be 2-D (examples x length), got shape {values.shape}")
        n, length = values.shape
        if n == 0:
            raise ValueError("dataset must contain at least one series")
        if length < MIN_SERIES_LENGTH:
            raise ValueError(
                f"dataset series must have at least {MIN_SERIES_LENGTH} values, got {length}"
            )
        if labels.shape != (n,):
            raise ValueError(
                f"label count {labels.shape} does not match series count {n}"
            )
        if not np.isfinite(values).all():
            bad = np.argwhere(~np.isfinite(values))[0]
            raise ValueError(
                f"non-finite value in series {bad[0]} at position {bad[1]}"
            )
        num_classes = len(self.label_names)
        if num_classes < 1:
            raise ValueError("dataset must declare at least one class")
        if labels.min() < 0 or labels.max() >= num_classes:
            raise ValueError(
                f"labels must lie in 0..{num_classes - 1}, got range "
                f"[{labels.min()}, {labels.max()}]"
            )
        present = np.unique(labels)
        if len(present) != num_classes:
            missing = sorted(set(range(num_classes)) - set(present.tolist()))
            raise ValueError(f"classes {missing} have no examples")
        values = values.copy()
        labels = labels.copy()
        values.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "label_names", tuple(str(s) for s in self.label_names))

    @property
    def num_examples(self) -> int:
        return self.values.shape[0]

    @property
    def length(self) -> int:
        return self.values.shape[1]

    @property
    def num_classes(self) -> int:
        return len(self.label_names)

    def class_counts(self) -> np.ndarray:
        """Number of examples per class id."""
        return np.bincount(self.labels, minlength=self.num_classes)


@dataclass(frozen=True)
class RepresentationParams:
    """Fitted convolution parameters for one series representation.

    ``biases`` has shape (84, combos_per_kernel); column ``j`` of every
    kernel belongs to dilation index ``d`` where ``j`` falls in the slot
    range of ``combos_per_dilation[d]``. ``paddings[j]`` says whether
    combination ``j`` convolves with zero padding; even combination indices
    are padded so each kernel pads exactly ceil(combos/2) of its combos.
    """

    tag: str
    dilations: np.ndarray
    combos_per_dilation: np.ndarray
    biases: np.ndarray
    paddings: np.ndarray

    def __post_init__(self):
        if self.tag not in REPRESENTATIONS:
            raise ValueError(f"unknown representation tag {self.tag!r}")
        dilations = np.asarray(self.dilations, dtype=np.int64)
        combos = np.asarray(self.combos_per_dilation, dtype=np.int64)
        biases = np.asarray(self.biases, dtype=np.float64)
        paddings = np.asarray(self.paddings, dtype=np.bool_)
        if dilations.ndim != 1 or dilations.size == 0:
            raise ValueError("dilations must be a non-empty 1-D array")
        if dilations[0] < 1 or np.any(np.diff(dilations) <= 0):
            raise ValueError("dilations must be positive and strictly increasing")
        if combos.shape != dilations.shape:
            raise ValueError("combos_per_dilation must match dilations in length")
        if np.any(combos < 1):
            raise ValueError("every dilation must hold at least one combination")
        total = int(combos.sum())
        if biases.shape != (NUM_KERNELS, total):
            raise ValueError(
                f"biases must have shape ({NUM_KERNELS}, {total}), got {biases.shape}"
            )
        if not np.isfinite(biases).all():
            raise ValueError("biases must be finite")
        if paddings.shape != (total,):
            raise ValueError(f"paddings must have shape ({total},), got {paddings.shape}")
        expected = np.arange(total) % 2 == 0
        if not np.array_equal(paddings, expected):
            raise ValueError("paddings must alternate with even combination indices padded")
        for arr in (dilations, combos, biases, paddings):
            arr.setflags(write=False)
        object.__setattr__(self, "dilations", dilations)
        object.__setattr__(self, "combos_per_dilation", combos)
        object.__setattr__(self, "biases", biases)
        object.__setattr__(self, "paddings", paddings)

    @property
    def combos_per_kernel(self) -> int:
        return int(self.combos_per_dilation.sum())

    @property
    def num_combos(self) -> int:
        return NUM_KERNELS * self.combos_per_kernel
