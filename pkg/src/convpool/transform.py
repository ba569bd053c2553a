"""Convolution feature transform.

A fitted transform turns each series into a fixed-length feature vector by
convolving two representations of the input (the raw series and its first
difference) with all 84 fixed kernels at several dilations, then summarising
each convolution output with four pooling statistics taken relative to a
per-combination bias threshold:

- ppv: fraction of positive values
- mpv: mean of positive values (0 when there are none)
- mipv: mean 0-based index of positive values (-1 when there are none)
- lspv: length of the longest run of consecutive positive values

"Positive" always means strictly greater than zero after subtracting the
bias. Bias thresholds are the only fitted (and only randomised) state: each
one is a quantile of the convolution output of one randomly chosen training
series. Everything else is fixed by the configuration, so transforms with
equal configs and equal training data are identical.

Feature columns are laid out as

    col = rep_pos * (num_ops * 84 * cpk)
        + op_rank  * (84 * cpk)
        + kernel_index * cpk
        + combination_slot

where cpk is the number of (dilation, bias, padding) combinations per
kernel, rep_pos indexes the configured representations and op_rank the
configured pooling operators, both in canonical order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit, prange

from .core import (
    KERNEL_LENGTH,
    MIN_TRANSFORM_LENGTH,
    NUM_KERNELS,
    POOLING_OPS,
    REPRESENTATIONS,
    Dataset,
    RepresentationParams,
    enumerate_kernels,
)

# Ratio of kernel span to series length that caps the dilation range:
# the largest dilation keeps the dilated kernel (span 8*d + 1) inside the
# series, so max_exponent = log2((length - 1) / 8).
_SPAN = KERNEL_LENGTH - 1

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

_MAX_SEED = 2**64

# Salt layout for the per-group random streams: representation index above
# bit 39, kernel index in bits 32..38, dilation index below. Keeps every
# (representation, kernel, dilation) group on its own independent stream so
# fitting order can never matter.
_REP_SHIFT = 39
_KERNEL_SHIFT = 32


def _normalize_subset(values, canon, what):
    if isinstance(values, str):
        values = (values,)
    chosen = []
    for v in values:
        if v not in canon:
            raise ValueError(f"unknown {what} {v!r}; expected a subset of {canon}")
        if v not in chosen:
            chosen.append(v)
    if not chosen:
        raise ValueError(f"at least one {what} is required")
    return tuple(sorted(chosen, key=canon.index))


@dataclass(frozen=True)
class TransformConfig:
    """Immutable transform settings.

    ``num_features`` is a budget, not an exact count: the fitted transform
    uses the largest feature count not exceeding it that divides evenly
    into per-kernel combinations (see :func:`combos_per_kernel`).
    """

    num_features: int = 50_000
    representations: tuple[str, ...] = REPRESENTATIONS
    pooling: tuple[str, ...] = POOLING_OPS
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(
            self,
            "representations",
            _normalize_subset(self.representations, REPRESENTATIONS, "representation"),
        )
        object.__setattr__(
            self, "pooling", _normalize_subset(self.pooling, POOLING_OPS, "pooling operator")
        )
        floor = NUM_KERNELS * len(self.representations) * len(self.pooling)
        if int(self.num_features) != self.num_features or self.num_features < floor:
            raise ValueError(
                f"num_features must be an integer of at least {floor} for "
                f"{len(self.representations)} representation(s) and "
                f"{len(self.pooling)} pooling operator(s), got {self.num_features}"
            )
        object.__setattr__(self, "num_features", int(self.num_features))
        if not (0 <= int(self.seed) < _MAX_SEED):
            raise ValueError(f"seed must fit in an unsigned 64-bit integer, got {self.seed}")
        object.__setattr__(self, "seed", int(self.seed))


def combos_per_kernel(config: TransformConfig) -> int:
    """Per-kernel combination count implied by the feature budget.

    Every kernel contributes one feature per pooling operator per
    representation per combination, so the count is
    floor(budget / (84 * num_representations * num_pooling_ops)).
    """
    per_combo = NUM_KERNELS * len(config.representations) * len(config.pooling)
    return config.num_features // per_combo


def first_order_difference(x: np.ndarray) -> np.ndarray:
    """Successive differences x[t+1] - x[t] along the last axis."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] < 2:
        raise ValueError("need at least two values to difference")
    return np.diff(x, axis=-1)


def compute_dilations(input_length: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Assign ``count`` combination slots to dilations.

    Exponents are spaced evenly on [0, log2((input_length - 1) / 8)] and
    each dilation is floor(2**exponent), so small dilations get more slots.
    Returns (dilations, combos_per_dilation): the distinct dilations in
    increasing order and how many of the ``count`` slots each one holds.
    Slots are assigned to dilations in order, so slot ranges per dilation
    are contiguous.
    """
    if input_length < KERNEL_LENGTH:
        raise ValueError(
            f"input length must be at least {KERNEL_LENGTH} to place a dilated kernel, "
            f"got {input_length}"
        )
    if count < 1:
        raise ValueError(f"combination count must be positive, got {count}")
    max_exp = np.log2((input_length - 1) / _SPAN)
    if count == 1:
        exponents = np.zeros(1)
    else:
        exponents = np.arange(count) * (max_exp / (count - 1))
    dilations = np.floor(np.power(2.0, exponents)).astype(np.int64)
    values, counts = np.unique(dilations, return_counts=True)
    return values, counts


def quantile_positions(count: int) -> np.ndarray:
    """Low-discrepancy quantile levels: fractional parts of multiples of
    the golden ratio. Spreads ``count`` levels over (0, 1) without
    clustering for any count."""
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    return np.mod((np.arange(count) + 1) * _GOLDEN, 1.0)


def convolve(x: np.ndarray, weights: np.ndarray, dilation: int, padding: bool) -> np.ndarray:
    """Convolve one series with a dilated kernel.

    With padding, the series is extended with 4*dilation zeros on each side
    and the output has the input's length; without, only positions where
    the dilated kernel fits entirely inside the series are produced, giving
    length ``len(x) - 8*dilation``. Terms are accumulated in tap order so
    the result is bit-identical to the batch transform.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"series must be 1-D, got shape {x.shape}")
    if weights.shape != (KERNEL_LENGTH,):
        raise ValueError(f"weights must have shape ({KERNEL_LENGTH},), got {weights.shape}")
    if dilation < 1:
        raise ValueError(f"dilation must be positive, got {dilation}")
    length = x.shape[0]
    half_span = (_SPAN // 2) * dilation
    if padding:
        src = np.zeros(length + 2 * half_span)
        src[half_span : half_span + length] = x
        out_length = length
    else:
        out_length = length - 2 * half_span
        if out_length < 1:
            raise ValueError(
                f"dilation {dilation} leaves no unpadded output for length {length}"
            )
        src = x
    out = np.zeros(out_length)
    for j in range(KERNEL_LENGTH):
        out += weights[j] * src[j * dilation : j * dilation + out_length]
    return out


@njit(cache=True)
def _pool_stats(z, lo, hi, bias):
    # Single pass over z[lo:hi] shifted by bias; all four statistics use
    # strict positivity of the shifted value.
    npos = 0
    pos_sum = 0.0
    idx_sum = 0.0
    run = 0
    longest = 0
    for p in range(lo, hi):
        v = z[p] - bias
        if v > 0.0:
            npos += 1
            pos_sum += v
            idx_sum += p - lo
            run += 1
            if run > longest:
                longest = run
        else:
            run = 0
    width = hi - lo
    ppv = npos / width
    mpv = pos_sum / npos if npos > 0 else 0.0
    mipv = idx_sum / npos if npos > 0 else -1.0
    return ppv, mpv, mipv, float(longest)


def compute_features(z: np.ndarray, bias: float = 0.0) -> tuple[float, float, float, float]:
    """Pool one convolution output into (ppv, mpv, mipv, lspv)."""
    z = np.ascontiguousarray(z, dtype=np.float64)
    if z.ndim != 1 or z.shape[0] == 0:
        raise ValueError("convolution output must be a non-empty 1-D array")
    return _pool_stats(z, 0, z.shape[0], float(bias))


def pool_ppv(z: np.ndarray, bias: float = 0.0) -> float:
    """Fraction of values strictly above the bias."""
    z = np.asarray(z, dtype=np.float64)
    return float(np.mean(z > bias))


def pool_mpv(z: np.ndarray, bias: float = 0.0) -> float:
    """Mean of the positive parts of z - bias, or 0 if none are positive."""
    v = np.asarray(z, dtype=np.float64) - bias
    v = v[v > 0.0]
    return float(v.mean()) if v.size else 0.0


def pool_mipv(z: np.ndarray, bias: float = 0.0) -> float:
    """Mean 0-based position of values above the bias, or -1 if none are."""
    z = np.asarray(z, dtype=np.float64)
    idx = np.flatnonzero(z > bias)
    return float(idx.mean()) if idx.size else -1.0


def pool_lspv(z: np.ndarray, bias: float = 0.0) -> float:
    """Element count of the longest run of consecutive values above the bias."""
    mask = np.asarray(z, dtype=np.float64) > bias
    longest = 0
    run = 0
    for m in mask:
        run = run + 1 if m else 0
        if run > longest:
            longest = run
    return float(longest)


def _bias_stream(seed: int, rep_index: int, kernel_index: int, dilation_index: int):
    salt = (rep_index << _REP_SHIFT) | (kernel_index << _KERNEL_SHIFT) | dilation_index
    key = np.array([seed, salt], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_biases(
    values: np.ndarray,
    weights: np.ndarray,
    dilation: int,
    count: int,
    stream: np.random.Generator,
) -> np.ndarray:
    """Draw ``count`` bias thresholds for one kernel at one dilation.

    One training series is chosen at random from ``values``; the biases are
    quantiles of its padded convolution output at golden-ratio levels, so a
    group of thresholds covers the output distribution evenly.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2 or values.shape[0] < 1:
        raise ValueError(f"values must be a non-empty 2-D array, got shape {values.shape}")
    chosen = int(stream.integers(values.shape[0]))
    z = convolve(values[chosen], weights, dilation, padding=True)
    return np.quantile(z, quantile_positions(count))


def _representation_values(values: np.ndarray, tag: str) -> np.ndarray:
    if tag == "base":
        return np.ascontiguousarray(values, dtype=np.float64)
    if tag == "first_diff":
        return np.ascontiguousarray(first_order_difference(values))
    raise ValueError(f"unknown representation tag {tag!r}")


@dataclass(frozen=True)
class FittedTransform:
    """A transform ready to apply: config plus fitted per-representation
    parameters. ``input_length`` is the training series length; apply
    rejects series of any other length."""

    config: TransformConfig
    input_length: int
    representations: tuple[RepresentationParams, ...] = field(repr=False)

    def __post_init__(self):
        tags = tuple(r.tag for r in self.representations)
        if tags != self.config.representations:
            raise ValueError(
                f"fitted representations {tags} do not match config {self.config.representations}"
            )
        if self.input_length < MIN_TRANSFORM_LENGTH:
            raise ValueError(
                f"input length must be at least {MIN_TRANSFORM_LENGTH}, got {self.input_length}"
            )
        cpk = combos_per_kernel(self.config)
        for r in self.representations:
            if r.combos_per_kernel != cpk:
                raise ValueError(
                    f"representation {r.tag!r} holds {r.combos_per_kernel} combinations "
                    f"per kernel, config implies {cpk}"
                )

    @property
    def combos_per_kernel(self) -> int:
        return combos_per_kernel(self.config)

    @property
    def num_features(self) -> int:
        return (
            len(self.representations)
            * len(self.config.pooling)
            * NUM_KERNELS
            * self.combos_per_kernel
        )


def fit(dataset: Dataset, config: TransformConfig | None = None) -> FittedTransform:
    """Fit the transform on a training set.

    Only the bias thresholds depend on the data. Each (representation,
    kernel, dilation) group draws from its own counter-based random stream
    keyed on the seed, so results do not depend on iteration order and any
    single group can be reproduced in isolation.
    """
    config = config or TransformConfig()
    if dataset.length < MIN_TRANSFORM_LENGTH:
        raise ValueError(
            f"series length {dataset.length} is below the minimum "
            f"{MIN_TRANSFORM_LENGTH} the transform supports"
        )
    cpk = combos_per_kernel(config)
    weight_matrix = enumerate_kernels().weight_matrix()
    fitted_reps = []
    for tag in config.representations:
        rep_index = REPRESENTATIONS.index(tag)
        rep_values = _representation_values(dataset.values, tag)
        dilations, combos = compute_dilations(rep_values.shape[1], cpk)
        starts = np.concatenate(([0], np.cumsum(combos)[:-1]))
        biases = np.empty((NUM_KERNELS, cpk))
        for k in range(NUM_KERNELS):
            for di in range(dilations.shape[0]):
                stream = _bias_stream(config.seed, rep_index, k, di)
                group = sample_biases(
                    rep_values, weight_matrix[k], int(dilations[di]), int(combos[di]), stream
                )
                biases[k, starts[di] : starts[di] + combos[di]] = group
        fitted_reps.append(
            RepresentationParams(
                tag=tag,
                dilations=dilations,
                combos_per_dilation=combos,
                biases=biases,
                paddings=np.arange(cpk) % 2 == 0,
            )
        )
    return FittedTransform(
        config=config, input_length=dataset.length, representations=tuple(fitted_reps)
    )


@njit(cache=True, parallel=True)
def _transform_batch(X, weights, dilations, group_start, group_end, biases, op_col, out):
    # One representation's feature block. op_col[o] is the output column of
    # the first feature of canonical pooling operator o, or -1 when that
    # operator is not selected. Rows are independent, so the parallel loop
    # is bitwise deterministic for any thread count.
    n, length = X.shape
    num_kernels = weights.shape[0]
    num_groups = dilations.shape[0]
    cpk = group_end[num_groups - 1]
    for i in prange(n):
        z = np.empty(length, dtype=np.float64)
        for k in range(num_kernels):
            for di in range(num_groups):
                d = dilations[di]
                half_span = 4 * d
                # Padded convolution output; tap terms accumulate in order,
                # matching the reference convolution exactly.
                for p in range(length):
                    acc = 0.0
                    left = p - half_span
                    for j in range(9):
                        idx = left + j * d
                        if 0 <= idx < length:
                            acc += weights[k, j] * X[i, idx]
                    z[p] = acc
                for s in range(group_start[di], group_end[di]):
                    if s % 2 == 0:
                        lo, hi = 0, length
                    else:
                        # unpadded view is the central slice of the padded output
                        lo, hi = half_span, length - half_span
                    ppv, mpv, mipv, lspv = _pool_stats(z, lo, hi, biases[k, s])
                    col = k * cpk + s
                    if op_col[0] >= 0:
                        out[i, op_col[0] + col] = ppv
                    if op_col[1] >= 0:
                        out[i, op_col[1] + col] = mpv
                    if op_col[2] >= 0:
                        out[i, op_col[2] + col] = mipv
                    if op_col[3] >= 0:
                        out[i, op_col[3] + col] = lspv


def apply(fitted: FittedTransform, values: np.ndarray | Dataset) -> np.ndarray:
    """Transform a batch of series into the (num_examples, num_features)
    feature matrix. Output is bit-for-bit reproducible for a given fitted
    transform, independent of run, batch order, or thread count."""
    if isinstance(values, Dataset):
        values = values.values
    values = np.ascontiguousarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise ValueError(f"values must be 2-D (examples x length), got shape {values.shape}")
    if values.shape[1] != fitted.input_length:
        raise ValueError(
            f"series length {values.shape[1]} does not match the fitted length "
            f"{fitted.input_length}"
        )
    if not np.isfinite(values).all():
        raise ValueError("series values must be finite")
    n = values.shape[0]
    cpk = fitted.combos_per_kernel
    ops = fitted.config.pooling
    rep_block = len(ops) * NUM_KERNELS * cpk
    weight_matrix = enumerate_kernels().weight_matrix()
    out = np.zeros((n, fitted.num_features), dtype=np.float64)
    for rep_pos, rep in enumerate(fitted.representations):
        rep_values = _representation_values(values, rep.tag)
        ends = np.cumsum(rep.combos_per_dilation)
        starts = ends - rep.combos_per_dilation
        op_col = np.full(len(POOLING_OPS), -1, dtype=np.int64)
        for rank, op in enumerate(ops):
            op_col[POOLING_OPS.index(op)] = rep_pos * rep_block + rank * NUM_KERNELS * cpk
        _transform_batch(
            rep_values,
            weight_matrix,
            rep.dilations,
            starts,
            ends,
            rep.biases,
            op_col,
            out,
        )
    return out
