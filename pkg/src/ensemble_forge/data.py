"""Tabular binary-classification data: loading, normalization, splitting.

Also provides a synthetic stand-in for the dyadic interstate-conflict data
this toolkit was shaped around: seven features of the same flavors (binary
flags, a log-scaled distance, a symmetric polity score, bounded continuous
ratios) with a configurable class imbalance whose default mirrors the
roughly 3% conflict rate of the historical dyad-year population.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from ._validation import as_generator, check_features, check_labels
from .errors import (
    ConfigurationError,
    ConstantFeatureError,
    CsvParseError,
    DimensionMismatchError,
    InsufficientSamplesError,
    MissingColumnError,
    NonBinaryLabelError,
)

#: Conflict-to-total dyad-year ratio used as the default class imbalance.
DEFAULT_MINORITY_FRACTION = 875 / 27721

SYNTH_FEATURE_NAMES = (
    "allies",
    "contingency",
    "distance",
    "major_power",
    "capability",
    "democracy",
    "dependency",
)


@dataclass(frozen=True)
class Dataset:
    """An immutable (features, labels) table with named columns."""

    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        features = check_features(self.features)
        labels = check_labels(self.labels, features.shape[0])
        names = self.feature_names or tuple(f"f{i}" for i in range(features.shape[1]))
        if len(names) != features.shape[1]:
            raise DimensionMismatchError(
                f"{len(names)} feature names for {features.shape[1]} columns"
            )
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "feature_names", tuple(names))

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def take(self, indices) -> "Dataset":
        idx = np.asarray(indices, dtype=np.intp)
        return Dataset(self.features[idx], self.labels[idx], self.feature_names)


@dataclass(frozen=True)
class NormalizationStats:
    """Per-feature minima and maxima for min-max scaling.

    Zero-width features are rejected at construction; the scaling map
    would otherwise divide by zero.
    """

    minima: np.ndarray
    maxima: np.ndarray

    def __post_init__(self):
        minima = np.asarray(self.minima, dtype=np.float64)
        maxima = np.asarray(self.maxima, dtype=np.float64)
        if minima.ndim != 1 or minima.shape != maxima.shape:
            raise DimensionMismatchError("minima and maxima must be 1-D and equal length")
        if not np.all(maxima > minima):
            raise ConstantFeatureError("every feature must satisfy max > min")
        object.__setattr__(self, "minima", minima)
        object.__setattr__(self, "maxima", maxima)

    @property
    def n_features(self) -> int:
        return self.minima.shape[0]


@dataclass(frozen=True)
class DatasetBundle:
    """Disjoint train/validation/test splits sharing one normalization."""

    train: Dataset
    validation: Dataset
    test: Dataset
    stats: NormalizationStats
    out_of_range: int = 0


def normalize(data: Dataset) -> tuple[Dataset, NormalizationStats]:
    """Min-max scale every feature to [0, 1] and return the stats used.

    Raises ConstantFeatureError naming the first feature whose column has
    zero range.
    """
    minima = data.features.min(axis=0)
    maxima = data.features.max(axis=0)
    flat = maxima <= minima
    if flat.any():
        name = data.feature_names[int(np.argmax(flat))]
        raise ConstantFeatureError(f"feature '{name}' is constant; cannot min-max scale")
    stats = NormalizationStats(minima, maxima)
    return apply_stats(data, stats), stats


def apply_stats(data: Dataset, stats: NormalizationStats) -> Dataset:
    """Apply a previously computed min-max scaling to another split.

    Values outside the stats' range map outside [0, 1]; that is allowed
    (the map extrapolates linearly) and can be counted afterwards with
    out_of_range_count.
    """
    if data.n_features != stats.n_features:
        raise DimensionMismatchError(
            f"dataset has {data.n_features} features, stats cover {stats.n_features}"
        )
    scaled = (data.features - stats.minima) / (stats.maxima - stats.minima)
    return Dataset(scaled, data.labels, data.feature_names)


def out_of_range_count(data: Dataset) -> int:
    """Number of feature values lying outside [0, 1]."""
    return int(((data.features < 0.0) | (data.features > 1.0)).sum())


def split(
    data: Dataset,
    counts: tuple[int, int, int],
    seed=None,
    sequential: bool = False,
    global_stats: bool = False,
) -> DatasetBundle:
    """Partition into disjoint train/validation/test splits and normalize.

    Parameters
    ----------
    counts : (n_train, n_validation, n_test)
        Exact split sizes; their sum may be less than the sample count
        (leftover rows are dropped).
    seed : int, Generator, or None
        Source for the shuffling permutation. Ignored in sequential mode.
    sequential : bool
        Take contiguous blocks in file order instead of shuffling.
    global_stats : bool
        Compute the min-max stats on all of ``data`` instead of the train
        split only.
    """
    n_train, n_val, n_test = (int(c) for c in counts)
    if min(n_train, n_val, n_test) < 1:
        raise ConfigurationError(f"all split counts must be >= 1, got {counts}")
    total = n_train + n_val + n_test
    if total > data.n_samples:
        raise InsufficientSamplesError(
            f"requested {total} samples ({n_train}/{n_val}/{n_test}) "
            f"but only {data.n_samples} are available"
        )
    if sequential:
        order = np.arange(data.n_samples)
    else:
        order = as_generator(seed).permutation(data.n_samples)
    train = data.take(order[:n_train])
    validation = data.take(order[n_train : n_train + n_val])
    test = data.take(order[n_train + n_val : total])

    if global_stats:
        _, stats = normalize(data)
        train = apply_stats(train, stats)
    else:
        train, stats = normalize(train)
    validation = apply_stats(validation, stats)
    test = apply_stats(test, stats)
    spill = out_of_range_count(validation) + out_of_range_count(test)
    return DatasetBundle(train, validation, test, stats, out_of_range=spill)


def subsample(data: Dataset, n: int, seed=None, stratified: bool = False) -> Dataset:
    """Draw n samples without replacement, optionally preserving the label mix."""
    if not 1 <= n <= data.n_samples:
        raise InsufficientSamplesError(f"cannot draw {n} of {data.n_samples} samples")
    rng = as_generator(seed)
    if not stratified:
        return data.take(rng.choice(data.n_samples, size=n, replace=False))
    ones = np.flatnonzero(data.labels == 1)
    zeros = np.flatnonzero(data.labels == 0)
    n_ones = int(round(n * ones.size / data.n_samples))
    n_ones = min(max(n_ones, n - zeros.size), ones.size)
    picked = np.concatenate([
        rng.choice(ones, size=n_ones, replace=False),
        rng.choice(zeros, size=n - n_ones, replace=False),
    ])
    return data.take(rng.permutation(picked))


def load_csv(path, label_column: str = "label") -> Dataset:
    """Load a headered CSV of numeric features plus a binary label column.

    Feature columns keep their file order. Raises CsvParseError (with the
    line number), NonBinaryLabelError, or MissingColumnError.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvParseError(f"{path}: empty file, expected a header row") from None
        header = [name.strip() for name in header]
        if label_column not in header:
            raise MissingColumnError(
                f"{path}: no '{label_column}' column in header {header}"
            )
        label_idx = header.index(label_column)
        feature_names = tuple(n for i, n in enumerate(header) if i != label_idx)
        rows: list[list[float]] = []
        labels: list[int] = []
        for line_no, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(header):
                raise CsvParseError(
                    f"{path}:{line_no}: expected {len(header)} fields, got {len(record)}"
                )
            try:
                values = [float(cell) for i, cell in enumerate(record) if i != label_idx]
                label = float(record[label_idx])
            except ValueError as exc:
                raise CsvParseError(f"{path}:{line_no}: {exc}") from None
            if label not in (0.0, 1.0):
                raise NonBinaryLabelError(
                    f"{path}:{line_no}: label must be 0 or 1, got {record[label_idx]!r}"
                )
            rows.append(values)
            labels.append(int(label))
    return Dataset(
        np.array(rows, dtype=np.float64).reshape(len(rows), len(feature_names)),
        np.array(labels, dtype=np.int64),
        feature_names,
    )


def save_csv(data: Dataset, path) -> None:
    """Write a Dataset as CSV; floats use repr so load_csv round-trips exactly."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(data.feature_names) + ["label"])
        for x, y in zip(data.features, data.labels):
            writer.writerow([repr(float(v)) for v in x] + [int(y)])


# Fixed hidden labeling rule for the synthetic generator: a conflict-risk
# score, thresholded at a quantile chosen so the requested minority
# fraction survives the label noise.
_SCORE_WEIGHTS = {
    "contingency": 1.4,
    "major_power": 0.9,
    "capability": 0.8,
    "allies": -1.1,
    "democracy": -0.09,
    "dependency": -1.3,
}
_DISTANCE_WEIGHT = -0.75
_INTERACTION_WEIGHT = 0.4


def conflict_score(features: np.ndarray) -> np.ndarray:
    """The generator's deterministic risk score over the 7 synthetic features."""
    allies, contingency, distance, major_power, capability, democracy, dependency = (
        features[:, i] for i in range(7)
    )
    return (
        _SCORE_WEIGHTS["contingency"] * contingency
        + _SCORE_WEIGHTS["major_power"] * major_power
        + _SCORE_WEIGHTS["capability"] * capability
        + _SCORE_WEIGHTS["allies"] * allies
        + _SCORE_WEIGHTS["democracy"] * democracy
        + _SCORE_WEIGHTS["dependency"] * dependency
        + _DISTANCE_WEIGHT * (distance - 2.0)
        + _INTERACTION_WEIGHT * contingency * major_power
    )


def _pre_noise_fraction(minority_fraction: float, noise: float) -> float:
    # Label noise flips both ways; aim the pre-noise positive rate so the
    # post-noise minority frequency matches the request when feasible.
    if noise == 0.5:
        return minority_fraction
    q = (minority_fraction - noise) / (1.0 - 2.0 * noise)
    return float(np.clip(q, 0.0, 1.0))


def synth_conflict(
    n_samples: int,
    minority_fraction: float = DEFAULT_MINORITY_FRACTION,
    noise: float = 0.0,
    rng=None,
) -> Dataset:
    """Generate a 7-feature synthetic conflict-style dataset.

    Features, in order: two binary flags (allies, contingency), a log10
    distance in [2, 4.3], a binary major-power flag, a bounded capability
    ratio, a symmetric democracy score in [-10, 10], and a bounded
    dependency ratio. Labels come from thresholding conflict_score at the
    quantile that yields the requested minority fraction, then flipping
    each with probability ``noise``.

    Draw order on the random stream is fixed: the seven feature columns in
    the order above, then the noise flips.
    """
    if n_samples < 1:
        raise ConfigurationError(f"n_samples must be >= 1, got {n_samples}")
    if not 0.0 < minority_fraction <= 0.5:
        raise ConfigurationError(
            f"minority_fraction must lie in (0, 0.5], got {minority_fraction}"
        )
    if not 0.0 <= noise <= 0.5:
        raise ConfigurationError(f"noise must lie in [0, 0.5], got {noise}")
    rng = as_generator(rng)
    n = int(n_samples)
    allies = rng.integers(0, 2, n).astype(np.float64)
    contingency = rng.integers(0, 2, n).astype(np.float64)
    distance = rng.uniform(2.0, 4.3, n)
    major_power = rng.integers(0, 2, n).astype(np.float64)
    capability = rng.beta(0.6, 0.6, n)
    democracy = rng.uniform(-10.0, 10.0, n)
    dependency = rng.beta(2.0, 5.0, n)
    features = np.column_stack(
        [allies, contingency, distance, major_power, capability, democracy, dependency]
    )

    score = conflict_score(features)
    q = _pre_noise_fraction(minority_fraction, noise)
    n_pos = int(round(q * n))
    ranked = np.sort(score)[::-1]
    threshold = ranked[n_pos] if n_pos < n else -np.inf
    labels = (score > threshold).astype(np.int64)
    if noise > 0.0:
        flips = rng.random(n) < noise
        labels = labels ^ flips
    return Dataset(features, labels, SYNTH_FEATURE_NAMES)
