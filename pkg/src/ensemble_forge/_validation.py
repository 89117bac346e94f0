"""Input validation helpers, in the spirit of sklearn.utils.validation."""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError


def as_generator(seed) -> np.random.Generator:
    """Return a numpy Generator from a seed, SeedSequence, or Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def check_features(X) -> np.ndarray:
    """Coerce X to a 2-D float64 array of finite values."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise DimensionMismatchError(f"feature matrix must be 2-D, got ndim={X.ndim}")
    if not np.all(np.isfinite(X)):
        raise ValueError("feature matrix contains NaN or infinite values")
    return X


def check_labels(y, n_samples: int | None = None) -> np.ndarray:
    """Coerce y to a 1-D int array of {0, 1} labels."""
    y = np.asarray(y)
    if y.ndim != 1:
        raise DimensionMismatchError(f"label vector must be 1-D, got ndim={y.ndim}")
    if n_samples is not None and y.shape[0] != n_samples:
        raise DimensionMismatchError(
            f"labels have {y.shape[0]} entries, expected {n_samples}"
        )
    out = y.astype(np.int64, copy=True)
    if not np.array_equal(out, y) or not np.isin(out, (0, 1)).all():
        raise ValueError("labels must be binary (0 or 1)")
    return out


def check_vector(x, dim: int) -> np.ndarray:
    """Coerce x to a 1-D float64 vector of the given length."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != dim:
        raise DimensionMismatchError(f"expected vector of length {dim}, got shape {x.shape}")
    return x


def check_bit_matrix(matrix) -> np.ndarray:
    """Coerce a descriptor matrix to 2-D uint8 with entries in {0, 1}.

    Rows are classifiers, columns are descriptor bit positions.
    """
    m = np.asarray(matrix)
    if m.ndim != 2:
        raise DimensionMismatchError(f"bit matrix must be 2-D, got ndim={m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionMismatchError(f"bit matrix must be non-empty, got shape {m.shape}")
    out = m.astype(np.uint8)
    if not np.array_equal(out, m) or out.max(initial=0) > 1:
        raise ValueError("bit matrix entries must be 0 or 1")
    return out
