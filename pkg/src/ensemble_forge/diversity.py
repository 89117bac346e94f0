"""Kohavi-Wolpert variance over binary identity descriptors.

The diversity of a set of L classifiers is measured on the L x N matrix of
their stacked descriptors (N = 12 bit positions):

    kw = (1 / (N * L^2)) * sum_j  l_j * (L - l_j)

where l_j counts the 1-bits in column j. Each column contributes at most
L^2 / 4, so kw always lies in [0, 0.25]; it is 0 exactly when all rows are
identical. Integer column counts are accumulated exactly and divided once,
so the result does not depend on summation order.
"""

from __future__ import annotations

import itertools
from math import comb

import numpy as np

from ._validation import check_bit_matrix
from .errors import SizeLimitError

#: Largest descriptor list exhaustive_subset_kw will enumerate over.
MAX_EXHAUSTIVE_POOL = 16

#: Default cap on the number of enumerated combinations.
DEFAULT_COMBINATION_CAP = 10_000


def column_count(matrix, j: int) -> int:
    """Number of 1-bits among the L classifiers at bit position j.

    Parameters
    ----------
    matrix : array-like of shape (L, N)
        Stacked descriptors, one classifier per row, entries in {0, 1}.
    j : int
        Bit position, 0 <= j < N.

    Returns
    -------
    int in [0, L].
    """
    m = check_bit_matrix(matrix)
    if not 0 <= j < m.shape[1]:
        raise IndexError(f"bit position {j} out of range for {m.shape[1]} columns")
    return int(m[:, j].sum())


def kw_variance(matrix) -> float:
    """Kohavi-Wolpert variance of a stacked descriptor matrix.

    Parameters
    ----------
    matrix : array-like of shape (L, N)
        One descriptor per row, entries in {0, 1}.

    Returns
    -------
    float in [0, 0.25].
    """
    m = check_bit_matrix(matrix)
    n_classifiers, n_bits = m.shape
    counts = m.sum(axis=0, dtype=np.int64)
    total = int((counts * (n_classifiers - counts)).sum())
    return total / (n_bits * n_classifiers * n_classifiers)


def descriptor_matrix(descriptors) -> np.ndarray:
    """Stack identity descriptors into an (L, 12) uint8 bit matrix."""
    return np.array([d.bits for d in descriptors], dtype=np.uint8)


def subset_kw(matrix: np.ndarray, indices) -> float:
    """kw_variance of a row subset of an already-validated bit matrix.

    Fast path used by the genetic search; ``matrix`` must come from
    check_bit_matrix or descriptor_matrix.
    """
    sub = matrix[np.asarray(indices, dtype=np.intp)]
    k, n_bits = sub.shape
    counts = sub.sum(axis=0, dtype=np.int64)
    total = int((counts * (k - counts)).sum())
    return total / (n_bits * k * k)


def exhaustive_subset_kw(
    descriptors,
    k: int,
    cap: int = DEFAULT_COMBINATION_CAP,
) -> list[tuple[tuple[int, ...], float]]:
    """Enumerate the kw of every k-subset of a small descriptor list.

    Serves as the brute-force reference that the genetic search is checked
    against, and as the source of provably achievable diversity targets.

    Returns one ``(index_subset, kw)`` entry per combination, sorted by kw
    ascending with ties broken by lexicographic subset order.

    Raises SizeLimitError when the list exceeds 16 descriptors or the
    number of combinations would exceed ``cap``.
    """
    n = len(descriptors)
    if not 1 <= k <= n:
        raise ValueError(f"subset size k={k} must lie in [1, {n}]")
    if n > MAX_EXHAUSTIVE_POOL:
        raise SizeLimitError(
            f"exhaustive enumeration supports at most {MAX_EXHAUSTIVE_POOL} "
            f"descriptors, got {n}"
        )
    n_combinations = comb(n, k)
    if n_combinations > cap:
        raise SizeLimitError(
            f"C({n}, {k}) = {n_combinations} exceeds the cap of {cap}"
        )
    matrix = descriptor_matrix(descriptors)
    entries = [
        (subset, subset_kw(matrix, subset))
        for subset in itertools.combinations(range(n), k)
    ]
    entries.sort(key=lambda e: (e[1], e[0]))
    return entries
