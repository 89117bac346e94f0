"""Deterministic derivation of independent child seeds.

Every stage of the pipeline draws from its own stream, derived from one
master seed and an integer key path. Results are therefore identical no
matter how stages are ordered or parallelized.
"""

from __future__ import annotations

import numpy as np


def derive_seed(base: int, *key: int) -> int:
    """Map (base seed, key path) to an independent child seed."""
    ss = np.random.SeedSequence(entropy=int(base), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1)[0])


def derived_rng(base: int, *key: int) -> np.random.Generator:
    """Generator seeded by derive_seed(base, *key)."""
    return np.random.default_rng(derive_seed(base, *key))


def fresh_seed() -> int:
    """A seed drawn from OS entropy, for callers that asked for none."""
    return int(np.random.SeedSequence().generate_state(1)[0])
