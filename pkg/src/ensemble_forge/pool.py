"""Construction and persistence of the trained classifier bank.

A pool is built by repeatedly drawing a random architecture, training it,
and keeping it only if its validation misclassification rate beats the
error cap (default 0.45). Rejected attempts are resampled fresh, which
maximizes structural variety. Each attempt consumes its own random stream
derived from (master seed, attempt index), so the result is independent of
training order.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .data import DatasetBundle
from .diversity import descriptor_matrix, kw_variance
from .errors import (
    ConfigurationError,
    ExhaustionError,
    PoolChecksumError,
    PoolFormatError,
    PoolVersionError,
)
from .ids import Activation, ClassifierSpec, IdentityDescriptor, encode, random_spec
from .mlp import MlpNetwork, TrainedClassifier, classification_error, train
from .seeding import derive_seed, derived_rng

POOL_FORMAT = "ensemble-forge-pool"
POOL_VERSION = 1


@dataclass(frozen=True)
class PoolConfig:
    """Knobs for pool construction.

    ``max_attempts`` defaults to 20x the pool size. ``spec_override`` pins
    every member to one architecture (useful for degenerate baselines).
    """

    size: int = 60
    error_cap: float = 0.45
    max_attempts: int | None = None
    epochs: int = 200
    spec_override: ClassifierSpec | None = None

    def attempt_budget(self) -> int:
        return self.max_attempts if self.max_attempts is not None else 20 * self.size


@dataclass(frozen=True)
class Pool:
    """An immutable bank of trained classifiers."""

    classifiers: tuple[TrainedClassifier, ...]
    master_seed: int
    rejections: int
    pool_kw: float
    config: PoolConfig = field(default_factory=PoolConfig)

    @property
    def size(self) -> int:
        return len(self.classifiers)

    @property
    def input_dim(self) -> int:
        return self.classifiers[0].network.input_dim

    @property
    def descriptors(self) -> tuple[IdentityDescriptor, ...]:
        return tuple(c.descriptor for c in self.classifiers)

    def descriptor_matrix(self) -> np.ndarray:
        return descriptor_matrix(self.descriptors)


def build_pool(config: PoolConfig, data: DatasetBundle, seed: int) -> Pool:
    """Fill a pool of config.size classifiers passing the error cap.

    Raises ExhaustionError when the attempt budget runs out first; that
    signals the data is too hard for the cap.
    """
    if config.size < 1:
        raise ConfigurationError(f"pool size must be >= 1, got {config.size}")
    input_dim = data.train.n_features
    accepted: list[TrainedClassifier] = []
    rejections = 0
    budget = config.attempt_budget()
    for attempt in range(budget):
        rng = derived_rng(seed, attempt)
        spec = config.spec_override or random_spec(rng, input_dim)
        network = train(spec, data.train, rng, config.epochs)
        error = classification_error(network, data.validation) if network.is_finite() else 1.0
        if network.is_finite() and error < config.error_cap:
            accepted.append(
                TrainedClassifier(spec, encode(spec, input_dim), network, error)
            )
            if len(accepted) == config.size:
                break
        else:
            rejections += 1
    if len(accepted) < config.size:
        raise ExhaustionError(
            f"only {len(accepted)}/{config.size} classifiers beat the "
            f"{config.error_cap} error cap within {budget} attempts"
        )
    members = tuple(accepted)
    return Pool(
        classifiers=members,
        master_seed=int(seed),
        rejections=rejections,
        pool_kw=kw_variance(descriptor_matrix([c.descriptor for c in members])),
        config=config,
    )


def candidate_seeds(seed: int, candidates: int) -> list[int]:
    """Per-candidate master seeds; candidate 0 reuses the seed itself."""
    if candidates < 1:
        raise ConfigurationError(f"candidates must be >= 1, got {candidates}")
    extra = [derive_seed(seed, 1, i) for i in range(candidates - 1)]
    return [int(seed)] + extra


def build_max_diversity_pool(
    config: PoolConfig,
    data: DatasetBundle,
    seed: int,
    candidates: int = 5,
) -> Pool:
    """Build several independent pools and keep the most diverse one.

    Ties go to the lowest candidate index; with candidates=1 this is
    exactly build_pool.
    """
    best: Pool | None = None
    for cand_seed in candidate_seeds(seed, candidates):
        pool = build_pool(config, data, cand_seed)
        if best is None or pool.pool_kw > best.pool_kw:
            best = pool
    return best


def _spec_to_dict(spec: ClassifierSpec | None):
    if spec is None:
        return None
    return {
        "hidden_nodes": spec.hidden_nodes,
        "activation": spec.activation.value,
        "learning_rate_index": spec.learning_rate_index,
    }


def _spec_from_dict(d) -> ClassifierSpec | None:
    if d is None:
        return None
    return ClassifierSpec(
        hidden_nodes=int(d["hidden_nodes"]),
        activation=Activation(d["activation"]),
        learning_rate_index=int(d["learning_rate_index"]),
    )


def _pool_payload(pool: Pool) -> dict:
    return {
        "config": {
            "size": pool.config.size,
            "error_cap": pool.config.error_cap,
            "max_attempts": pool.config.max_attempts,
            "epochs": pool.config.epochs,
            "spec_override": _spec_to_dict(pool.config.spec_override),
        },
        "master_seed": pool.master_seed,
        "rejections": pool.rejections,
        "pool_kw": pool.pool_kw,
        "input_dim": pool.input_dim,
        "classifiers": [
            {
                "descriptor": c.descriptor.to_string(),
                "spec": _spec_to_dict(c.spec),
                "validation_error": c.validation_error,
                "w1": c.network.w1.tolist(),
                "b1": c.network.b1.tolist(),
                "w2": c.network.w2.tolist(),
                "b2": c.network.b2.tolist(),
            }
            for c in pool.classifiers
        ],
    }


def _canonical(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def save_pool(pool: Pool, path) -> None:
    """Persist a pool as versioned, checksummed JSON.

    Floats are written via repr, so a load reproduces every weight,
    validation error, and the pool kw bit-exactly.
    """
    payload = _pool_payload(pool)
    wrapper = {
        "format": POOL_FORMAT,
        "version": POOL_VERSION,
        "checksum": hashlib.sha256(_canonical(payload).encode("utf-8")).hexdigest(),
        "payload": payload,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(wrapper, fh, sort_keys=True)
        fh.write("\n")


def load_pool(path) -> Pool:
    """Load a pool saved by save_pool, verifying version and checksum."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        wrapper = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PoolFormatError(f"{path}: not a valid pool file ({exc})") from None
    if not isinstance(wrapper, dict) or wrapper.get("format") != POOL_FORMAT:
        raise PoolFormatError(f"{path}: missing '{POOL_FORMAT}' format marker")
    if wrapper.get("version") != POOL_VERSION:
        raise PoolVersionError(
            f"{path}: format version {wrapper.get('version')!r}, expected {POOL_VERSION}"
        )
    payload = wrapper.get("payload")
    if not isinstance(payload, dict):
        raise PoolFormatError(f"{path}: missing payload")
    digest = hashlib.sha256(_canonical(payload).encode("utf-8")).hexdigest()
    if digest != wrapper.get("checksum"):
        raise PoolChecksumError(f"{path}: checksum mismatch; file corrupted?")

    try:
        cfg = payload["config"]
        config = PoolConfig(
            size=int(cfg["size"]),
            error_cap=float(cfg["error_cap"]),
            max_attempts=cfg["max_attempts"],
            epochs=int(cfg["epochs"]),
            spec_override=_spec_from_dict(cfg["spec_override"]),
        )
        input_dim = int(payload["input_dim"])
        members = []
        for rec in payload["classifiers"]:
            spec = _spec_from_dict(rec["spec"])
            descriptor = IdentityDescriptor.from_string(rec["descriptor"])
            if encode(spec, input_dim) != descriptor:
                raise PoolFormatError(
                    f"{path}: descriptor {rec['descriptor']} does not match its spec"
                )
            network = MlpNetwork(
                input_dim=input_dim,
                hidden_dim=spec.hidden_nodes,
                w1=np.array(rec["w1"], dtype=np.float64),
                b1=np.array(rec["b1"], dtype=np.float64),
                w2=np.array(rec["w2"], dtype=np.float64),
                b2=np.array(rec["b2"], dtype=np.float64),
                activation=spec.activation,
                learning_rate=spec.learning_rate,
            )
            members.append(
                TrainedClassifier(spec, descriptor, network, float(rec["validation_error"]))
            )
        pool = Pool(
            classifiers=tuple(members),
            master_seed=int(payload["master_seed"]),
            rejections=int(payload["rejections"]),
            pool_kw=float(payload["pool_kw"]),
            config=config,
        )
    except PoolFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise PoolFormatError(f"{path}: malformed pool payload ({exc})") from None
    recomputed = kw_variance(pool.descriptor_matrix())
    if abs(recomputed - pool.pool_kw) > 1e-12:
        raise PoolFormatError(
            f"{path}: stored pool_kw {pool.pool_kw} disagrees with descriptors "
            f"({recomputed})"
        )
    return pool
