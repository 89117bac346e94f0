"""From-scratch single-hidden-layer perceptrons.

The network maps d inputs through a tanh hidden layer of M units to two
output units, closed by one of three outer activations (linear, logistic,
softmax). Training is plain full-batch gradient descent on the mean
sum-of-squares loss, which keeps runs deterministic for a fixed seed and
makes the learning rate (one of the three varied architecture dimensions)
directly meaningful.

Hard labels are argmax over the two outputs, with exact ties resolved to
class 0.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import as_generator, check_features, check_vector
from .data import Dataset
from .errors import (
    ConfigurationError,
    DegenerateDataWarning,
    DimensionMismatchError,
    EmptySplitError,
)
from .ids import Activation, ClassifierSpec, IdentityDescriptor

N_OUTPUTS = 2


@dataclass
class MlpNetwork:
    """Weights and shape of one perceptron.

    w1 is (hidden_dim, input_dim), w2 is (2, hidden_dim); b1 and b2 are the
    matching bias vectors.
    """

    input_dim: int
    hidden_dim: int
    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray
    activation: Activation
    learning_rate: float

    def is_finite(self) -> bool:
        return bool(
            np.isfinite(self.w1).all()
            and np.isfinite(self.b1).all()
            and np.isfinite(self.w2).all()
            and np.isfinite(self.b2).all()
        )


@dataclass
class Gradients:
    dw1: np.ndarray
    db1: np.ndarray
    dw2: np.ndarray
    db2: np.ndarray


@dataclass(frozen=True)
class TrainedClassifier:
    """A pool member: spec, its descriptor, the fitted network, and its
    misclassification rate on the validation split."""

    spec: ClassifierSpec
    descriptor: IdentityDescriptor
    network: MlpNetwork
    validation_error: float


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _softmax(z: np.ndarray) -> np.ndarray:
    shifted = z - z.max(axis=1, keepdims=True)
    ez = np.exp(shifted)
    return ez / ez.sum(axis=1, keepdims=True)


def _outer(activation: Activation, z: np.ndarray) -> np.ndarray:
    if activation is Activation.LINEAR:
        return z
    if activation is Activation.LOGISTIC:
        return _sigmoid(z)
    return _softmax(z)


def _check_batch(network: MlpNetwork, X: np.ndarray) -> np.ndarray:
    X = check_features(X)
    if X.shape[1] != network.input_dim:
        raise DimensionMismatchError(
            f"network expects {network.input_dim} inputs, got {X.shape[1]}"
        )
    return X


def forward_batch(network: MlpNetwork, X) -> np.ndarray:
    """Outputs for a batch of inputs, shape (n, 2)."""
    X = _check_batch(network, X)
    hidden = np.tanh(X @ network.w1.T + network.b1)
    return _outer(network.activation, hidden @ network.w2.T + network.b2)


def forward(network: MlpNetwork, x) -> np.ndarray:
    """Outputs for a single input vector, shape (2,)."""
    x = check_vector(x, network.input_dim)
    return forward_batch(network, x[None, :])[0]


def one_hot_targets(labels: np.ndarray) -> np.ndarray:
    """Map binary labels to two-column one-hot targets."""
    targets = np.zeros((labels.shape[0], N_OUTPUTS))
    targets[np.arange(labels.shape[0]), labels] = 1.0
    return targets


def sum_of_squares_loss(network: MlpNetwork, X, targets) -> float:
    """Mean over the batch of the summed squared output error."""
    y = forward_batch(network, X)
    return float(((y - targets) ** 2).sum(axis=1).mean())


def loss_gradient(network: MlpNetwork, X, targets) -> Gradients:
    """Exact gradient of sum_of_squares_loss w.r.t. every weight and bias."""
    X = _check_batch(network, X)
    if X.shape[0] == 0:
        raise EmptySplitError("gradient needs a nonempty batch")
    targets = np.asarray(targets, dtype=np.float64)
    if targets.shape != (X.shape[0], N_OUTPUTS):
        raise DimensionMismatchError(
            f"targets must have shape {(X.shape[0], N_OUTPUTS)}, got {targets.shape}"
        )
    batch = X.shape[0]
    z1 = X @ network.w1.T + network.b1
    hidden = np.tanh(z1)
    z2 = hidden @ network.w2.T + network.b2
    y = _outer(network.activation, z2)

    dy = 2.0 * (y - targets) / batch
    if network.activation is Activation.LINEAR:
        g2 = dy
    elif network.activation is Activation.LOGISTIC:
        g2 = dy * y * (1.0 - y)
    else:
        # softmax Jacobian: dy_k/dz_m = y_k (delta_km - y_m)
        g2 = y * (dy - (dy * y).sum(axis=1, keepdims=True))
    dw2 = g2.T @ hidden
    db2 = g2.sum(axis=0)
    g1 = (g2 @ network.w2) * (1.0 - hidden**2)
    dw1 = g1.T @ X
    db1 = g1.sum(axis=0)
    return Gradients(dw1, db1, dw2, db2)


def init_network(spec: ClassifierSpec, input_dim: int, rng) -> MlpNetwork:
    """Fresh network with weights uniform in +-1/sqrt(fan_in).

    Draw order on the random stream is fixed: w1, b1, w2, b2.
    """
    rng = as_generator(rng)
    m = spec.hidden_nodes
    s1 = 1.0 / np.sqrt(input_dim)
    s2 = 1.0 / np.sqrt(m)
    return MlpNetwork(
        input_dim=input_dim,
        hidden_dim=m,
        w1=rng.uniform(-s1, s1, size=(m, input_dim)),
        b1=rng.uniform(-s1, s1, size=m),
        w2=rng.uniform(-s2, s2, size=(N_OUTPUTS, m)),
        b2=rng.uniform(-s2, s2, size=N_OUTPUTS),
        activation=spec.activation,
        learning_rate=spec.learning_rate,
    )


def train(spec: ClassifierSpec, train_split: Dataset, rng, epochs: int = 200) -> MlpNetwork:
    """Fit a network to a split by full-batch gradient descent.

    Deterministic for a fixed seed. Warns (DegenerateDataWarning) and
    proceeds when the split holds a single class.
    """
    if epochs < 1:
        raise ConfigurationError(f"epochs must be >= 1, got {epochs}")
    if train_split.n_samples == 0:
        raise EmptySplitError("cannot train on an empty split")
    if np.unique(train_split.labels).size < 2:
        warnings.warn(
            "training split contains a single class; the fit is degenerate",
            DegenerateDataWarning,
            stacklevel=2,
        )
    network = init_network(spec, train_split.n_features, rng)
    X = train_split.features
    targets = one_hot_targets(train_split.labels)
    lr = network.learning_rate
    for _ in range(epochs):
        g = loss_gradient(network, X, targets)
        network.w1 -= lr * g.dw1
        network.b1 -= lr * g.db1
        network.w2 -= lr * g.dw2
        network.b2 -= lr * g.db2
    return network


def predict_labels(network: MlpNetwork, X) -> np.ndarray:
    """Hard labels for a batch; ties go to class 0."""
    y = forward_batch(network, X)
    return (y[:, 1] > y[:, 0]).astype(np.int64)


def predict_label(network: MlpNetwork, x) -> int:
    """Hard label for a single input; a tie returns 0."""
    x = check_vector(x, network.input_dim)
    return int(predict_labels(network, x[None, :])[0])


def classification_error(network: MlpNetwork, split: Dataset) -> float:
    """Fraction of the split misclassified by hard predictions."""
    if split.n_samples == 0:
        raise EmptySplitError("cannot score an empty split")
    predicted = predict_labels(network, split.features)
    return float((predicted != split.labels).mean())
