"""12-bit identity descriptors for classifier architectures.

Every classifier in a pool is fingerprinted by a fixed-width binary
descriptor so that structural diversity can be computed bitwise:

    bit 0       machine type, always 1 (only MLPs exist here)
    bits 1-5    hidden-node count, 5-bit unsigned binary, MSB first
    bits 6-8    one-hot outer activation: linear=100, logistic=010, softmax=001
    bits 9-11   one-hot learning rate:    0.03=100,   0.02=010,    0.01=001

The hidden-node count is bounded by the 5-bit field (at most 30) from above
and must exceed the input feature count from below, so weak under-sized
networks never enter a pool.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from ._validation import as_generator
from .errors import ConfigurationError, InvalidSpecError, MalformedDescriptorError

DESCRIPTOR_LENGTH = 12
MAX_HIDDEN_NODES = 30

#: Canonical learning-rate table; specs store an index into it.
LEARNING_RATES = (0.01, 0.02, 0.03)


class MachineType(enum.Enum):
    MLP = "mlp"


class Activation(enum.Enum):
    LINEAR = "linear"
    LOGISTIC = "logistic"
    SOFTMAX = "softmax"


#: One-hot order of the activation bits (bit 6 = linear, 7 = logistic, 8 = softmax).
ACTIVATION_ORDER = (Activation.LINEAR, Activation.LOGISTIC, Activation.SOFTMAX)


@dataclass(frozen=True)
class ClassifierSpec:
    """Architecture parameters of one pool member.

    ``learning_rate_index`` indexes ``LEARNING_RATES``; the float value is
    available through :attr:`learning_rate`.
    """

    hidden_nodes: int
    activation: Activation
    learning_rate_index: int
    machine_type: MachineType = field(default=MachineType.MLP)

    @property
    def learning_rate(self) -> float:
        return LEARNING_RATES[self.learning_rate_index]


@dataclass(frozen=True)
class IdentityDescriptor:
    """An ordered sequence of exactly 12 binary values.

    Construction only checks shape (12 entries, each 0 or 1); semantic
    validity (one-hot groups, node range) is checked by :func:`decode`,
    which lets tests feed deliberately malformed descriptors through it.
    """

    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != DESCRIPTOR_LENGTH:
            raise MalformedDescriptorError(
                f"descriptor must have {DESCRIPTOR_LENGTH} bits, got {len(self.bits)}"
            )
        if any(b not in (0, 1) for b in self.bits):
            raise MalformedDescriptorError("descriptor bits must be 0 or 1")

    @classmethod
    def from_string(cls, text: str) -> "IdentityDescriptor":
        """Parse the text form: 12 characters of '0'/'1', layout bit 0 first."""
        if len(text) != DESCRIPTOR_LENGTH or set(text) - {"0", "1"}:
            raise MalformedDescriptorError(f"not a 12-character bit string: {text!r}")
        return cls(tuple(int(c) for c in text))

    def to_string(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __str__(self) -> str:
        return self.to_string()


def _check_spec(spec: ClassifierSpec, input_dim: int) -> None:
    if spec.machine_type is not MachineType.MLP:
        raise InvalidSpecError(f"unsupported machine type: {spec.machine_type}")
    if not isinstance(spec.activation, Activation):
        raise InvalidSpecError(f"unknown activation: {spec.activation!r}")
    if spec.learning_rate_index not in (0, 1, 2):
        raise InvalidSpecError(
            f"learning-rate index must be 0, 1 or 2, got {spec.learning_rate_index}"
        )
    lo, hi = input_dim + 1, MAX_HIDDEN_NODES
    if not lo <= spec.hidden_nodes <= hi:
        raise InvalidSpecError(
            f"hidden_nodes must lie in [{lo}, {hi}] for {input_dim} input features, "
            f"got {spec.hidden_nodes}"
        )


def encode(spec: ClassifierSpec, input_dim: int = 7) -> IdentityDescriptor:
    """Encode a spec into its 12-bit identity descriptor.

    Raises InvalidSpecError if the spec violates its invariants for the
    given input dimensionality.
    """
    _check_spec(spec, input_dim)
    bits = [1]
    bits.extend((spec.hidden_nodes >> shift) & 1 for shift in (4, 3, 2, 1, 0))
    act = [0, 0, 0]
    act[ACTIVATION_ORDER.index(spec.activation)] = 1
    rate = [0, 0, 0]
    rate[2 - spec.learning_rate_index] = 1
    return IdentityDescriptor(tuple(bits + act + rate))


def decode(descriptor: IdentityDescriptor, input_dim: int = 7) -> ClassifierSpec:
    """Decode a descriptor back into a spec.

    Raises MalformedDescriptorError on any invariant violation: cleared
    machine-type bit, non-one-hot activation or rate group, or a
    hidden-node count outside [input_dim + 1, 30].
    """
    bits = descriptor.bits
    if bits[0] != 1:
        raise MalformedDescriptorError("machine-type bit (bit 0) must be 1")
    act_group = bits[6:9]
    rate_group = bits[9:12]
    if sum(act_group) != 1:
        raise MalformedDescriptorError(f"activation bits must be one-hot, got {act_group}")
    if sum(rate_group) != 1:
        raise MalformedDescriptorError(f"learning-rate bits must be one-hot, got {rate_group}")
    hidden = 0
    for b in bits[1:6]:
        hidden = (hidden << 1) | b
    lo, hi = input_dim + 1, MAX_HIDDEN_NODES
    if not lo <= hidden <= hi:
        raise MalformedDescriptorError(
            f"hidden-node bits decode to {hidden}, outside [{lo}, {hi}]"
        )
    return ClassifierSpec(
        hidden_nodes=hidden,
        activation=ACTIVATION_ORDER[act_group.index(1)],
        learning_rate_index=2 - rate_group.index(1),
    )


def random_spec(rng, input_dim: int) -> ClassifierSpec:
    """Draw a spec uniformly over its legal domain.

    Consumption order on the random stream is fixed: hidden nodes, then
    activation, then learning rate.
    """
    if input_dim + 1 > MAX_HIDDEN_NODES:
        raise ConfigurationError(
            f"input_dim {input_dim} leaves no legal hidden-node count "
            f"(need input_dim + 1 <= {MAX_HIDDEN_NODES})"
        )
    rng = as_generator(rng)
    hidden = int(rng.integers(input_dim + 1, MAX_HIDDEN_NODES + 1))
    activation = ACTIVATION_ORDER[int(rng.integers(0, 3))]
    rate_index = int(rng.integers(0, 3))
    return ClassifierSpec(hidden, activation, rate_index)


def all_valid_specs(input_dim: int = 7):
    """Enumerate every valid spec for the given input dimensionality."""
    for hidden in range(input_dim + 1, MAX_HIDDEN_NODES + 1):
        for activation in ACTIVATION_ORDER:
            for rate_index in range(len(LEARNING_RATES)):
                yield ClassifierSpec(hidden, activation, rate_index)
