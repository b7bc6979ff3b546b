"""Layered feedforward networks with frozen logic layers.

A network is a stack of affine layers ``z = W h + b`` followed by an
activation (squashing, a hard cut ramp, or linear).  Layers flagged
``frozen`` hold the weights of a fixed logical operator: loss gradients
propagate *through* them by the chain rule, but no parameter updates
are ever computed or applied for them.

Inputs are the raw 2-D coordinates; the optional squared input
features (for circle-like units) are expanded before the first layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .core import SquashingParams, cut_ramp, squash, squash_partials
from .errors import ConfigError, DomainError, LogicNetError

__all__ = [
    "Squashing",
    "HardCut",
    "Linear",
    "FeatureSpec",
    "raw",
    "squared",
    "LayerSpec",
    "NetworkSpec",
    "Network",
    "ForwardTrace",
    "GradientSet",
    "assemble",
    "forward",
    "backward",
    "sgd_step",
    "predict",
]


@dataclass(frozen=True)
class Squashing:
    params: SquashingParams = SquashingParams()


@dataclass(frozen=True)
class HardCut:
    """Exact cut ramp over [a - lam/2, a + lam/2]; lam = 0 is a step.

    ``a`` may be a per-unit tuple when units in the layer have
    different crisp boundaries (e.g. mixed membership styles).
    """

    a: float | tuple[float, ...] = 0.5
    lam: float = 1.0


@dataclass(frozen=True)
class Linear:
    pass


Activation = Squashing | HardCut | Linear


@dataclass(frozen=True)
class FeatureSpec:
    """One input feature: the raw coordinate or its square."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in ("raw", "squared"):
            raise ConfigError(f"unknown feature kind {self.kind!r}")
        if self.index < 0:
            raise ConfigError("feature index must be non-negative")

    def label(self) -> str:
        name = f"x{self.index + 1}"
        return name if self.kind == "raw" else f"{name}^2"


def raw(index: int) -> FeatureSpec:
    return FeatureSpec("raw", index)


def squared(index: int) -> FeatureSpec:
    return FeatureSpec("squared", index)


@dataclass
class LayerSpec:
    """Weights (out x in), bias (out,), frozen flag and activation.

    ``unit_labels`` carries one interpretability label per unit
    (operator name or atom inequality); ``label`` captions the whole
    layer.
    """

    weights: np.ndarray
    bias: np.ndarray
    frozen: bool = False
    activation: Activation = field(default_factory=Squashing)
    label: str | None = None
    unit_labels: tuple[str, ...] | None = None
    unit_notes: tuple[str, ...] | None = None

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        self.bias = np.asarray(self.bias, dtype=float)
        if self.weights.ndim != 2:
            raise ConfigError("layer weights must be a 2-D matrix")
        if self.bias.shape != (self.weights.shape[0],):
            raise ConfigError("bias length must equal the layer output size")
        if not (np.all(np.isfinite(self.weights)) and np.all(np.isfinite(self.bias))):
            raise ConfigError("layer parameters must be finite")
        if self.frozen and not self.label and not self.unit_labels:
            raise ConfigError("frozen layers must carry an operator label")
        if self.unit_labels is not None and len(self.unit_labels) != self.out_dim:
            raise ConfigError("unit_labels length must equal the layer output size")
        if self.unit_notes is not None and len(self.unit_notes) != self.out_dim:
            raise ConfigError("unit_notes length must equal the layer output size")
        if isinstance(self.activation, HardCut) and isinstance(self.activation.a, tuple):
            if len(self.activation.a) != self.out_dim:
                raise ConfigError("per-unit activation centers must match the layer size")

    @property
    def in_dim(self) -> int:
        return self.weights.shape[1]

    @property
    def out_dim(self) -> int:
        return self.weights.shape[0]


@dataclass
class NetworkSpec:
    input_features: list[FeatureSpec]
    layers: list[LayerSpec]


class Network:
    """Validated, executable network.  Built through ``assemble``."""

    def __init__(self, spec: NetworkSpec):
        if not spec.layers:
            raise ConfigError("a network needs at least one layer")
        if not spec.input_features:
            raise ConfigError("a network needs at least one input feature")
        dim = len(spec.input_features)
        for i, layer in enumerate(spec.layers):
            if layer.in_dim != dim:
                raise ConfigError(
                    f"layer {i} expects {layer.in_dim} inputs but receives {dim}"
                )
            dim = layer.out_dim
        self.input_features = list(spec.input_features)
        self.layers = [
            replace(
                layer,
                weights=layer.weights.copy(),
                bias=layer.bias.copy(),
            )
            for layer in spec.layers
        ]
        for layer in self.layers:
            if layer.frozen:
                layer.weights.flags.writeable = False
                layer.bias.flags.writeable = False
        self.n_inputs = 1 + max(f.index for f in self.input_features)

    @property
    def out_dim(self) -> int:
        return self.layers[-1].out_dim

    def spec(self) -> NetworkSpec:
        return NetworkSpec(list(self.input_features), [
            replace(l, weights=l.weights.copy(), bias=l.bias.copy()) for l in self.layers
        ])

    def expand_features(self, x: np.ndarray) -> np.ndarray:
        cols = []
        for f in self.input_features:
            v = x[:, f.index]
            cols.append(v * v if f.kind == "squared" else v)
        return np.stack(cols, axis=1)


def assemble(spec: NetworkSpec) -> Network:
    """Validate a NetworkSpec and return an executable network."""
    return Network(spec)


def _activate(activation: Activation, z: np.ndarray) -> np.ndarray:
    if isinstance(activation, Squashing):
        return squash(z, activation.params)
    if isinstance(activation, HardCut):
        if isinstance(activation.a, tuple):
            centers = np.asarray(activation.a)
            out = np.empty_like(z)
            for j in range(z.shape[1]):
                out[:, j] = cut_ramp(z[:, j], centers[j], activation.lam)
            return out
        return cut_ramp(z, activation.a, activation.lam)
    return z


def _activation_grad(activation: Activation, z: np.ndarray) -> np.ndarray:
    if isinstance(activation, Squashing):
        return squash_partials(z, activation.params)[0]
    if isinstance(activation, HardCut):
        if activation.lam == 0.0:
            return np.zeros_like(z)
        if isinstance(activation.a, tuple):
            centers = np.asarray(activation.a)
        else:
            centers = np.full(z.shape[1] if z.ndim > 1 else 1, activation.a)
        lo = centers - activation.lam / 2.0
        hi = centers + activation.lam / 2.0
        inside = (z >= lo) & (z <= hi)
        return np.where(inside, 1.0 / activation.lam, 0.0)
    return np.ones_like(z)


@dataclass
class ForwardTrace:
    """Intermediate results of one forward pass over a batch."""

    inputs: np.ndarray
    features: np.ndarray
    pre_activations: list[np.ndarray]
    activations: list[np.ndarray]

    @property
    def output(self) -> np.ndarray:
        return self.activations[-1]


def _as_batch(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("network inputs must be finite")
    if arr.ndim == 1:
        return arr[None, :], True
    if arr.ndim == 2:
        return arr, False
    raise DomainError("network input must be a vector or a batch of vectors")


def forward(net: Network, x) -> ForwardTrace:
    """Run the network, keeping every layer's activations.

    Accepts a single input vector or a (batch, inputs) matrix.
    """
    batch, _ = _as_batch(x)
    if batch.shape[1] != net.n_inputs:
        raise DomainError(
            f"expected {net.n_inputs} raw inputs, got {batch.shape[1]}"
        )
    h = net.expand_features(batch)
    features = h
    zs, hs = [], []
    for layer in net.layers:
        z = h @ layer.weights.T + layer.bias
        h = _activate(layer.activation, z)
        zs.append(z)
        hs.append(h)
    return ForwardTrace(batch, features, zs, hs)


@dataclass
class GradientSet:
    """Weight and bias gradients, keyed by layer index.

    Frozen layers never have an entry.
    """

    entries: dict[int, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)

    def __contains__(self, idx: int) -> bool:
        return idx in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def backward(net: Network, trace: ForwardTrace, target) -> tuple[GradientSet, float]:
    """Mean squared error loss and its gradients for learnable layers.

    The error is computed through every layer (frozen included); the
    chain rule passes through frozen Jacobians but gradient entries are
    emitted only for learnable layers.
    """
    if len(trace.activations) != len(net.layers):
        raise LogicNetError("activation trace does not match the network")
    out = trace.output
    t = np.asarray(target, dtype=float)
    if t.ndim == 0:
        t = t[None]
    if t.ndim == 1:
        t = t[:, None] if out.ndim == 2 and out.shape[1] == 1 else t
    if t.shape != out.shape:
        t = t.reshape(out.shape)
    batch = out.shape[0]
    diff = out - t
    loss = float(np.mean(np.sum(diff * diff, axis=1)))
    grads = GradientSet()
    # d(loss)/d(output); the batch mean folds into the factor.
    dh = 2.0 * diff / batch
    for idx in range(len(net.layers) - 1, -1, -1):
        layer = net.layers[idx]
        z = trace.pre_activations[idx]
        dz = dh * _activation_grad(layer.activation, z)
        if not layer.frozen:
            h_prev = trace.features if idx == 0 else trace.activations[idx - 1]
            grads.entries[idx] = (dz.T @ h_prev, dz.sum(axis=0))
        if idx > 0:
            dh = dz @ layer.weights
    return grads, loss


def sgd_step(net: Network, grads: GradientSet, lr: float) -> Network:
    """Apply one gradient descent update in place; returns the network.

    Frozen layers are bit-identical before and after.
    """
    if lr < 0:
        raise ConfigError("learning rate must be non-negative")
    for idx, (dw, db) in grads.entries.items():
        layer = net.layers[idx]
        if layer.frozen:
            raise LogicNetError(f"gradient entry for frozen layer {idx}")
        if dw.shape != layer.weights.shape or db.shape != layer.bias.shape:
            raise LogicNetError(f"gradient shapes do not match layer {idx}")
        layer.weights -= lr * dw
        layer.bias -= lr * db
    return net


def predict(net: Network, x):
    """Class label (output >= 0.5, ties to 1) and confidence.

    Returns scalars for a single input and arrays for a batch.
    """
    trace = forward(net, x)
    out = trace.output
    conf = out[:, 0] if out.ndim == 2 else out
    labels = (conf >= 0.5).astype(int)
    if np.asarray(x).ndim == 1:
        return int(labels[0]), float(conf[0])
    return labels, conf
