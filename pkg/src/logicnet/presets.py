"""Ready-made expressions and trainable architectures per dataset.

Each dataset kind has a frozen logic expression describing its ground
truth and a trainable counterpart where the first (membership) layer
is learnable while the logic layers stay frozen.
"""

from __future__ import annotations

import numpy as np

from .core import SquashingParams
from .data import DatasetKind
from .errors import ConfigError
from .network import LayerSpec, NetworkSpec, Squashing, raw, squared

__all__ = [
    "PRESET_EXPRESSIONS",
    "trainable_spec",
    "draw_membership",
    "membership_initializer",
]

PRESET_EXPRESSIONS: dict[DatasetKind, str] = {
    DatasetKind.XOR_QUADRANTS: "((x > 0) AND (y > 0)) OR ((x < 0) AND (y < 0))",
    DatasetKind.PREFERENCE: "((x > y) AND (y > -x)) OR ((x < y) AND (y < -x))",
    DatasetKind.CIRCLE: "x^2 + y^2 < 0.25",
    DatasetKind.TRIANGLE: (
        "(y > -0.6) AND (1.4*x + 0.8*y < 0.64) AND (-1.4*x + 0.8*y < 0.64)"
    ),
    DatasetKind.CONCAVE: (
        "((x > -0.8) AND (x < 0.2) AND (y > -0.8) AND (y < 0.2))"
        " OR ((x > -0.8) AND (x < 0.8) AND (y > -0.8) AND (y < -0.3))"
    ),
}


def draw_membership(rng: np.random.Generator, n_units: int, n_features: int):
    """Random membership rows whose ramps straddle the data region.

    Directions are spread evenly with jitter (avoids redundant units),
    magnitudes in [1, 2], and the bias anchors each ramp so the unit is
    confidently active near a random point close to the origin.  With a
    very sharp activation, a unit whose ramp misses the data would get
    an exactly-zero gradient and could never recover, so the usual
    uniform init stalls; see the decision notes.
    """
    if n_features == 2:
        base = rng.uniform(0, 2 * np.pi)
        theta = base + np.arange(n_units) * 2 * np.pi / n_units + rng.normal(0, 0.3, n_units)
        w = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    else:
        w = rng.normal(size=(n_units, n_features))
        w /= np.linalg.norm(w, axis=1, keepdims=True)
    w = w * rng.uniform(1.0, 2.0, n_units)[:, None]
    anchor = rng.uniform(-0.2, 0.2, n_features)
    b = rng.uniform(0.6, 0.9, n_units) - w @ anchor
    return w, b


def membership_initializer(net, rng: np.random.Generator) -> None:
    """Re-draw every learnable layer in place (plateau restarts)."""
    for layer in net.layers:
        if layer.frozen:
            continue
        w, b = draw_membership(rng, layer.out_dim, layer.in_dim)
        layer.weights[...] = w
        layer.bias[...] = b


def _learnable_membership(
    n_units: int, n_features: int, rng: np.random.Generator, act: Squashing
) -> LayerSpec:
    w, b = draw_membership(rng, n_units, n_features)
    return LayerSpec(w, b, frozen=False, activation=act)


def _frozen(weights, bias, labels, act) -> LayerSpec:
    return LayerSpec(
        np.asarray(weights, dtype=float),
        np.asarray(bias, dtype=float),
        frozen=True,
        activation=act,
        label="logic",
        unit_labels=tuple(labels),
    )


def trainable_spec(
    kind: DatasetKind,
    seed: int = 0,
    squash_params: SquashingParams | None = None,
) -> NetworkSpec:
    """Learnable-membership architecture with frozen logic on top.

    XOR/preference: 4 membership units feeding two ANDs and an OR.
    Triangle: 3 membership units into a single 3-ary AND.
    Circle: one membership unit over raw + squared features.
    Concave: 8 membership units, two 4-ary ANDs, an OR.
    """
    act = Squashing(squash_params or SquashingParams())
    rng = np.random.default_rng(seed)
    features = [raw(0), raw(1)]
    if kind in (DatasetKind.XOR_QUADRANTS, DatasetKind.PREFERENCE):
        layers = [
            _learnable_membership(4, 2, rng, act),
            _frozen(
                [[1.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 1.0]],
                [-1.0, -1.0],
                ("AND", "AND"),
                act,
            ),
            _frozen([[1.0, 1.0]], [0.0], ("OR",), act),
        ]
    elif kind == DatasetKind.TRIANGLE:
        layers = [
            _learnable_membership(3, 2, rng, act),
            _frozen([[1.0, 1.0, 1.0]], [-2.0], ("AND",), act),
        ]
    elif kind == DatasetKind.CIRCLE:
        features = [raw(0), raw(1), squared(0), squared(1)]
        layers = [_learnable_membership(1, 4, rng, act)]
    elif kind == DatasetKind.CONCAVE:
        layers = [
            _learnable_membership(8, 2, rng, act),
            _frozen(
                [
                    [1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0],
                    [0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0],
                ],
                [-3.0, -3.0],
                ("AND", "AND"),
                act,
            ),
            _frozen([[1.0, 1.0]], [0.0], ("OR",), act),
        ]
    else:
        raise ConfigError(f"no trainable preset for {kind!r}")
    return NetworkSpec(features, layers)
