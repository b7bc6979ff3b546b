"""Nilpotent logical and multicriteria decision operators.

All operators share the perceptron shape

    f^{-1}[ cut( sum_i w_i * f(x_i) + C ) ]

for a generator f, weights w and a constant C.  The canonical
two-variable rows (for f(x) = x):

    kind            w1     w2     C
    disjunction      1      1     0        [x + y]
    conjunction      1      1    -1        [x + y - 1]
    implication     -1      1     1        [y - x + 1]
    arithmetic mean  0.5    0.5   0        (x + y) / 2
    preference      -0.5    0.5   0.5      (y - x + 1) / 2
    aggregation      1      1    -0.5      [x + y - 1/2]

Min and max are not single perceptrons; they decompose into the nested
cut forms [x + [y - x + 1] - 1] and [x + [y - x]].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .core import GeneratorFunction, IDENTITY, cut
from .errors import ConfigError, DomainError

__all__ = [
    "OperatorKind",
    "OperatorSpec",
    "UnaryOpSpec",
    "ThresholdSpec",
    "MinMaxTemplate",
    "general_op",
    "weighted_general_op",
    "threshold_op",
    "nary_logical",
    "binary_table_op",
    "unary_modifier",
    "min_max_via_cut",
    "operator_to_perceptron",
]


class OperatorKind(str, Enum):
    CONJUNCTION = "conjunction"
    DISJUNCTION = "disjunction"
    IMPLICATION = "implication"
    ARITHMETIC_MEAN = "arithmetic_mean"
    PREFERENCE = "preference"
    AGGREGATION = "aggregation"
    MIN = "min"
    MAX = "max"
    NEGATION = "negation"
    IDENTITY = "identity"


def _unit_values(xs, name: str = "x") -> np.ndarray:
    """Stack inputs into an array with the variable axis first."""
    arr = np.asarray(xs, dtype=float)
    if arr.size == 0:
        raise DomainError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError(f"{name} must lie in [0, 1]")
    return arr


def general_op(nu: float, xs, g: GeneratorFunction = IDENTITY):
    """General nilpotent operator with expectation level nu.

    f^{-1}[ cut( sum f(x_i) - (n - 1) * f(nu) ) ]; conjunctive for
    nu = 1, disjunctive for nu = 0, self-dual at nu = f^{-1}(1/2).
    """
    if not 0.0 <= nu <= 1.0:
        raise DomainError("nu must lie in [0, 1]")
    arr = _unit_values(xs)
    n = arr.shape[0]
    total = np.sum(g.apply(arr), axis=0) - (n - 1) * g.apply(nu)
    return g.invert(cut(total))


def weighted_general_op(nu: float, weights, xs, g: GeneratorFunction = IDENTITY):
    """Weighted general operator f^{-1}[cut(sum w_i (f(x_i) - f(nu)) + f(nu))].

    With a normalized weight vector this reduces to the weighted
    quasi-arithmetic mean f^{-1}(sum w_i f(x_i)).
    """
    if not 0.0 <= nu <= 1.0:
        raise DomainError("nu must lie in [0, 1]")
    w = np.asarray(weights, dtype=float)
    arr = _unit_values(xs)
    if w.ndim != 1 or w.shape[0] != arr.shape[0]:
        raise DomainError("weights and inputs must have the same length")
    fnu = g.apply(nu)
    fx = g.apply(arr)
    total = np.tensordot(w, fx - fnu, axes=(0, 0)) + fnu
    return g.invert(cut(total))


@dataclass(frozen=True)
class ThresholdSpec:
    """Per-input thresholds nu_i plus an output expectation nu.

    The constant is always recomputed from the fields:
    C = f(nu) - sum w_i f(nu_i).
    """

    weights: tuple[float, ...]
    nu_i: tuple[float, ...]
    nu: float

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "nu_i", tuple(float(v) for v in self.nu_i))
        if len(self.weights) != len(self.nu_i):
            raise ConfigError("weights and nu_i must have the same length")
        if not all(0.0 <= v <= 1.0 for v in self.nu_i) or not 0.0 <= self.nu <= 1.0:
            raise ConfigError("thresholds must lie in [0, 1]")

    def constant(self, g: GeneratorFunction = IDENTITY) -> float:
        w = np.asarray(self.weights)
        return float(g.apply(self.nu) - np.sum(w * g.apply(np.asarray(self.nu_i))))


def threshold_op(spec: ThresholdSpec, xs, g: GeneratorFunction = IDENTITY):
    """Threshold-based operator f^{-1}[cut(sum w_i f(x_i) + C)]."""
    arr = _unit_values(xs)
    w = np.asarray(spec.weights, dtype=float)
    if w.shape[0] != arr.shape[0]:
        raise DomainError("inputs do not match the spec arity")
    total = np.tensordot(w, g.apply(arr), axes=(0, 0)) + spec.constant(g)
    return g.invert(cut(total))


_NARY_SHIFT = {
    OperatorKind.CONJUNCTION: lambda n: float(n - 1),
    OperatorKind.DISJUNCTION: lambda n: 0.0,
    OperatorKind.AGGREGATION: lambda n: (n - 1) / 2.0,
}


def nary_logical(kind: OperatorKind, xs, g: GeneratorFunction = IDENTITY):
    """n-ary conjunction / disjunction / aggregation.

    f^{-1}[cut(sum f(x_i) - s)] with s = n-1, 0 and (n-1)/2
    respectively.
    """
    if kind not in _NARY_SHIFT:
        raise ConfigError(f"{kind} is not an n-ary logical operator")
    arr = _unit_values(xs)
    total = np.sum(g.apply(arr), axis=0) - _NARY_SHIFT[kind](arr.shape[0])
    return g.invert(cut(total))


_BINARY_TABLE = {
    OperatorKind.IMPLICATION: (-1.0, 1.0, 1.0),
    OperatorKind.ARITHMETIC_MEAN: (0.5, 0.5, 0.0),
    OperatorKind.PREFERENCE: (-0.5, 0.5, 0.5),
}


def binary_table_op(kind: OperatorKind, x, y, g: GeneratorFunction = IDENTITY):
    """Two-variable table operator: implication, mean or preference."""
    if kind not in _BINARY_TABLE:
        raise ConfigError(f"{kind} is not a binary table operator")
    w1, w2, c = _BINARY_TABLE[kind]
    arr = _unit_values(np.stack([np.asarray(x, dtype=float), np.asarray(y, dtype=float)]))
    total = w1 * g.apply(arr[0]) + w2 * g.apply(arr[1]) + c
    return g.invert(cut(total))


class UnaryKind(str, Enum):
    POSSIBILITY = "possibility"
    NECESSITY = "necessity"
    SHARPNESS = "sharpness"
    CUSTOM = "custom"


@dataclass(frozen=True)
class UnaryOpSpec:
    """Unary modifier f^{-1}[cut(alpha * f(x) + gamma)].

    The named constructors fix gamma: possibility 0, necessity
    1 - alpha, sharpness (1 - alpha)/2 (which keeps the neutral value
    fixed; alpha = 1 is the identity for all three).
    """

    alpha: float
    gamma: float
    kind: UnaryKind = UnaryKind.CUSTOM

    @classmethod
    def possibility(cls, alpha: float) -> "UnaryOpSpec":
        return cls(alpha, 0.0, UnaryKind.POSSIBILITY)

    @classmethod
    def necessity(cls, alpha: float) -> "UnaryOpSpec":
        return cls(alpha, 1.0 - alpha, UnaryKind.NECESSITY)

    @classmethod
    def sharpness(cls, alpha: float) -> "UnaryOpSpec":
        return cls(alpha, (1.0 - alpha) / 2.0, UnaryKind.SHARPNESS)


def unary_modifier(spec: UnaryOpSpec, x, g: GeneratorFunction = IDENTITY):
    """Apply a unary operator to a truth value."""
    arr = _unit_values(np.asarray(x, dtype=float)[None])[0]
    return g.invert(cut(spec.alpha * g.apply(arr) + spec.gamma))


def min_max_via_cut(kind: OperatorKind, x, y):
    """Min or max through nested cutting operations.

    min(x, y) = [x + [y - x + 1] - 1],  max(x, y) = [x + [y - x]].
    """
    arr = _unit_values(np.stack([np.asarray(x, dtype=float), np.asarray(y, dtype=float)]))
    a, b = arr[0], arr[1]
    if kind == OperatorKind.MIN:
        return cut(a + cut(b - a + 1.0) - 1.0)
    if kind == OperatorKind.MAX:
        return cut(a + cut(b - a))
    raise ConfigError(f"{kind} is not min or max")


_INFORMATIONAL_NU = {
    OperatorKind.CONJUNCTION: 1.0,
    OperatorKind.DISJUNCTION: 0.0,
    OperatorKind.IMPLICATION: 1.0,
    OperatorKind.NEGATION: 0.5,
    OperatorKind.IDENTITY: 0.5,
}


@dataclass(frozen=True)
class OperatorSpec:
    """Perceptron form of an operator: weights, constant and metadata.

    ``nu`` is informational only (the expectation level the constant
    encodes); evaluation uses just (weights, constant).
    """

    kind: OperatorKind
    arity: int
    weights: tuple[float, ...]
    constant: float
    nu: float

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if self.arity < 1 or len(self.weights) != self.arity:
            raise ConfigError("weights length must equal arity")

    def evaluate(self, xs, g: GeneratorFunction = IDENTITY):
        arr = _unit_values(xs)
        if arr.shape[0] != self.arity:
            raise DomainError("inputs do not match the spec arity")
        total = np.tensordot(np.asarray(self.weights), g.apply(arr), axes=(0, 0)) + self.constant
        return g.invert(cut(total))


@dataclass(frozen=True)
class MinMaxTemplate:
    """Two-stage perceptron wiring of min/max over inputs (x, y).

    Stage 1 passes x through and computes the inner cut; stage 2 is the
    conjunction (min) or disjunction (max) of the two.
    """

    kind: OperatorKind
    stages: tuple[tuple[OperatorSpec, ...], ...] = field(default=())

    def evaluate(self, x: float, y: float, g: GeneratorFunction = IDENTITY):
        values = np.stack([np.asarray(x, dtype=float), np.asarray(y, dtype=float)])
        for stage in self.stages:
            values = np.stack([unit.evaluate(values, g) for unit in stage])
        return values[0]


def operator_to_perceptron(
    kind: OperatorKind, arity: int = 2, g: GeneratorFunction = IDENTITY
) -> OperatorSpec | MinMaxTemplate:
    """Weights and constant of the perceptron computing ``kind``.

    The (w, C) pairs are generator-independent; ``g`` only fixes the
    informational expectation level for the self-dual operators.
    Min/max cannot be a single perceptron and come back as a two-stage
    template following their nested cut formulas.
    """
    if arity < 1:
        raise ConfigError("arity must be positive")
    nu_star = g.neutral
    if kind in (OperatorKind.CONJUNCTION, OperatorKind.DISJUNCTION, OperatorKind.AGGREGATION):
        shift = _NARY_SHIFT[kind](arity)
        nu = {OperatorKind.CONJUNCTION: 1.0, OperatorKind.DISJUNCTION: 0.0}.get(kind, nu_star)
        return OperatorSpec(kind, arity, (1.0,) * arity, -shift, nu)
    if kind == OperatorKind.ARITHMETIC_MEAN:
        return OperatorSpec(kind, arity, (1.0 / arity,) * arity, 0.0, nu_star)
    if kind in (OperatorKind.IMPLICATION, OperatorKind.PREFERENCE):
        if arity != 2:
            raise ConfigError(f"{kind.value} is binary only")
        w1, w2, c = _BINARY_TABLE[kind]
        nu = _INFORMATIONAL_NU.get(kind, nu_star)
        return OperatorSpec(kind, 2, (w1, w2), c, nu)
    if kind == OperatorKind.NEGATION:
        if arity != 1:
            raise ConfigError("negation is unary")
        return OperatorSpec(kind, 1, (-1.0,), 1.0, 0.5)
    if kind == OperatorKind.IDENTITY:
        if arity != 1:
            raise ConfigError("identity passthrough is unary")
        return OperatorSpec(kind, 1, (1.0,), 0.0, 0.5)
    if kind in (OperatorKind.MIN, OperatorKind.MAX):
        if arity != 2:
            raise ConfigError(f"{kind.value} is binary only")
        passthrough = OperatorSpec(OperatorKind.IDENTITY, 2, (1.0, 0.0), 0.0, 0.5)
        inner_c = 1.0 if kind == OperatorKind.MIN else 0.0
        inner = OperatorSpec(OperatorKind.IMPLICATION, 2, (-1.0, 1.0), inner_c, 1.0)
        outer_kind = (
            OperatorKind.CONJUNCTION if kind == OperatorKind.MIN else OperatorKind.DISJUNCTION
        )
        outer = operator_to_perceptron(outer_kind, 2, g)
        assert isinstance(outer, OperatorSpec)
        return MinMaxTemplate(kind, ((passthrough, inner), (outer,)))
    raise ConfigError(f"unsupported operator kind {kind!r}")
