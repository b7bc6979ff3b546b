"""Scalar primitives of the nilpotent logic framework.

Everything here is a pure function of its arguments and accepts either
Python floats or numpy arrays (broadcasting elementwise).  The three
building blocks are:

* the cutting function ``[x]`` that clamps a real to [0, 1] and gives
  nilpotent operators their perceptron form,
* the squashing function, a differentiable sigmoid-based approximation
  of the cutting ramp with center ``a``, width ``lam`` and sharpness
  ``beta``, together with its analytic partial derivatives,
* normalized generator functions (increasing bijections of [0, 1]) and
  the strong negation they induce.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError

__all__ = [
    "SquashingParams",
    "GeneratorFunction",
    "IDENTITY",
    "power_generator",
    "cut",
    "cut_ramp",
    "sigmoid",
    "softplus",
    "squash",
    "squash_partials",
]


def _check_finite(x, name: str):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr


def _maybe_scalar(arr: np.ndarray, like) -> float | np.ndarray:
    if np.isscalar(like) or (isinstance(like, np.ndarray) and like.ndim == 0):
        return float(arr)
    return arr


def cut(x):
    """Cutting operation: 0 for x < 0, x on [0, 1], 1 for x > 1."""
    arr = _check_finite(x, "x")
    return _maybe_scalar(np.clip(arr, 0.0, 1.0), x)


def cut_ramp(x, a: float = 0.5, lam: float = 1.0):
    """Generalized cutting ramp rising from 0 at a - lam/2 to 1 at a + lam/2.

    With the defaults (a=0.5, lam=1) this is exactly ``cut``.  ``lam=0``
    degenerates to a unit step at ``a`` (value 0.5 on the boundary),
    used for crisp membership evaluation.
    """
    arr = _check_finite(x, "x")
    if lam < 0:
        raise ConfigError("lam must be >= 0")
    if lam == 0.0:
        out = np.where(arr > a, 1.0, np.where(arr < a, 0.0, 0.5))
        return _maybe_scalar(out, x)
    return _maybe_scalar(np.clip((arr - (a - lam / 2.0)) / lam, 0.0, 1.0), x)


def sigmoid(x, d: float = 0.0, beta: float = 1.0):
    """Logistic function 1 / (1 + exp(-beta * (x - d))).

    Evaluated in the overflow-free branch form; saturates to exactly
    0.0 / 1.0 in floating point for large |beta * (x - d)|.
    """
    if beta <= 0:
        raise ConfigError("beta must be positive")
    z = beta * (_check_finite(x, "x") - d)
    flat = np.atleast_1d(z).astype(float)
    out = np.empty_like(flat)
    pos = flat >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-flat[pos]))
    ez = np.exp(flat[~pos])
    out[~pos] = ez / (1.0 + ez)
    return _maybe_scalar(out.reshape(np.shape(z)), x)


def softplus(t):
    """log(1 + exp(t)) without overflow: max(t, 0) + log1p(exp(-|t|))."""
    arr = np.asarray(t, dtype=float)
    out = np.maximum(arr, 0.0) + np.log1p(np.exp(-np.abs(arr)))
    return _maybe_scalar(out, t)


@dataclass(frozen=True)
class SquashingParams:
    """Center ``a``, width ``lam`` > 0 and sharpness ``beta`` > 0."""

    a: float = 0.5
    lam: float = 1.0
    beta: float = 50.0

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.lam) and np.isfinite(self.beta)):
            raise ConfigError("squashing parameters must be finite")
        if self.lam <= 0:
            raise ConfigError("lam must be positive")
        if self.beta <= 0:
            raise ConfigError("beta must be positive")


def squash(x, p: SquashingParams):
    """Squashing function, the differentiable approximation of the cut ramp.

    S(x) = 1/(lam*beta) * ln[(1 + e^{beta(x - (a - lam/2))}) /
                             (1 + e^{beta(x - (a + lam/2))})]

    computed as a difference of softplus terms so that it never
    overflows (|beta*x| up to 1e4 and far beyond).  Strictly increasing
    in x, S(a) = 0.5 exactly, limits 0 and 1 at -/+ infinity.
    """
    u = _check_finite(x, "x") - p.a
    hi = p.beta * (u + p.lam / 2.0)
    lo = p.beta * (u - p.lam / 2.0)
    out = (softplus(hi) - softplus(lo)) / (p.lam * p.beta)
    # product rounding can overshoot the closed range by ~1 ulp
    out = np.clip(out, 0.0, 1.0)
    return _maybe_scalar(np.asarray(out), x)


def squash_partials(x, p: SquashingParams):
    """Analytic partial derivatives (dS/dx, dS/da, dS/dlam) of ``squash``.

    dS/dx   = (sig_{a-lam/2} - sig_{a+lam/2}) / lam
    dS/da   = -dS/dx
    dS/dlam = -S/lam + (sig_{a+lam/2} + sig_{a-lam/2}) / (2*lam)

    where sig_d is the logistic function with slope beta centered at d.
    """
    arr = _check_finite(x, "x")
    s_lo = sigmoid(arr, p.a - p.lam / 2.0, p.beta)
    s_hi = sigmoid(arr, p.a + p.lam / 2.0, p.beta)
    ds_dx = (s_lo - s_hi) / p.lam
    ds_da = -ds_dx
    s_val = squash(arr, p)
    ds_dlam = -s_val / p.lam + (s_hi + s_lo) / (2.0 * p.lam)
    return (
        _maybe_scalar(np.asarray(ds_dx), x),
        _maybe_scalar(np.asarray(ds_da), x),
        _maybe_scalar(np.asarray(ds_dlam), x),
    )


_GENERATOR_KINDS = ("identity", "power")


@dataclass(frozen=True)
class GeneratorFunction:
    """Normalized generator: an increasing bijection f of [0, 1].

    ``identity`` is f(x) = x (the case every weight table assumes);
    ``power`` is f(x) = x**exponent for a positive exponent.  The
    induced strong negation is n(x) = f^{-1}(1 - f(x)).
    """

    kind: str = "identity"
    exponent: float = 1.0

    def __post_init__(self):
        if self.kind not in _GENERATOR_KINDS:
            raise ConfigError(f"unknown generator kind {self.kind!r}")
        if self.kind == "power" and not self.exponent > 0:
            raise ConfigError("power generator needs a positive exponent")

    def _check_unit(self, x, name: str) -> np.ndarray:
        arr = _check_finite(x, name)
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError(f"{name} must lie in [0, 1]")
        return arr

    def apply(self, x):
        """f(x) for x in [0, 1]."""
        arr = self._check_unit(x, "x")
        if self.kind == "identity":
            return _maybe_scalar(arr.copy(), x)
        return _maybe_scalar(np.power(arr, self.exponent), x)

    def invert(self, y):
        """f^{-1}(y) for y in [0, 1]."""
        arr = self._check_unit(y, "y")
        if self.kind == "identity":
            return _maybe_scalar(arr.copy(), y)
        return _maybe_scalar(np.power(arr, 1.0 / self.exponent), y)

    def negate(self, x):
        """Strong negation n(x) = f^{-1}(1 - f(x)); involutive."""
        arr = self._check_unit(x, "x")
        if self.kind == "identity":
            return _maybe_scalar(1.0 - arr, x)
        return _maybe_scalar(np.power(1.0 - np.power(arr, self.exponent), 1.0 / self.exponent), x)

    @property
    def neutral(self) -> float:
        """Fixed point of the negation, nu* = f^{-1}(1/2)."""
        return float(self.invert(0.5))

    def to_dict(self) -> dict:
        if self.kind == "identity":
            return {"kind": "identity"}
        return {"kind": "power", "exponent": self.exponent}

    @classmethod
    def from_dict(cls, payload: dict) -> "GeneratorFunction":
        return cls(kind=payload.get("kind", "identity"), exponent=float(payload.get("exponent", 1.0)))


IDENTITY = GeneratorFunction("identity")


def power_generator(exponent: float) -> GeneratorFunction:
    return GeneratorFunction("power", exponent)
