"""Training loop, metrics and decision-surface grids.

A session owns one network (single writer), a train/test split and the
running metrics history.  Labels {-1, +1} map to regression targets
{0, 1}; the loss is the mean squared error of the network output.
Batches are reshuffled every epoch from the session seed, so a given
(seed, config) pair always produces the same parameter trajectory.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .core import SquashingParams
from .data import points_to_arrays
from .errors import ConfigError, DomainError, TrainingError
from .network import Network, backward, forward, sgd_step

__all__ = [
    "TrainConfig",
    "SessionStatus",
    "EpochMetrics",
    "TrainingSession",
    "run_training",
    "train_steps",
    "accuracy",
    "evaluate_grid",
    "GridSnapshot",
]


@dataclass(frozen=True)
class TrainConfig:
    """Plain SGD settings.

    ``restart_patience`` > 0 enables seeded random restarts: whenever
    that many epochs have passed within the current attempt and the
    train accuracy is still below ``restart_accuracy``, the learnable
    layers are re-drawn (from the session generator) and optimization
    continues inside the same epoch budget.  A standard escape from the
    dead-unit local minima of very sharp activations; deterministic per
    seed.  Only takes effect when the session has an initializer.
    """

    learning_rate: float = 0.1
    epochs: int = 50
    batch_size: int = 10
    seed: int = 0
    squash: SquashingParams = field(default_factory=SquashingParams)
    restart_patience: int = 60
    restart_accuracy: float = 0.9

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ConfigError("learning_rate must be positive")
        if self.epochs < 0:
            raise ConfigError("epochs must be non-negative")
        if self.batch_size <= 0:
            raise ConfigError("batch_size must be positive")
        if self.restart_patience < 0:
            raise ConfigError("restart_patience must be non-negative")


class SessionStatus(str, Enum):
    IDLE = "idle"
    RUNNING = "running"
    PAUSED = "paused"
    DONE = "done"


@dataclass(frozen=True)
class EpochMetrics:
    epoch: int
    train_loss: float
    train_accuracy: float
    test_loss: float
    test_accuracy: float


@dataclass
class TrainingSession:
    """One training run: network, data split, config and metrics.

    ``initializer`` (optional) re-draws the learnable layers from a
    generator; used for plateau restarts.
    """

    network: Network
    train_points: list
    test_points: list
    config: TrainConfig
    initializer: object = None  # callable(Network, Generator) -> None
    status: SessionStatus = SessionStatus.IDLE
    step: int = 0
    epoch: int = 0
    history: list[EpochMetrics] = field(default_factory=list)
    _rng: np.random.Generator | None = field(default=None, init=False, repr=False)
    _order: np.ndarray | None = field(default=None, init=False, repr=False)
    _cursor: int = field(default=0, init=False, repr=False)
    _attempt_epochs: int = field(default=0, init=False, repr=False)

    def __post_init__(self):
        if not self.train_points:
            raise ConfigError("training set must not be empty")
        self._train_x, train_labels = points_to_arrays(self.train_points)
        self._train_t = (train_labels + 1) / 2.0
        if self.test_points:
            self._test_x, self._test_labels = points_to_arrays(self.test_points)
        else:
            self._test_x = self._test_labels = None
        self._rng = np.random.default_rng(self.config.seed)

    @property
    def trainable(self) -> bool:
        return any(not layer.frozen for layer in self.network.layers)

    def _next_batch(self) -> np.ndarray:
        n = len(self.train_points)
        if self._order is None or self._cursor >= n:
            self._order = self._rng.permutation(n)
            self._cursor = 0
        batch = self._order[self._cursor : self._cursor + self.config.batch_size]
        self._cursor += self.config.batch_size
        return batch

    def epoch_boundary(self) -> bool:
        return self._order is None or self._cursor >= len(self.train_points)


def _metrics(session: TrainingSession) -> EpochMetrics:
    net = session.network
    trace = forward(net, session._train_x)
    out = trace.output[:, 0]
    train_loss = float(np.mean((out - session._train_t) ** 2))
    train_acc = float(np.mean((out >= 0.5) == (session._train_t >= 0.5)))
    if session._test_x is not None:
        test_trace = forward(net, session._test_x)
        t_out = test_trace.output[:, 0]
        test_t = (session._test_labels + 1) / 2.0
        test_loss = float(np.mean((t_out - test_t) ** 2))
        test_acc = float(np.mean((t_out >= 0.5) == (test_t >= 0.5)))
    else:
        test_loss, test_acc = float("nan"), float("nan")
    return EpochMetrics(session.epoch, train_loss, train_acc, test_loss, test_acc)


def _one_step(session: TrainingSession):
    idx = session._next_batch()
    x = session._train_x[idx]
    t = session._train_t[idx]
    trace = forward(session.network, x)
    grads, loss = backward(session.network, trace, t)
    if not np.isfinite(loss):
        session.status = SessionStatus.DONE
        raise TrainingError("training diverged to a non-finite loss", step=session.step)
    sgd_step(session.network, grads, session.config.learning_rate)
    session.step += 1


def _maybe_restart(session: TrainingSession, metrics: EpochMetrics):
    cfg = session.config
    session._attempt_epochs += 1
    if (
        session.initializer is None
        or cfg.restart_patience == 0
        or session._attempt_epochs < cfg.restart_patience
        or metrics.train_accuracy >= cfg.restart_accuracy
    ):
        return
    session.initializer(session.network, session._rng)
    session._attempt_epochs = 0
    session._order = None
    session._cursor = 0


def run_training(session: TrainingSession, epochs: int | None = None) -> TrainingSession:
    """Run whole epochs, recording metrics once per epoch.

    For fully frozen networks the metrics are computed once and
    replicated, since no step can change them.
    """
    if session.status not in (SessionStatus.IDLE, SessionStatus.PAUSED):
        raise TrainingError(f"cannot start training from status {session.status.value}")
    n_epochs = session.config.epochs if epochs is None else epochs
    session.status = SessionStatus.RUNNING
    if n_epochs == 0:
        session.status = SessionStatus.DONE
        return session
    if not session.trainable:
        snapshot = _metrics(session)
        batches = -(-len(session.train_points) // session.config.batch_size)
        for _ in range(n_epochs):
            session.epoch += 1
            session.step += batches
            session.history.append(replace(snapshot, epoch=session.epoch))
        session.status = SessionStatus.DONE
        return session
    for _ in range(n_epochs):
        session._order = None  # force a fresh shuffle
        while True:
            _one_step(session)
            if session.epoch_boundary():
                break
        session.epoch += 1
        metrics = _metrics(session)
        session.history.append(metrics)
        _maybe_restart(session, metrics)
    session.status = SessionStatus.DONE
    return session


def train_steps(session: TrainingSession, n: int) -> TrainingSession:
    """Advance ``n`` single batch updates (the playground step command).

    Metrics are appended whenever a step completes an epoch.
    """
    if n < 0:
        raise ConfigError("step count must be non-negative")
    for _ in range(n):
        if session.trainable:
            _one_step(session)
        else:
            session._next_batch()
            session.step += 1
        if session.epoch_boundary():
            session.epoch += 1
            metrics = _metrics(session)
            session.history.append(metrics)
            if session.trainable:
                _maybe_restart(session, metrics)
            session._order = None
            session._cursor = 0
    return session


def accuracy(net: Network, points) -> float:
    """Fraction of points whose predicted class matches the label."""
    if not points:
        raise DomainError("accuracy needs a non-empty point set")
    coords, labels = points_to_arrays(points)
    out = forward(net, coords).output[:, 0]
    predicted = np.where(out >= 0.5, 1, -1)
    return float(np.mean(predicted == labels))


@dataclass(frozen=True)
class UnitGrid:
    label: str
    values: np.ndarray  # (resolution, resolution)


@dataclass(frozen=True)
class LayerGrids:
    label: str
    units: tuple[UnitGrid, ...]


@dataclass(frozen=True)
class GridSnapshot:
    """Network output and per-unit activations over [-1, 1]^2."""

    xs: np.ndarray
    ys: np.ndarray
    output: np.ndarray  # (resolution, resolution), row-major in y
    layers: tuple[LayerGrids, ...]


def evaluate_grid(net: Network, resolution: int) -> GridSnapshot:
    """Evaluate every unit on a uniform grid (rows indexed by y)."""
    if resolution < 2:
        raise ConfigError("resolution must be at least 2")
    xs = np.linspace(-1.0, 1.0, resolution)
    ys = np.linspace(-1.0, 1.0, resolution)
    gx, gy = np.meshgrid(xs, ys)
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    trace = forward(net, pts)
    layer_grids = []
    for layer, acts in zip(net.layers, trace.activations):
        labels = layer.unit_labels or tuple(
            f"unit {i}" for i in range(layer.out_dim)
        )
        units = tuple(
            UnitGrid(labels[i], acts[:, i].reshape(resolution, resolution))
            for i in range(layer.out_dim)
        )
        layer_grids.append(LayerGrids(layer.label or "", units))
    output = trace.output[:, 0].reshape(resolution, resolution)
    return GridSnapshot(xs, ys, output, tuple(layer_grids))
