"""Seeded generators for the playground-style synthetic 2-D datasets.

Points are sampled uniformly on [-1, 1]^2, labeled {-1, +1} by the
dataset's crisp ground-truth rule, then jittered with Gaussian noise
(after labeling).  A ``margin`` keeps points away from the decision
boundary via rejection sampling, which the exact-logic classification
tests rely on.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigError

__all__ = [
    "DatasetKind",
    "DatasetConfig",
    "LabeledPoint",
    "TRIANGLE_VERTICES",
    "ground_truth",
    "generate_dataset",
    "split",
    "save_csv",
    "load_csv",
]


class DatasetKind(str, Enum):
    XOR_QUADRANTS = "xor"
    PREFERENCE = "preference"
    CIRCLE = "circle"
    TRIANGLE = "triangle"
    CONCAVE = "concave"


@dataclass(frozen=True)
class LabeledPoint:
    x1: float
    x2: float
    label: int  # -1 or +1


@dataclass(frozen=True)
class DatasetConfig:
    kind: DatasetKind
    n: int
    noise: float = 0.0
    seed: int = 0
    margin: float = 0.0
    radius: float = 0.5  # circle only

    def __post_init__(self):
        if self.n <= 0:
            raise ConfigError("n must be positive")
        if self.noise < 0:
            raise ConfigError("noise must be non-negative")
        if self.margin < 0 or self.margin >= 0.5:
            raise ConfigError("margin must lie in [0, 0.5)")
        if self.kind == DatasetKind.CIRCLE and not 0.1 <= self.radius <= 0.9:
            raise ConfigError("circle radius must lie in [0.1, 0.9]")


# Fixed triangle used by the triangle dataset; edges as half-planes:
# y > -0.6, 1.4x + 0.8y < 0.64, -1.4x + 0.8y < 0.64.
TRIANGLE_VERTICES = ((-0.8, -0.6), (0.8, -0.6), (0.0, 0.8))


def _triangle_edge_values(x, y):
    return (
        y + 0.6,
        0.64 - 1.4 * x - 0.8 * y,
        0.64 + 1.4 * x - 0.8 * y,
    )


def _concave_box_dists(x, y):
    """Chebyshev signed distances to the two boxes of the L-region."""
    d1 = np.maximum(np.abs(x + 0.3) - 0.5, np.abs(y + 0.3) - 0.5)
    d2 = np.maximum(np.abs(x) - 0.8, np.abs(y + 0.55) - 0.25)
    return d1, d2


def ground_truth(kind: DatasetKind, x, y, radius: float = 0.5):
    """Crisp rule of a dataset; returns +1/-1 per point."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if kind == DatasetKind.XOR_QUADRANTS:
        pos = ((x > 0) & (y > 0)) | ((x < 0) & (y < 0))
    elif kind == DatasetKind.PREFERENCE:
        pos = ((x > y) & (y > -x)) | ((x < y) & (y < -x))
    elif kind == DatasetKind.CIRCLE:
        pos = x * x + y * y < radius * radius
    elif kind == DatasetKind.TRIANGLE:
        e1, e2, e3 = _triangle_edge_values(x, y)
        pos = (e1 > 0) & (e2 > 0) & (e3 > 0)
    elif kind == DatasetKind.CONCAVE:
        d1, d2 = _concave_box_dists(x, y)
        pos = (d1 < 0) | (d2 < 0)
    else:
        raise ConfigError(f"unknown dataset kind {kind!r}")
    return np.where(pos, 1, -1)


def _margin_ok(cfg: DatasetConfig, x, y):
    """True where a point keeps ``margin`` distance from the boundary."""
    m = cfg.margin
    if m == 0.0:
        return np.ones_like(np.asarray(x, dtype=float), dtype=bool)
    if cfg.kind == DatasetKind.XOR_QUADRANTS:
        return (np.abs(x) >= m) & (np.abs(y) >= m)
    if cfg.kind == DatasetKind.PREFERENCE:
        sqrt2 = np.sqrt(2.0)
        return (np.abs(x - y) / sqrt2 >= m) & (np.abs(x + y) / sqrt2 >= m)
    if cfg.kind == DatasetKind.CIRCLE:
        return np.abs(np.hypot(x, y) - cfg.radius) >= m
    if cfg.kind == DatasetKind.TRIANGLE:
        e1, e2, e3 = _triangle_edge_values(x, y)
        n23 = np.hypot(1.4, 0.8)
        return (
            (np.abs(e1) >= m) & (np.abs(e2) / n23 >= m) & (np.abs(e3) / n23 >= m)
        )
    if cfg.kind == DatasetKind.CONCAVE:
        d1, d2 = _concave_box_dists(x, y)
        return np.abs(np.minimum(d1, d2)) >= m
    raise ConfigError(f"unknown dataset kind {cfg.kind!r}")


def generate_dataset(cfg: DatasetConfig) -> list[LabeledPoint]:
    """Sample ``cfg.n`` labeled points; deterministic per seed."""
    rng = np.random.default_rng(cfg.seed)
    xs: list[np.ndarray] = []
    ys: list[np.ndarray] = []
    kept = 0
    while kept < cfg.n:
        draw = max(cfg.n - kept, 32)
        x = rng.uniform(-1.0, 1.0, size=draw)
        y = rng.uniform(-1.0, 1.0, size=draw)
        ok = _margin_ok(cfg, x, y)
        xs.append(x[ok])
        ys.append(y[ok])
        kept += int(np.sum(ok))
    x = np.concatenate(xs)[: cfg.n]
    y = np.concatenate(ys)[: cfg.n]
    labels = ground_truth(cfg.kind, x, y, cfg.radius)
    if cfg.noise > 0:
        x = x + rng.normal(0.0, cfg.noise, size=cfg.n)
        y = y + rng.normal(0.0, cfg.noise, size=cfg.n)
    return [
        LabeledPoint(float(a), float(b), int(l)) for a, b, l in zip(x, y, labels)
    ]


def split(points, train_fraction: float, seed: int = 0):
    """Deterministic shuffled train/test split."""
    if not 0.0 < train_fraction < 1.0:
        raise ConfigError("train_fraction must lie strictly between 0 and 1")
    n_train = int(round(len(points) * train_fraction))
    if n_train == 0 or n_train == len(points):
        raise ConfigError("split produces an empty part")
    order = np.random.default_rng(seed).permutation(len(points))
    shuffled = [points[i] for i in order]
    return shuffled[:n_train], shuffled[n_train:]


def points_to_arrays(points) -> tuple[np.ndarray, np.ndarray]:
    """(n, 2) coordinates and (n,) -1/+1 labels."""
    coords = np.array([[p.x1, p.x2] for p in points], dtype=float)
    labels = np.array([p.label for p in points], dtype=int)
    return coords, labels


def save_csv(points, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x1", "x2", "label"])
        for p in points:
            writer.writerow([repr(p.x1), repr(p.x2), p.label])


def load_csv(path) -> list[LabeledPoint]:
    points = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["x1", "x2", "label"]:
            raise ConfigError(f"expected header x1,x2,label in {path}")
        for row in reader:
            if not row:
                continue
            if len(row) != 3:
                raise ConfigError(f"malformed row {row!r} in {path}")
            label = int(float(row[2]))
            if label not in (-1, 1):
                raise ConfigError(f"label must be -1 or +1, got {row[2]!r}")
            points.append(LabeledPoint(float(row[0]), float(row[1]), label))
    if not points:
        raise ConfigError(f"no data rows in {path}")
    return points
