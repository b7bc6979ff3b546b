"""Model persistence: a versioned JSON format for networks.

The format is plain JSON with full-precision decimal floats; saving
is canonical (sorted keys, fixed indentation), so save -> load -> save
is byte-identical.  Loading validates every network invariant and
reports the offending field path.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import GeneratorFunction, SquashingParams
from .errors import ConfigError, ModelFormatError
from .network import (
    FeatureSpec,
    HardCut,
    LayerSpec,
    Linear,
    Network,
    NetworkSpec,
    Squashing,
    assemble,
)

__all__ = ["FORMAT_VERSION", "save_model", "load_model", "network_to_dict", "network_from_dict"]

FORMAT_VERSION = 1


def _activation_to_dict(act) -> dict:
    if isinstance(act, Squashing):
        return {
            "kind": "squash",
            "a": act.params.a,
            "lambda": act.params.lam,
            "beta": act.params.beta,
        }
    if isinstance(act, HardCut):
        a = list(act.a) if isinstance(act.a, tuple) else act.a
        return {"kind": "hardcut", "a": a, "lambda": act.lam}
    if isinstance(act, Linear):
        return {"kind": "linear"}
    raise ModelFormatError(f"unknown activation object {act!r}")


def _activation_from_dict(payload: dict, path: str):
    kind = payload.get("kind")
    try:
        if kind == "squash":
            return Squashing(
                SquashingParams(
                    float(payload["a"]), float(payload["lambda"]), float(payload["beta"])
                )
            )
        if kind == "hardcut":
            a = payload["a"]
            a = tuple(float(v) for v in a) if isinstance(a, list) else float(a)
            lam = float(payload["lambda"])
            if lam < 0:
                raise ModelFormatError("lambda must be >= 0", path)
            return HardCut(a, lam)
        if kind == "linear":
            return Linear()
    except (KeyError, TypeError, ValueError, ConfigError) as exc:
        raise ModelFormatError(f"invalid activation: {exc}", path) from exc
    raise ModelFormatError(f"unknown activation kind {kind!r}", path)


def network_to_dict(net: Network | NetworkSpec, generator: GeneratorFunction | None = None) -> dict:
    layers = []
    for layer in net.layers:
        entry = {
            "frozen": layer.frozen,
            "label": layer.label,
            "weights": [[float(v) for v in row] for row in np.asarray(layer.weights)],
            "bias": [float(v) for v in np.asarray(layer.bias)],
            "activation": _activation_to_dict(layer.activation),
        }
        if layer.unit_labels is not None:
            entry["unit_labels"] = list(layer.unit_labels)
        if layer.unit_notes is not None:
            entry["unit_notes"] = list(layer.unit_notes)
        layers.append(entry)
    return {
        "version": FORMAT_VERSION,
        "generator": (generator or GeneratorFunction()).to_dict(),
        "input_features": [
            {"kind": f.kind, "index": f.index} for f in net.input_features
        ],
        "layers": layers,
    }


def network_from_dict(payload: dict) -> Network:
    if not isinstance(payload, dict):
        raise ModelFormatError("model file must contain a JSON object")
    version = payload.get("version")
    if version != FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported model format version {version!r} (expected {FORMAT_VERSION})",
            "version",
        )
    generator = payload.get("generator", {"kind": "identity"})
    try:
        gen = GeneratorFunction.from_dict(generator)
    except (ConfigError, TypeError, AttributeError) as exc:
        raise ModelFormatError(f"invalid generator: {exc}", "generator") from exc
    if gen.kind != "identity":
        raise ModelFormatError(
            "network evaluation supports the identity generator only", "generator"
        )
    raw_features = payload.get("input_features")
    if not isinstance(raw_features, list) or not raw_features:
        raise ModelFormatError("input_features must be a non-empty list", "input_features")
    features = []
    for i, item in enumerate(raw_features):
        try:
            features.append(FeatureSpec(item["kind"], int(item["index"])))
        except (KeyError, TypeError, ValueError, ConfigError) as exc:
            raise ModelFormatError(f"invalid feature: {exc}", f"input_features[{i}]") from exc
    raw_layers = payload.get("layers")
    if not isinstance(raw_layers, list) or not raw_layers:
        raise ModelFormatError("layers must be a non-empty list", "layers")
    layers = []
    for i, item in enumerate(raw_layers):
        path = f"layers[{i}]"
        if not isinstance(item, dict):
            raise ModelFormatError("layer must be an object", path)
        try:
            weights = np.array(item["weights"], dtype=float)
            bias = np.array(item["bias"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelFormatError(f"invalid weights/bias: {exc}", path) from exc
        activation = _activation_from_dict(item.get("activation", {}), f"{path}.activation")
        unit_labels = item.get("unit_labels")
        unit_notes = item.get("unit_notes")
        try:
            layers.append(
                LayerSpec(
                    weights,
                    bias,
                    frozen=bool(item.get("frozen", False)),
                    activation=activation,
                    label=item.get("label"),
                    unit_labels=tuple(unit_labels) if unit_labels is not None else None,
                    unit_notes=tuple(unit_notes) if unit_notes is not None else None,
                )
            )
        except ConfigError as exc:
            raise ModelFormatError(str(exc), path) from exc
    try:
        return assemble(NetworkSpec(features, layers))
    except ConfigError as exc:
        raise ModelFormatError(str(exc), "layers") from exc


def save_model(net: Network | NetworkSpec, path) -> None:
    """Write a network as canonical JSON (sorted keys, full precision)."""
    payload = network_to_dict(net)
    text = json.dumps(payload, indent=2, sort_keys=True)
    Path(path).write_text(text + "\n")


def load_model(path) -> Network:
    """Read and validate a model file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ModelFormatError(f"cannot read model file: {exc}") from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file is not valid JSON: {exc}") from exc
    return network_from_dict(payload)
