"""HTTP/JSON session protocol serving the playground UI.

Endpoints (all JSON):

* ``GET  /datasets``                    available kinds and parameters
* ``POST /session``                     create a session
* ``POST /session/{id}/command``        start | pause | step | reset
* ``GET  /session/{id}/state``          status, step, history tail
* ``GET  /session/{id}/grid?resolution=R``  output + per-unit grids

Each session is driven by one worker thread; commands and training
steps are serialized per session, so the underlying network has a
single writer.  Sessions expire after a configurable idle time.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .compiler import compile_to_network, explain_network, parse_expression
from .core import SquashingParams
from .data import DatasetConfig, DatasetKind, generate_dataset, split
from .errors import LogicNetError
from .model_io import network_from_dict
from .network import Network, assemble
from .presets import PRESET_EXPRESSIONS, trainable_spec
from .trainer import (
    SessionStatus,
    TrainConfig,
    TrainingSession,
    evaluate_grid,
    train_steps,
)

__all__ = ["create_app", "serve_playground"]


class DatasetBody(BaseModel):
    kind: str = "xor"
    n: int = 200
    noise: float = 0.0
    seed: int = 0
    margin: float = 0.0
    radius: float = 0.5


class TrainBody(BaseModel):
    learning_rate: float = 0.1
    epochs: int = 200
    batch_size: int = 10
    seed: int = 0
    beta: float = 50.0
    lam: float = Field(1.0, alias="lambda")
    a: float = 0.5

    model_config = {"populate_by_name": True}


class SessionBody(BaseModel):
    dataset: DatasetBody = DatasetBody()
    expression: str | None = None
    preset: str | None = None
    architecture: dict | None = None
    train: TrainBody = TrainBody()
    hard: bool = False
    train_fraction: float = 0.8


class CommandBody(BaseModel):
    command: str
    count: int = 1


@dataclass
class ManagedSession:
    session_id: str
    session: TrainingSession
    build: callable  # () -> TrainingSession, used by reset
    lock: threading.RLock = field(default_factory=threading.RLock)
    last_access: float = field(default_factory=time.monotonic)
    error: str | None = None

    def touch(self):
        self.last_access = time.monotonic()

    def _worker(self, session: TrainingSession):
        while True:
            with self.lock:
                if self.session is not session or session.status != SessionStatus.RUNNING:
                    return
                if session.epoch >= session.config.epochs:
                    session.status = SessionStatus.DONE
                    return
                try:
                    train_steps(session, 1)
                except LogicNetError as exc:
                    self.error = str(exc)
                    return
            time.sleep(0)

    def command(self, name: str, count: int = 1):
        with self.lock:
            self.touch()
            status = self.session.status
            if name == "start":
                if status in (SessionStatus.RUNNING, SessionStatus.DONE):
                    raise HTTPException(409, f"cannot start from status {status.value}")
                self.session.status = SessionStatus.RUNNING
                thread = threading.Thread(
                    target=self._worker, args=(self.session,), daemon=True
                )
                thread.start()
            elif name == "pause":
                if status != SessionStatus.RUNNING:
                    raise HTTPException(409, f"cannot pause from status {status.value}")
                self.session.status = SessionStatus.PAUSED
            elif name == "step":
                if status in (SessionStatus.RUNNING, SessionStatus.DONE):
                    raise HTTPException(409, f"cannot step from status {status.value}")
                if count < 1:
                    raise HTTPException(400, "step count must be positive")
                try:
                    train_steps(self.session, count)
                except LogicNetError as exc:
                    self.error = str(exc)
                    raise HTTPException(409, str(exc))
                if self.session.status == SessionStatus.IDLE:
                    self.session.status = SessionStatus.PAUSED
                if self.session.epoch >= self.session.config.epochs:
                    self.session.status = SessionStatus.DONE
            elif name == "reset":
                self.session = self.build()
                self.error = None
            else:
                raise HTTPException(400, f"unknown command {name!r}")
            return self.state_payload()

    def state_payload(self, tail: int | None = None) -> dict:
        with self.lock:
            history = self.session.history
            if tail is not None:
                history = history[-tail:]
            return {
                "session_id": self.session_id,
                "status": self.session.status.value,
                "step": self.session.step,
                "epoch": self.session.epoch,
                "error": self.error,
                "history": [
                    {
                        "epoch": m.epoch,
                        "train_loss": m.train_loss,
                        "train_accuracy": m.train_accuracy,
                        "test_loss": m.test_loss,
                        "test_accuracy": m.test_accuracy,
                    }
                    for m in history
                ],
            }

    def structure_payload(self) -> dict:
        with self.lock:
            net = self.session.network
            return {
                "session_id": self.session_id,
                "step": self.session.step,
                "inputs": [f.label() for f in net.input_features],
                "layers": [
                    {
                        "label": layer.label,
                        "frozen": layer.frozen,
                        "unit_labels": list(
                            layer.unit_labels
                            or (f"unit {i}" for i in range(layer.out_dim))
                        ),
                        "weights": np.asarray(layer.weights).tolist(),
                        "bias": np.asarray(layer.bias).tolist(),
                    }
                    for layer in net.layers
                ],
                "explain": explain_network(net),
                "points": [
                    {"x": p.x1, "y": p.x2, "label": p.label}
                    for p in (self.session.train_points + self.session.test_points)
                ],
            }

    def grid_payload(self, resolution: int) -> dict:
        with self.lock:
            self.touch()
            snapshot = evaluate_grid(self.session.network, resolution)
            return {
                "session_id": self.session_id,
                "step": self.session.step,
                "resolution": resolution,
                "xs": snapshot.xs.tolist(),
                "ys": snapshot.ys.tolist(),
                "output": snapshot.output.tolist(),
                "layers": [
                    {
                        "label": lg.label,
                        "units": [
                            {"label": ug.label, "values": ug.values.tolist()}
                            for ug in lg.units
                        ],
                    }
                    for lg in snapshot.layers
                ],
            }


class SessionRegistry:
    def __init__(self, idle_timeout: float):
        self.idle_timeout = idle_timeout
        self.sessions: dict[str, ManagedSession] = {}
        self.lock = threading.Lock()

    def purge(self):
        now = time.monotonic()
        with self.lock:
            expired = [
                sid
                for sid, managed in self.sessions.items()
                if now - managed.last_access > self.idle_timeout
            ]
            for sid in expired:
                managed = self.sessions.pop(sid)
                with managed.lock:
                    if managed.session.status == SessionStatus.RUNNING:
                        managed.session.status = SessionStatus.PAUSED

    def add(self, managed: ManagedSession):
        with self.lock:
            self.sessions[managed.session_id] = managed

    def get(self, session_id: str) -> ManagedSession:
        self.purge()
        with self.lock:
            managed = self.sessions.get(session_id)
        if managed is None:
            raise HTTPException(404, f"unknown session {session_id!r}")
        managed.touch()
        return managed


def _build_network(body: SessionBody, kind: DatasetKind, squash: SquashingParams) -> Network:
    chosen = [v for v in (body.expression, body.preset, body.architecture) if v is not None]
    if len(chosen) > 1:
        raise HTTPException(400, "give only one of expression, preset or architecture")
    if body.expression is not None:
        ast = parse_expression(body.expression)
        mode = "crisp" if body.hard else "squash"
        return assemble(compile_to_network(ast, squash, mode=mode))
    if body.architecture is not None:
        return network_from_dict(body.architecture)
    preset = body.preset or kind.value
    if preset.endswith("-trainable") or preset == "trainable":
        preset_kind = kind if preset == "trainable" else DatasetKind(preset[: -len("-trainable")])
        return assemble(trainable_spec(preset_kind, seed=body.train.seed, squash_params=squash))
    preset_kind = DatasetKind(preset)
    ast = parse_expression(PRESET_EXPRESSIONS[preset_kind])
    mode = "crisp" if body.hard else "squash"
    return assemble(compile_to_network(ast, squash, mode=mode))


def create_app(idle_timeout: float = 1800.0, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="logicnet playground")
    registry = SessionRegistry(idle_timeout)
    app.state.registry = registry

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(LogicNetError)
    async def logicnet_handler(request: Request, exc: LogicNetError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/datasets")
    def datasets():
        registry.purge()
        return {
            "datasets": [
                {
                    "kind": kind.value,
                    "expression": PRESET_EXPRESSIONS[kind],
                    "params": {"n": 200, "noise": 0.0, "seed": 0, "margin": 0.0}
                    | ({"radius": 0.5} if kind == DatasetKind.CIRCLE else {}),
                }
                for kind in DatasetKind
            ]
        }

    @app.post("/session")
    def create_session(body: SessionBody):
        registry.purge()
        try:
            kind = DatasetKind(body.dataset.kind)
        except ValueError:
            raise HTTPException(400, f"unknown dataset kind {body.dataset.kind!r}")
        squash = SquashingParams(body.train.a, body.train.lam, body.train.beta)
        config = TrainConfig(
            learning_rate=body.train.learning_rate,
            epochs=body.train.epochs,
            batch_size=body.train.batch_size,
            seed=body.train.seed,
            squash=squash,
        )
        cfg = DatasetConfig(
            kind,
            n=body.dataset.n,
            noise=body.dataset.noise,
            seed=body.dataset.seed,
            margin=body.dataset.margin,
            radius=body.dataset.radius,
        )

        def build() -> TrainingSession:
            points = generate_dataset(cfg)
            train_points, test_points = split(points, body.train_fraction, cfg.seed)
            return TrainingSession(
                _build_network(body, kind, squash), train_points, test_points, config
            )

        managed = ManagedSession(uuid.uuid4().hex[:12], build(), build)
        registry.add(managed)
        payload = managed.structure_payload()
        payload["status"] = managed.session.status.value
        return payload

    @app.post("/session/{session_id}/command")
    def command(session_id: str, body: CommandBody):
        managed = registry.get(session_id)
        return managed.command(body.command, body.count)

    @app.get("/session/{session_id}/state")
    def state(session_id: str, tail: int | None = Query(default=None, ge=1)):
        managed = registry.get(session_id)
        return managed.state_payload(tail)

    @app.get("/session/{session_id}/structure")
    def structure(session_id: str):
        managed = registry.get(session_id)
        return managed.structure_payload()

    @app.get("/session/{session_id}/grid")
    def grid(session_id: str, resolution: int = Query(default=51, ge=2, le=512)):
        managed = registry.get(session_id)
        return managed.grid_payload(resolution)

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    return app


def serve_playground(
    port: int, host: str = "127.0.0.1", idle_timeout: float = 1800.0, ui_dir: str | None = None
):
    """Run the playground service (blocking)."""
    import uvicorn

    app = create_app(idle_timeout=idle_timeout, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
