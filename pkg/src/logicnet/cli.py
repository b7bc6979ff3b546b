"""Command-line entry points.

Subcommands: compile, train, eval, grid, explain, serve.  Exit codes:
0 on success, 1 on runtime errors, 2 on usage errors; diagnostics go
to stderr.
"""

from __future__ import annotations

import argparse
import csv
import sys

from .compiler import compile_to_network, explain_network, parse_expression
from .core import SquashingParams
from .data import DatasetConfig, DatasetKind, generate_dataset, load_csv, split
from .errors import LogicNetError
from .model_io import load_model, save_model
from .trainer import TrainConfig, TrainingSession, accuracy, evaluate_grid, run_training

__all__ = ["run_cli", "main"]

_KIND_NAMES = {k.value: k for k in DatasetKind}


def _positive_int(minimum: int):
    def parse(text: str) -> int:
        value = int(text)
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}")
        return value

    return parse


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logicnet",
        description="Compile, train, inspect and serve logic-structured networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compile = sub.add_parser("compile", help="compile a logical expression to a model file")
    p_compile.add_argument("--expr", required=True, help="logical expression (DSL)")
    p_compile.add_argument("--out", required=True, help="output model path (JSON)")
    p_compile.add_argument("--hard", action="store_true", help="crisp memberships + exact cut logic")
    p_compile.add_argument("--beta", type=float, default=50.0)
    p_compile.add_argument("--lam", type=float, default=1.0)
    p_compile.add_argument("--a", dest="center", type=float, default=0.5)

    def add_data_args(p):
        p.add_argument("--data", required=True, help="dataset kind or CSV path")
        p.add_argument("--n", type=_positive_int(1), default=500)
        p.add_argument("--noise", type=float, default=0.0)
        p.add_argument("--margin", type=float, default=0.0)
        p.add_argument("--radius", type=float, default=0.5)
        p.add_argument("--seed", type=int, default=0)

    p_train = sub.add_parser("train", help="train the learnable layers of a model")
    p_train.add_argument("--model", required=True)
    add_data_args(p_train)
    p_train.add_argument("--lr", type=float, default=0.1)
    p_train.add_argument("--epochs", type=_positive_int(0), default=50)
    p_train.add_argument("--batch-size", type=_positive_int(1), default=10)
    p_train.add_argument("--train-fraction", type=float, default=0.8)
    p_train.add_argument("--out", required=True, help="path for the trained model")

    p_eval = sub.add_parser("eval", help="evaluate model accuracy on a dataset")
    p_eval.add_argument("--model", required=True)
    add_data_args(p_eval)

    p_grid = sub.add_parser("grid", help="export the decision surface as CSV")
    p_grid.add_argument("--model", required=True)
    p_grid.add_argument("--resolution", type=_positive_int(2), default=51)
    p_grid.add_argument("--out", required=True)

    p_explain = sub.add_parser("explain", help="print the logical structure of a model")
    p_explain.add_argument("--model", required=True)

    p_serve = sub.add_parser("serve", help="serve the playground HTTP API")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--idle-timeout", type=float, default=1800.0)
    p_serve.add_argument("--ui", default=None, help="directory with the UI bundle")
    return parser


def _load_points(args) -> list:
    if args.data.endswith(".csv"):
        return load_csv(args.data)
    kind = _KIND_NAMES.get(args.data)
    if kind is None:
        raise LogicNetError(
            f"unknown dataset {args.data!r}; expected a CSV path or one of "
            + ", ".join(sorted(_KIND_NAMES))
        )
    cfg = DatasetConfig(
        kind, n=args.n, noise=args.noise, seed=args.seed, margin=args.margin, radius=args.radius
    )
    return generate_dataset(cfg)


def _cmd_compile(args) -> int:
    ast = parse_expression(args.expr)
    params = SquashingParams(args.center, args.lam, args.beta)
    mode = "crisp" if args.hard else "squash"
    spec = compile_to_network(ast, params, mode=mode)
    save_model(spec, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_train(args) -> int:
    net = load_model(args.model)
    points = _load_points(args)
    train_points, test_points = split(points, args.train_fraction, args.seed)
    config = TrainConfig(
        learning_rate=args.lr,
        epochs=args.epochs,
        batch_size=args.batch_size,
        seed=args.seed,
    )
    session = TrainingSession(net, train_points, test_points, config)
    run_training(session)
    save_model(session.network, args.out)
    last = session.history[-1] if session.history else None
    if last is not None:
        print(
            f"epochs={session.epoch} steps={session.step} "
            f"train_acc={last.train_accuracy:.4f} test_acc={last.test_accuracy:.4f}"
        )
    print(f"wrote {args.out}")
    return 0


def _cmd_eval(args) -> int:
    net = load_model(args.model)
    points = _load_points(args)
    print(f"accuracy {accuracy(net, points)}")
    return 0


def _cmd_grid(args) -> int:
    net = load_model(args.model)
    snapshot = evaluate_grid(net, args.resolution)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "output"])
        for yi, yv in enumerate(snapshot.ys):
            for xi, xv in enumerate(snapshot.xs):
                writer.writerow([repr(float(xv)), repr(float(yv)), repr(float(snapshot.output[yi, xi]))])
    print(f"wrote {args.out}")
    return 0


def _cmd_explain(args) -> int:
    net = load_model(args.model)
    print(explain_network(net))
    return 0


def _cmd_serve(args) -> int:
    from .server import serve_playground

    serve_playground(args.port, host=args.host, idle_timeout=args.idle_timeout, ui_dir=args.ui)
    return 0


_COMMANDS = {
    "compile": _cmd_compile,
    "train": _cmd_train,
    "eval": _cmd_eval,
    "grid": _cmd_grid,
    "explain": _cmd_explain,
    "serve": _cmd_serve,
}


def run_cli(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except LogicNetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
