"""Training session, accuracy and grid evaluation tests."""

import numpy as np
import pytest

from logicnet import (
    DatasetConfig,
    DatasetKind,
    SessionStatus,
    TrainConfig,
    TrainingSession,
    accuracy,
    assemble,
    compile_to_network,
    evaluate_grid,
    generate_dataset,
    parse_expression,
    run_training,
    split,
    train_steps,
)
from logicnet.data import LabeledPoint
from logicnet.errors import ConfigError, DomainError
from logicnet.presets import PRESET_EXPRESSIONS, membership_initializer, trainable_spec


def frozen_net(kind=DatasetKind.XOR_QUADRANTS, mode="squash"):
    return assemble(compile_to_network(parse_expression(PRESET_EXPRESSIONS[kind]), mode=mode))


def make_session(kind=DatasetKind.XOR_QUADRANTS, net=None, n=100, noise=0.0, seed=0, **cfg):
    points = generate_dataset(DatasetConfig(kind, n=n, noise=noise, seed=seed))
    train, test = split(points, 0.8, seed)
    config = TrainConfig(seed=seed, **cfg)
    return TrainingSession(net or frozen_net(kind), train, test, config)


class TestRunTraining:
    def test_zero_epochs_unchanged(self):
        session = make_session(epochs=0)
        before = [l.weights.tobytes() for l in session.network.layers]
        run_training(session)
        assert session.history == []
        assert session.status == SessionStatus.DONE
        assert [l.weights.tobytes() for l in session.network.layers] == before

    def test_all_frozen_history_constant(self):
        session = make_session(epochs=7)
        run_training(session)
        assert len(session.history) == 7
        losses = {m.train_loss for m in session.history}
        accs = {m.train_accuracy for m in session.history}
        assert len(losses) == 1 and len(accs) == 1
        assert session.status == SessionStatus.DONE

    def test_invalid_start_status(self):
        from logicnet.errors import TrainingError

        session = make_session(epochs=1)
        run_training(session)
        with pytest.raises(TrainingError):
            run_training(session)

    def test_final_loss_not_above_initial(self):
        for kind in (DatasetKind.XOR_QUADRANTS, DatasetKind.PREFERENCE, DatasetKind.TRIANGLE):
            points = generate_dataset(DatasetConfig(kind, n=300, noise=0.05, seed=2))
            train, test = split(points, 0.8, 2)
            net = assemble(trainable_spec(kind, seed=2))
            session = TrainingSession(
                net, train, test, TrainConfig(epochs=40, seed=2), initializer=membership_initializer
            )
            run_training(session)
            assert session.history[-1].train_loss <= session.history[0].train_loss

    def test_reproducible_trajectories(self):
        def run_once():
            points = generate_dataset(
                DatasetConfig(DatasetKind.TRIANGLE, n=200, noise=0.05, seed=4)
            )
            train, test = split(points, 0.8, 4)
            net = assemble(trainable_spec(DatasetKind.TRIANGLE, seed=4))
            session = TrainingSession(net, train, test, TrainConfig(epochs=15, seed=4))
            run_training(session)
            return (
                session.network.layers[0].weights.copy(),
                [m.train_loss for m in session.history],
            )

        w1, h1 = run_once()
        w2, h2 = run_once()
        np.testing.assert_array_equal(w1, w2)
        assert h1 == h2

    def test_history_records_every_epoch(self):
        session = make_session(
            net=assemble(trainable_spec(DatasetKind.XOR_QUADRANTS, seed=0)), epochs=9
        )
        run_training(session)
        assert [m.epoch for m in session.history] == list(range(1, 10))


class TestTrainSteps:
    def test_step_counter_advances(self):
        session = make_session(epochs=100, batch_size=10)
        train_steps(session, 10)
        train_steps(session, 10)
        assert session.step == 20

    def test_epoch_boundary_appends_metrics(self):
        session = make_session(n=100, epochs=100, batch_size=10)
        # 80 train points, batch 10 -> 8 steps per epoch
        train_steps(session, 8)
        assert len(session.history) == 1
        train_steps(session, 7)
        assert len(session.history) == 1
        train_steps(session, 1)
        assert len(session.history) == 2


class TestAccuracy:
    def test_perfect_on_hard_logic(self):
        net = frozen_net(mode="crisp")
        points = generate_dataset(
            DatasetConfig(DatasetKind.XOR_QUADRANTS, n=500, margin=0.1, seed=1)
        )
        assert accuracy(net, points) == 1.0

    def test_constant_net_on_balanced_data(self):
        from logicnet.network import LayerSpec, Linear, NetworkSpec, raw

        net = assemble(
            NetworkSpec(
                [raw(0), raw(1)],
                [LayerSpec(np.zeros((1, 2)), np.array([1.0]), activation=Linear())],
            )
        )
        points = generate_dataset(DatasetConfig(DatasetKind.XOR_QUADRANTS, n=2000, seed=3))
        assert accuracy(net, points) == pytest.approx(0.5, abs=0.05)

    def test_single_point(self):
        net = frozen_net(mode="crisp")
        assert accuracy(net, [LabeledPoint(0.5, 0.5, 1)]) == 1.0

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            accuracy(frozen_net(), [])


class TestEvaluateGrid:
    def test_resolution_two(self):
        snapshot = evaluate_grid(frozen_net(), 2)
        assert snapshot.output.shape == (2, 2)
        assert snapshot.xs.tolist() == [-1.0, 1.0]

    def test_resolution_below_two_rejected(self):
        with pytest.raises(ConfigError):
            evaluate_grid(frozen_net(), 1)

    def test_values_in_unit_interval(self):
        for mode in ("squash", "cut", "crisp"):
            snapshot = evaluate_grid(frozen_net(mode=mode), 31)
            assert snapshot.output.min() >= 0.0 and snapshot.output.max() <= 1.0
            for layer in snapshot.layers:
                for unit in layer.units:
                    assert unit.values.min() >= 0.0 and unit.values.max() <= 1.0

    def test_xor_checker_corners(self):
        snapshot = evaluate_grid(frozen_net(), 51)
        out = snapshot.output
        # corners: (x=-1,y=-1) bottom-left positive, alternating pattern
        assert out[0, 0] > 0.5  # (-1, -1)
        assert out[0, -1] < 0.5  # (+1, -1)
        assert out[-1, 0] < 0.5  # (-1, +1)
        assert out[-1, -1] > 0.5  # (+1, +1)

    def test_preference_grid_symmetry(self):
        net = frozen_net(DatasetKind.PREFERENCE)
        snapshot = evaluate_grid(net, 41)
        out = snapshot.output
        # the rule is invariant under (x, y) -> (-x, -y)
        np.testing.assert_allclose(out, out[::-1, ::-1], atol=1e-12)

    def test_per_unit_grids_labeled(self):
        snapshot = evaluate_grid(frozen_net(), 11)
        labels = [u.label for layer in snapshot.layers for u in layer.units]
        assert "x > 0" in labels and "AND" in labels and "OR" in labels
