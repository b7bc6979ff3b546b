"""Operator family tests: truth tables, algebraic identities, perceptron forms."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from logicnet import (
    DomainError,
    IDENTITY,
    MinMaxTemplate,
    OperatorKind,
    OperatorSpec,
    ThresholdSpec,
    UnaryOpSpec,
    binary_table_op,
    general_op,
    min_max_via_cut,
    nary_logical,
    operator_to_perceptron,
    power_generator,
    threshold_op,
    unary_modifier,
    weighted_general_op,
)
from logicnet.errors import ConfigError

GENERATORS = [IDENTITY, power_generator(2.0)]
GRID = np.linspace(0.0, 1.0, 101)
UNIT_FLOATS = st.floats(0.0, 1.0)


def grid_pairs():
    x, y = np.meshgrid(GRID, GRID)
    return x.ravel(), y.ravel()


class TestGeneralOp:
    def test_conjunctive_at_one(self):
        assert general_op(1.0, [0.6, 0.7]) == pytest.approx(0.3, abs=1e-12)

    def test_disjunctive_at_zero(self):
        assert general_op(0.0, [0.6, 0.7]) == pytest.approx(1.0, abs=1e-12)

    def test_self_dual_neutral(self):
        for x in (0.0, 0.2, 0.5, 0.9):
            assert general_op(0.5, [x, 1.0 - x]) == pytest.approx(0.5, abs=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            general_op(0.5, [])

    def test_matches_nary_logical_on_grid(self):
        x, y = grid_pairs()
        for g in GENERATORS:
            nu_star = g.neutral
            cases = [
                (1.0, OperatorKind.CONJUNCTION),
                (0.0, OperatorKind.DISJUNCTION),
                (nu_star, OperatorKind.AGGREGATION),
            ]
            for nu, kind in cases:
                lhs = general_op(nu, [x, y], g)
                rhs = nary_logical(kind, [x, y], g)
                if g is IDENTITY:
                    np.testing.assert_allclose(lhs, rhs, atol=1e-12)
                else:
                    # compare in generator space: f^{-1} has unbounded
                    # slope at 0 and would amplify 1-ulp cut differences
                    np.testing.assert_allclose(g.apply(lhs), g.apply(rhs), atol=1e-12)


class TestWeightedGeneralOp:
    def test_normalized_weights_give_mean(self):
        assert weighted_general_op(0.77, [0.5, 0.5], [0.2, 0.8]) == pytest.approx(0.5, abs=1e-12)

    def test_unit_weights_give_conjunction(self):
        assert weighted_general_op(1.0, [1.0, 1.0], [0.6, 0.7]) == pytest.approx(0.3, abs=1e-12)

    def test_single_normalized_weight_is_identity(self):
        for x in (0.0, 0.31, 1.0):
            assert weighted_general_op(0.4, [1.0], [x]) == pytest.approx(x, abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            weighted_general_op(0.5, [1.0], [0.1, 0.2])


class TestThresholdOp:
    def test_conjunction_parameters(self):
        spec = ThresholdSpec((1.0, 1.0), (1.0, 1.0), 1.0)
        assert spec.constant() == -1.0
        x, y = grid_pairs()
        np.testing.assert_allclose(
            threshold_op(spec, [x, y]),
            nary_logical(OperatorKind.CONJUNCTION, [x, y]),
            atol=1e-12,
        )

    def test_disjunction_parameters(self):
        spec = ThresholdSpec((1.0, 1.0), (0.0, 0.0), 0.0)
        assert spec.constant() == 0.0
        x, y = grid_pairs()
        np.testing.assert_allclose(
            threshold_op(spec, [x, y]),
            nary_logical(OperatorKind.DISJUNCTION, [x, y]),
            atol=1e-12,
        )

    def test_thresholds_at_inputs_cancel(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            xs = rng.uniform(0, 1, size=3)
            nu = rng.uniform(0, 1)
            spec = ThresholdSpec((0.3, -0.4, 1.2), tuple(xs), nu)
            assert threshold_op(spec, xs) == pytest.approx(nu, abs=1e-12)

    def test_table_rows_via_threshold(self):
        # implication: w=(-1,1), nu_i=(0.5,0.5), nu=1 -> C = 1 - (-0.5 + 0.5) = 1
        spec = ThresholdSpec((-1.0, 1.0), (0.5, 0.5), 1.0)
        assert spec.constant() == 1.0
        x, y = grid_pairs()
        np.testing.assert_allclose(
            threshold_op(spec, [x, y]),
            binary_table_op(OperatorKind.IMPLICATION, x, y),
            atol=1e-12,
        )

    def test_length_mismatch(self):
        with pytest.raises(ConfigError):
            ThresholdSpec((1.0,), (0.5, 0.5), 0.5)
        with pytest.raises(DomainError):
            threshold_op(ThresholdSpec((1.0, 1.0), (1.0, 1.0), 1.0), [0.5])


BOOL_TABLES = {
    OperatorKind.CONJUNCTION: {(0, 0): 0, (0, 1): 0, (1, 0): 0, (1, 1): 1},
    OperatorKind.DISJUNCTION: {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1},
    OperatorKind.IMPLICATION: {(0, 0): 1, (0, 1): 1, (1, 0): 0, (1, 1): 1},
    # decision tools: corner values of their defining formulas
    OperatorKind.ARITHMETIC_MEAN: {(0, 0): 0, (0, 1): 0.5, (1, 0): 0.5, (1, 1): 1},
    OperatorKind.PREFERENCE: {(0, 0): 0.5, (0, 1): 1, (1, 0): 0, (1, 1): 0.5},
    OperatorKind.AGGREGATION: {(0, 0): 0, (0, 1): 0.5, (1, 0): 0.5, (1, 1): 1},
}


class TestBooleanCorners:
    @pytest.mark.parametrize("kind", list(BOOL_TABLES))
    @pytest.mark.parametrize("g", GENERATORS, ids=["identity", "power2"])
    def test_two_variable_corners(self, kind, g):
        for (x, y), expected in BOOL_TABLES[kind].items():
            if kind in (OperatorKind.CONJUNCTION, OperatorKind.DISJUNCTION, OperatorKind.AGGREGATION):
                value = nary_logical(kind, [float(x), float(y)], g)
            else:
                value = binary_table_op(kind, float(x), float(y), g)
            if expected == 0.5 and g is not IDENTITY:
                expected = g.neutral  # self-dual midpoint moves with f
            assert value == pytest.approx(expected, abs=1e-12), (kind, x, y)

    def test_nary_boolean_corners(self):
        for g in GENERATORS:
            for bits in itertools.product((0.0, 1.0), repeat=4):
                assert nary_logical(OperatorKind.CONJUNCTION, list(bits), g) == pytest.approx(
                    min(bits), abs=1e-12
                )
                assert nary_logical(OperatorKind.DISJUNCTION, list(bits), g) == pytest.approx(
                    max(bits), abs=1e-12
                )


class TestAlgebraicIdentities:
    def test_de_morgan_exact(self):
        x, y = grid_pairs()
        n = IDENTITY.negate
        lhs = nary_logical(OperatorKind.DISJUNCTION, [x, y])
        rhs = n(nary_logical(OperatorKind.CONJUNCTION, [n(x), n(y)]))
        assert np.max(np.abs(lhs - rhs)) <= 1e-12

    def test_law_of_contradiction_and_excluded_middle(self):
        n = IDENTITY.negate
        lhs = nary_logical(OperatorKind.CONJUNCTION, [GRID, n(GRID)])
        np.testing.assert_allclose(lhs, 0.0, atol=1e-12)
        rhs = nary_logical(OperatorKind.DISJUNCTION, [GRID, n(GRID)])
        np.testing.assert_allclose(rhs, 1.0, atol=1e-12)

    def test_aggregation_example(self):
        assert nary_logical(OperatorKind.AGGREGATION, [0.6, 0.7]) == pytest.approx(0.8, abs=1e-12)

    def test_disjunction_three_inputs(self):
        assert nary_logical(OperatorKind.DISJUNCTION, [0.2, 0.3, 0.4]) == pytest.approx(
            0.9, abs=1e-12
        )

    @given(st.lists(UNIT_FLOATS, min_size=2, max_size=5))
    @settings(max_examples=200)
    def test_nary_conjunction_equals_folded_binary(self, xs):
        folded = xs[0]
        for value in xs[1:]:
            folded = nary_logical(OperatorKind.CONJUNCTION, [folded, value])
        assert abs(nary_logical(OperatorKind.CONJUNCTION, xs) - folded) <= 1e-12


class TestBinaryTableOps:
    def test_implication_corners(self):
        assert binary_table_op(OperatorKind.IMPLICATION, 1.0, 0.0) == 0.0
        for y in (0.0, 0.4, 1.0):
            assert binary_table_op(OperatorKind.IMPLICATION, 0.0, y) == 1.0

    def test_preference_indifference(self):
        for x in GRID:
            assert binary_table_op(OperatorKind.PREFERENCE, x, x) == pytest.approx(0.5, abs=1e-12)

    def test_preference_example(self):
        assert binary_table_op(OperatorKind.PREFERENCE, 0.2, 0.8) == pytest.approx(0.8, abs=1e-12)

    def test_mean(self):
        assert binary_table_op(OperatorKind.ARITHMETIC_MEAN, 0.2, 0.8) == pytest.approx(
            0.5, abs=1e-12
        )

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            binary_table_op(OperatorKind.PREFERENCE, 1.2, 0.5)


class TestUnaryOps:
    def test_possibility(self):
        spec = UnaryOpSpec.possibility(2.0)
        assert spec.gamma == 0.0
        assert unary_modifier(spec, 0.6) == pytest.approx(1.0, abs=1e-12)

    def test_necessity(self):
        spec = UnaryOpSpec.necessity(2.0)
        assert spec.gamma == -1.0  # 1 - alpha
        assert unary_modifier(spec, 0.6) == pytest.approx(0.2, abs=1e-12)

    def test_sharpness_alpha_one_is_identity(self):
        spec = UnaryOpSpec.sharpness(1.0)
        assert spec.gamma == 0.0
        for g in GENERATORS:
            for x in (0.0, 0.3, 0.75, 1.0):
                assert unary_modifier(spec, x, g) == pytest.approx(x, abs=1e-12)

    def test_sharpness_keeps_neutral_fixed(self):
        # the formula alpha*f(x) - (alpha-1)/2 leaves f^{-1}(1/2) in place
        for alpha in (1.5, 2.0, 4.0):
            spec = UnaryOpSpec.sharpness(alpha)
            assert unary_modifier(spec, 0.5) == pytest.approx(0.5, abs=1e-12)
            assert unary_modifier(spec, 0.2) < 0.2
            assert unary_modifier(spec, 0.8) > 0.8


class TestMinMax:
    def test_examples(self):
        assert min_max_via_cut(OperatorKind.MIN, 0.3, 0.8) == pytest.approx(0.3, abs=1e-12)
        assert min_max_via_cut(OperatorKind.MAX, 0.3, 0.8) == pytest.approx(0.8, abs=1e-12)

    def test_idempotence(self):
        for x in GRID:
            assert min_max_via_cut(OperatorKind.MIN, x, x) == pytest.approx(x, abs=1e-12)
            assert min_max_via_cut(OperatorKind.MAX, x, x) == pytest.approx(x, abs=1e-12)

    def test_equals_builtin_on_grid(self):
        x, y = grid_pairs()
        np.testing.assert_allclose(
            min_max_via_cut(OperatorKind.MIN, x, y), np.minimum(x, y), atol=1e-12
        )
        np.testing.assert_allclose(
            min_max_via_cut(OperatorKind.MAX, x, y), np.maximum(x, y), atol=1e-12
        )

    @given(UNIT_FLOATS, UNIT_FLOATS)
    @settings(max_examples=300)
    def test_matches_builtin(self, x, y):
        assert abs(min_max_via_cut(OperatorKind.MIN, x, y) - min(x, y)) <= 1e-12
        assert abs(min_max_via_cut(OperatorKind.MAX, x, y) - max(x, y)) <= 1e-12


class TestOperatorToPerceptron:
    def test_table_rows(self):
        conj = operator_to_perceptron(OperatorKind.CONJUNCTION, 2)
        assert (conj.weights, conj.constant) == ((1.0, 1.0), -1.0)
        neg = operator_to_perceptron(OperatorKind.NEGATION, 1)
        assert (neg.weights, neg.constant) == ((-1.0,), 1.0)
        pref = operator_to_perceptron(OperatorKind.PREFERENCE, 2)
        assert (pref.weights, pref.constant) == ((-0.5, 0.5), 0.5)
        disj = operator_to_perceptron(OperatorKind.DISJUNCTION, 3)
        assert (disj.weights, disj.constant) == ((1.0, 1.0, 1.0), 0.0)
        agg = operator_to_perceptron(OperatorKind.AGGREGATION, 3)
        assert (agg.weights, agg.constant) == ((1.0, 1.0, 1.0), -1.0)

    def test_shared_weights_differ_only_in_bias(self):
        # conjunction / disjunction / aggregation share the weight vector
        kinds = (OperatorKind.CONJUNCTION, OperatorKind.DISJUNCTION, OperatorKind.AGGREGATION)
        specs = [operator_to_perceptron(k, 4) for k in kinds]
        assert len({s.weights for s in specs}) == 1
        assert len({s.constant for s in specs}) == 3

    def test_binary_only_kinds_reject_other_arity(self):
        with pytest.raises(ConfigError):
            operator_to_perceptron(OperatorKind.PREFERENCE, 3)
        with pytest.raises(ConfigError):
            operator_to_perceptron(OperatorKind.IMPLICATION, 1)
        with pytest.raises(ConfigError):
            operator_to_perceptron(OperatorKind.NEGATION, 2)

    def test_mean_extends_nary(self):
        mean3 = operator_to_perceptron(OperatorKind.ARITHMETIC_MEAN, 3)
        np.testing.assert_allclose(mean3.weights, [1 / 3] * 3)
        assert mean3.constant == 0.0

    def test_roundtrip_through_threshold_evaluation(self):
        rng = np.random.default_rng(42)
        xs2 = rng.uniform(0, 1, size=(200, 2))
        cases = {
            OperatorKind.CONJUNCTION: lambda x, y: nary_logical(OperatorKind.CONJUNCTION, [x, y]),
            OperatorKind.DISJUNCTION: lambda x, y: nary_logical(OperatorKind.DISJUNCTION, [x, y]),
            OperatorKind.AGGREGATION: lambda x, y: nary_logical(OperatorKind.AGGREGATION, [x, y]),
            OperatorKind.IMPLICATION: lambda x, y: binary_table_op(OperatorKind.IMPLICATION, x, y),
            OperatorKind.PREFERENCE: lambda x, y: binary_table_op(OperatorKind.PREFERENCE, x, y),
            OperatorKind.ARITHMETIC_MEAN: lambda x, y: binary_table_op(
                OperatorKind.ARITHMETIC_MEAN, x, y
            ),
        }
        for kind, reference in cases.items():
            spec = operator_to_perceptron(kind, 2)
            values = spec.evaluate([xs2[:, 0], xs2[:, 1]])
            np.testing.assert_allclose(values, reference(xs2[:, 0], xs2[:, 1]), atol=1e-12)
        neg = operator_to_perceptron(OperatorKind.NEGATION, 1)
        np.testing.assert_allclose(
            neg.evaluate([xs2[:, 0]]), IDENTITY.negate(xs2[:, 0]), atol=1e-12
        )

    def test_minmax_template(self):
        rng = np.random.default_rng(1)
        xs2 = rng.uniform(0, 1, size=(200, 2))
        for kind, reference in ((OperatorKind.MIN, np.minimum), (OperatorKind.MAX, np.maximum)):
            template = operator_to_perceptron(kind, 2)
            assert isinstance(template, MinMaxTemplate)
            assert len(template.stages) == 2
            values = template.evaluate(xs2[:, 0], xs2[:, 1])
            np.testing.assert_allclose(values, reference(xs2[:, 0], xs2[:, 1]), atol=1e-12)

    def test_nu_is_informational(self):
        assert operator_to_perceptron(OperatorKind.CONJUNCTION, 2).nu == 1.0
        assert operator_to_perceptron(OperatorKind.DISJUNCTION, 2).nu == 0.0
        assert operator_to_perceptron(OperatorKind.AGGREGATION, 2).nu == 0.5
        g = power_generator(2.0)
        assert operator_to_perceptron(OperatorKind.AGGREGATION, 2, g).nu == pytest.approx(
            g.neutral
        )


class TestOperatorSpecValidation:
    def test_weights_length_must_match_arity(self):
        with pytest.raises(ConfigError):
            OperatorSpec(OperatorKind.CONJUNCTION, 3, (1.0, 1.0), -1.0, 1.0)

    def test_evaluate_arity_check(self):
        spec = operator_to_perceptron(OperatorKind.CONJUNCTION, 2)
        with pytest.raises(DomainError):
            spec.evaluate([0.1, 0.2, 0.3])
