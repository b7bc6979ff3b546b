"""Interpretable networks from nilpotent continuous-logic operators.

The hidden layers of these networks are frozen perceptrons that
implement continuous logical and multicriteria decision operators; only
the first-layer membership functions are learned.  A small expression
DSL compiles logic directly to network weights, and a playground
service exposes interactive training sessions.
"""

from .core import (
    GeneratorFunction,
    IDENTITY,
    SquashingParams,
    cut,
    cut_ramp,
    power_generator,
    sigmoid,
    squash,
    squash_partials,
)
from .compiler import compile_to_network, evaluate_ast, explain_network, parse_expression
from .data import DatasetConfig, DatasetKind, LabeledPoint, generate_dataset, split
from .errors import (
    CompileError,
    ConfigError,
    DomainError,
    LogicNetError,
    ModelFormatError,
    ParseError,
    TrainingError,
)
from .model_io import load_model, save_model
from .network import (
    FeatureSpec,
    GradientSet,
    HardCut,
    LayerSpec,
    Linear,
    Network,
    NetworkSpec,
    Squashing,
    assemble,
    backward,
    forward,
    predict,
    raw,
    sgd_step,
    squared,
)
from .operators import (
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
    threshold_op,
    unary_modifier,
    weighted_general_op,
)
from .presets import PRESET_EXPRESSIONS, trainable_spec
from .trainer import (
    EpochMetrics,
    GridSnapshot,
    SessionStatus,
    TrainConfig,
    TrainingSession,
    accuracy,
    evaluate_grid,
    run_training,
    train_steps,
)

__version__ = "0.1.0"
