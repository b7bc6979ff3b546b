"""Logical-expression DSL: parser, network compiler and explainer.

Grammar (keywords case-insensitive)::

    expr    := term (OR term)*
    term    := factor (AND factor)*
    factor  := NOT factor | '(' expr ')' | atom
             | PREF '(' expr ',' expr ')' | IMPL '(' expr ',' expr ')'
             | MEAN '(' expr {',' expr} ')' | AGG '(' expr {',' expr} ')'
             | MIN '(' expr ',' expr ')'  | MAX '(' expr ',' expr ')'
    atom    := side ('<' | '>') side
    side    := ['+'|'-'] product {('+'|'-') product}
    product := number ['*' varpow | '^' number] | varpow
    varpow  := variable ['^' '2']

Variables are the playground coordinates ``x``/``x1`` and ``y``/``x2``;
squared variables are allowed in atoms (circle-like units).

Compilation lowers a tree onto perceptron layers: one first-layer unit
per distinct atom (membership of the inequality), frozen operator
units above, negation folded into the consuming unit's weights
(weights negated, bias raised by the old weight).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import GeneratorFunction, IDENTITY, SquashingParams, cut, cut_ramp
from .errors import CompileError, ParseError
from .network import (
    FeatureSpec,
    HardCut,
    LayerSpec,
    NetworkSpec,
    Squashing,
    raw,
    squared,
)
from .operators import (
    OperatorKind,
    UnaryOpSpec,
    binary_table_op,
    min_max_via_cut,
    nary_logical,
    unary_modifier,
    weighted_general_op,
)

__all__ = [
    "Atom",
    "Not",
    "NaryOp",
    "BinaryOp",
    "UnaryMod",
    "parse_expression",
    "compile_to_network",
    "evaluate_ast",
    "explain_network",
]

_VARIABLES = {"x": 0, "x1": 0, "y": 1, "x2": 1}
_N_VARS = 2


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Atom:
    """Linear inequality P(v) <cmp> 0 with P = lin.v + sq.v^2 + const."""

    linear: tuple[float, float]
    squares: tuple[float, float]
    constant: float
    direction: str = ">"
    text: str = field(default="", compare=False)

    def polynomial(self, pts: np.ndarray) -> np.ndarray:
        v = pts
        return (
            self.linear[0] * v[:, 0]
            + self.linear[1] * v[:, 1]
            + self.squares[0] * v[:, 0] ** 2
            + self.squares[1] * v[:, 1] ** 2
            + self.constant
        )


@dataclass(frozen=True)
class Not:
    child: "Node"


@dataclass(frozen=True)
class NaryOp:
    kind: OperatorKind  # CONJUNCTION, DISJUNCTION, AGGREGATION or ARITHMETIC_MEAN
    children: tuple["Node", ...]


@dataclass(frozen=True)
class BinaryOp:
    kind: OperatorKind  # IMPLICATION, PREFERENCE, MIN or MAX
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class UnaryMod:
    spec: UnaryOpSpec
    child: "Node"


Node = Atom | Not | NaryOp | BinaryOp | UnaryMod


# ---------------------------------------------------------------------------
# Tokenizer / parser

_KEYWORDS = {
    "AND": "AND",
    "OR": "OR",
    "NOT": "NOT",
    "PREF": "PREF",
    "IMPL": "IMPL",
    "MEAN": "MEAN",
    "AGG": "AGG",
    "MIN": "MIN",
    "MAX": "MAX",
}
_PUNCT = {
    "(": "LPAREN",
    ")": "RPAREN",
    ",": "COMMA",
    "<": "LT",
    ">": "GT",
    "+": "PLUS",
    "-": "MINUS",
    "*": "STAR",
    "^": "CARET",
}


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch in _PUNCT:
            tokens.append(_Token(_PUNCT[ch], ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < len(text) and text[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < len(text) and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                seen_dot = seen_dot or text[j] == "."
                j += 1
            tokens.append(_Token("NUMBER", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = _KEYWORDS.get(word.upper())
            tokens.append(_Token(kind or "IDENT", word, line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        if not text or not text.strip():
            raise ParseError("empty expression")
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.value or 'end of input'!r}", tok.line, tok.col)
        return self.next()

    def fail(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.col)

    # expr := term (OR term)*
    def parse_expr(self) -> Node:
        children = [self.parse_term()]
        while self.peek().kind == "OR":
            self.next()
            children.append(self.parse_term())
        if len(children) == 1:
            return children[0]
        return NaryOp(OperatorKind.DISJUNCTION, tuple(children))

    # term := factor (AND factor)*
    def parse_term(self) -> Node:
        children = [self.parse_factor()]
        while self.peek().kind == "AND":
            self.next()
            children.append(self.parse_factor())
        if len(children) == 1:
            return children[0]
        return NaryOp(OperatorKind.CONJUNCTION, tuple(children))

    def parse_factor(self) -> Node:
        tok = self.peek()
        if tok.kind == "NOT":
            self.next()
            return Not(self.parse_factor())
        if tok.kind == "LPAREN":
            self.next()
            inner = self.parse_expr()
            self.expect("RPAREN")
            return inner
        if tok.kind in ("PREF", "IMPL", "MIN", "MAX"):
            self.next()
            self.expect("LPAREN")
            left = self.parse_expr()
            self.expect("COMMA")
            right = self.parse_expr()
            self.expect("RPAREN")
            kind = {
                "PREF": OperatorKind.PREFERENCE,
                "IMPL": OperatorKind.IMPLICATION,
                "MIN": OperatorKind.MIN,
                "MAX": OperatorKind.MAX,
            }[tok.kind]
            return BinaryOp(kind, left, right)
        if tok.kind in ("MEAN", "AGG"):
            self.next()
            self.expect("LPAREN")
            children = [self.parse_expr()]
            while self.peek().kind == "COMMA":
                self.next()
                children.append(self.parse_expr())
            self.expect("RPAREN")
            if len(children) < 2:
                raise ParseError(f"{tok.value} needs at least two arguments", tok.line, tok.col)
            kind = OperatorKind.ARITHMETIC_MEAN if tok.kind == "MEAN" else OperatorKind.AGGREGATION
            return NaryOp(kind, tuple(children))
        if tok.kind in ("IDENT", "NUMBER", "MINUS", "PLUS"):
            return self.parse_atom()
        self.fail(f"unexpected token {tok.value!r}")

    def parse_atom(self) -> Atom:
        start = self.pos
        lin_l, sq_l, c_l = self.parse_side()
        cmp_tok = self.next()
        if cmp_tok.kind not in ("LT", "GT"):
            raise ParseError("expected '<' or '>' in atom", cmp_tok.line, cmp_tok.col)
        lin_r, sq_r, c_r = self.parse_side()
        direction = ">" if cmp_tok.kind == "GT" else "<"
        lin = tuple(a - b for a, b in zip(lin_l, lin_r))
        sq = tuple(a - b for a, b in zip(sq_l, sq_r))
        const = c_l - c_r
        if all(v == 0.0 for v in lin) and all(v == 0.0 for v in sq):
            raise ParseError("atom has no variable term", cmp_tok.line, cmp_tok.col)
        parts: list[str] = []
        glue = False
        for t in self.tokens[start : self.pos]:
            if t.kind == "EOF":
                continue
            if glue:
                parts[-1] += t.value
                glue = False
            elif parts and t.kind in ("STAR", "CARET"):
                parts[-1] += t.value
                glue = True
            elif t.kind in ("MINUS", "PLUS") and (not parts or parts[-1] in ("<", ">")):
                parts.append(t.value)
                glue = True
            else:
                parts.append(t.value)
        return Atom(lin, sq, const, direction, " ".join(parts))

    def parse_side(self):
        lin = [0.0, 0.0]
        sq = [0.0, 0.0]
        const = 0.0
        sign = 1.0
        tok = self.peek()
        if tok.kind in ("PLUS", "MINUS"):
            self.next()
            sign = -1.0 if tok.kind == "MINUS" else 1.0
        while True:
            coeff, var_idx, power = self.parse_product()
            value = sign * coeff
            if var_idx is None:
                const += value
            elif power == 2:
                sq[var_idx] += value
            else:
                lin[var_idx] += value
            tok = self.peek()
            if tok.kind == "PLUS":
                self.next()
                sign = 1.0
            elif tok.kind == "MINUS":
                self.next()
                sign = -1.0
            else:
                return tuple(lin), tuple(sq), const

    def parse_product(self):
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.next()
            value = float(tok.value)
            nxt = self.peek()
            if nxt.kind == "CARET":
                self.next()
                exp_tok = self.expect("NUMBER")
                return value ** float(exp_tok.value), None, 1
            if nxt.kind == "STAR":
                self.next()
                var_idx, power = self.parse_varpow()
                return value, var_idx, power
            return value, None, 1
        if tok.kind == "IDENT":
            var_idx, power = self.parse_varpow()
            return 1.0, var_idx, power
        self.fail(f"expected a number or variable, found {tok.value or 'end of input'!r}")

    def parse_varpow(self):
        tok = self.expect("IDENT")
        if tok.value not in _VARIABLES:
            raise ParseError(f"unknown variable {tok.value!r}", tok.line, tok.col)
        idx = _VARIABLES[tok.value]
        if self.peek().kind == "CARET":
            self.next()
            exp_tok = self.expect("NUMBER")
            if float(exp_tok.value) != 2.0:
                raise ParseError("only squared variables are supported", exp_tok.line, exp_tok.col)
            return idx, 2
        return idx, 1


def parse_expression(text: str) -> Node:
    """Parse DSL text into an expression tree."""
    parser = _Parser(text)
    root = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "EOF":
        raise ParseError(f"unexpected trailing input {tok.value!r}", tok.line, tok.col)
    return root


# ---------------------------------------------------------------------------
# Atom canonicalization and membership rows


_VAR_NAMES = ("x", "y")


def _canonical_atom(atom: Atom) -> tuple[Atom, bool]:
    """Rewrite to direction '>' form; single-variable atoms additionally
    keep a positive coefficient, returning a negation flag instead
    (``x < 0`` becomes NOT of the ``x > 0`` unit, matching the bias-+1
    treatment of negated inputs)."""
    lin, sq, const = atom.linear, atom.squares, atom.constant
    if atom.direction == "<":
        lin = tuple(-v for v in lin)
        sq = tuple(-v for v in sq)
        const = -const
    negated = False
    text = atom.text
    nonzero_lin = [v for v in lin if v != 0.0]
    if not any(sq) and len(nonzero_lin) == 1 and nonzero_lin[0] < 0:
        lin = tuple(-v for v in lin)
        const = -const
        negated = True
        # the unit now encodes the positive form; label it that way
        idx = next(i for i, v in enumerate(lin) if v != 0.0)
        threshold = -const / lin[idx]
        coeff = "" if lin[idx] == 1.0 else f"{lin[idx]:g}*"
        text = f"{coeff}{_VAR_NAMES[idx]} > {threshold:g}"
    return Atom(lin, sq, const, ">", text), negated


@dataclass(frozen=True)
class _Membership:
    """First-layer row for one canonical atom."""

    weights: tuple[float, ...]  # over (lin0, lin1, sq0, sq1)
    bias: float
    scale: float
    boundary: float  # activation input value on the inequality boundary
    style: str


def _membership(atom: Atom) -> _Membership:
    lin, sq, const = atom.linear, atom.squares, atom.constant
    if any(sq):
        m = max(1.0, *(abs(v) for v in lin + sq))
        s = 1.0 / m
        return _Membership(
            tuple(v * s for v in lin + sq), 0.5 + const * s, s, 0.5, "squared"
        )
    nonzero = [v for v in lin if v != 0.0]
    if len(nonzero) == 1:
        c = nonzero[0]  # positive after canonicalization
        s = 1.0 / c
        return _Membership(tuple(v * s for v in lin + sq), const * s, s, 0.0, "single")
    m = max(1.0, *(abs(v) for v in lin))
    s = 1.0 / (2.0 * m)
    return _Membership(
        tuple(v * s for v in lin + sq), 0.5 + const * s, s, 0.5, "preference"
    )


def _atom_truth(atom: Atom, pts: np.ndarray, crisp: bool) -> np.ndarray:
    """Membership of a canonical atom at raw coordinate points."""
    mem = _membership(atom)
    w = np.array(mem.weights)
    feats = np.column_stack([pts[:, 0], pts[:, 1], pts[:, 0] ** 2, pts[:, 1] ** 2])
    z = feats @ w + mem.bias
    if crisp:
        return cut_ramp(z, mem.boundary, 0.0)
    return cut(z)


# ---------------------------------------------------------------------------
# Compilation

_BASE_WEIGHTS = {
    OperatorKind.CONJUNCTION: lambda n: ((1.0,) * n, -(n - 1.0), "AND"),
    OperatorKind.DISJUNCTION: lambda n: ((1.0,) * n, 0.0, "OR"),
    OperatorKind.AGGREGATION: lambda n: ((1.0,) * n, -(n - 1.0) / 2.0, "AGG"),
    OperatorKind.ARITHMETIC_MEAN: lambda n: ((1.0 / n,) * n, 0.0, "MEAN"),
    OperatorKind.IMPLICATION: lambda n: ((-1.0, 1.0), 1.0, "IMPL"),
    OperatorKind.PREFERENCE: lambda n: ((-0.5, 0.5), 0.5, "PREF"),
}


@dataclass
class _UnitDraft:
    weights: dict[int, float]
    bias: float
    label: str
    negated_inputs: tuple[int, ...] = ()


class _Lowering:
    def __init__(self, mode: str, squash_params: SquashingParams):
        self.mode = mode
        self.squash_params = squash_params
        self.atoms: list[Atom] = []
        self.atom_index: dict[tuple, int] = {}
        self.levels: list[list[_UnitDraft]] = []

    def atom_unit(self, atom: Atom) -> int:
        key = (atom.linear, atom.squares, atom.constant)
        if key not in self.atom_index:
            self.atom_index[key] = len(self.atoms)
            self.atoms.append(atom)
        return self.atom_index[key]

    def add_unit(self, level: int, unit: _UnitDraft) -> int:
        while len(self.levels) < level:
            self.levels.append([])
        self.levels[level - 1].append(unit)
        return len(self.levels[level - 1]) - 1

    def pad_to(self, ref: tuple[int, int, bool], level: int) -> tuple[int, int, bool]:
        """Raise a value to ``level`` with passthrough units; a pending
        negation is folded into the first passthrough (a NOT unit)."""
        cur_level, idx, negated = ref
        while cur_level < level:
            if negated:
                unit = _UnitDraft({idx: -1.0}, 1.0, "NOT")
                negated = False
            else:
                unit = _UnitDraft({idx: 1.0}, 0.0, "pass")
            idx = self.add_unit(cur_level + 1, unit)
            cur_level += 1
        return cur_level, idx, negated

    def lower(self, node: Node) -> tuple[int, int, bool]:
        if isinstance(node, Atom):
            canon, negated = _canonical_atom(node)
            return 0, self.atom_unit(canon), negated
        if isinstance(node, Not):
            level, idx, negated = self.lower(node.child)
            return level, idx, not negated
        if isinstance(node, UnaryMod):
            ref = self.lower(node.child)
            level = ref[0] + 1
            _, idx, negated = self.pad_to(ref, level - 1)
            alpha, gamma = node.spec.alpha, node.spec.gamma
            if negated:
                gamma += alpha
                alpha = -alpha
            unit = _UnitDraft(
                {idx: alpha}, gamma, node.spec.kind.value.upper(), (idx,) if negated else ()
            )
            return level, self.add_unit(level, unit), False
        if isinstance(node, BinaryOp) and node.kind in (OperatorKind.MIN, OperatorKind.MAX):
            return self.lower_minmax(node)
        if isinstance(node, (NaryOp, BinaryOp)):
            children = list(node.children) if isinstance(node, NaryOp) else [node.left, node.right]
            base = _BASE_WEIGHTS.get(node.kind)
            if base is None:
                raise CompileError(f"operator {node.kind.value} cannot be compiled")
            refs = [self.lower(child) for child in children]
            level = 1 + max(ref[0] for ref in refs)
            refs = [self.pad_to(ref, level - 1) for ref in refs]
            base_w, base_b, label = base(len(children))
            weights: dict[int, float] = {}
            bias = base_b
            negated_inputs = []
            for (_, idx, negated), w in zip(refs, base_w):
                if negated:
                    bias += w
                    w = -w
                    negated_inputs.append(idx)
                weights[idx] = weights.get(idx, 0.0) + w
            unit = _UnitDraft(weights, bias, label, tuple(negated_inputs))
            return level, self.add_unit(level, unit), False
        raise CompileError(f"unsupported expression node {type(node).__name__}")

    def lower_minmax(self, node: BinaryOp) -> tuple[int, int, bool]:
        refs = [self.lower(node.left), self.lower(node.right)]
        # both stage-1 units consume each child, so a pending negation is
        # materialized once as its own NOT unit instead of folded twice
        refs = [self.pad_to(r, r[0] + 1) if r[2] else r for r in refs]
        stage1 = 1 + max(ref[0] for ref in refs)
        (_, ia, _), (_, ib, _) = (self.pad_to(r, stage1 - 1) for r in refs)
        # Stage 1: pass x through and compute the inner cut [y - x + c].
        pass_unit = _UnitDraft({ia: 1.0}, 0.0, "pass")
        inner_c = 1.0 if node.kind == OperatorKind.MIN else 0.0
        inner_unit = _UnitDraft(
            {ia: -1.0, ib: 1.0} if ia != ib else {ia: 0.0},
            inner_c,
            "min-step" if node.kind == OperatorKind.MIN else "max-step",
        )
        p_idx = self.add_unit(stage1, pass_unit)
        i_idx = self.add_unit(stage1, inner_unit)
        # Stage 2: conjunction (min) or disjunction (max) of the two.
        outer_b = -1.0 if node.kind == OperatorKind.MIN else 0.0
        label = "MIN" if node.kind == OperatorKind.MIN else "MAX"
        unit = _UnitDraft({p_idx: 1.0, i_idx: 1.0}, outer_b, label)
        return stage1 + 1, self.add_unit(stage1 + 1, unit), False


def compile_to_network(
    node: Node,
    squash_params: SquashingParams | None = None,
    mode: str = "squash",
) -> NetworkSpec:
    """Lower an expression tree to a network specification.

    ``mode`` selects the activations: ``"squash"`` (differentiable,
    default), ``"cut"`` (exact cut ramps everywhere) or ``"crisp"``
    (step memberships in the first layer + exact cut logic, for
    exact-logic classification).
    """
    if mode not in ("squash", "cut", "crisp"):
        raise CompileError(f"unknown compile mode {mode!r}")
    params = squash_params or SquashingParams()
    lowering = _Lowering(mode, params)
    level, idx, negated = lowering.lower(node)
    if negated:
        unit = _UnitDraft({idx: -1.0}, 1.0, "NOT")
        idx = lowering.add_unit(level + 1, unit)
        level += 1

    atoms = lowering.atoms
    if not atoms:
        raise CompileError("expression contains no atoms")
    use_squares = [i for i in range(_N_VARS) if any(a.squares[i] != 0.0 for a in atoms)]
    features: list[FeatureSpec] = [raw(i) for i in range(_N_VARS)]
    sq_pos = {}
    for i in use_squares:
        sq_pos[i] = len(features)
        features.append(squared(i))

    memberships = [_membership(a) for a in atoms]
    first_w = np.zeros((len(atoms), len(features)))
    first_b = np.zeros(len(atoms))
    notes = []
    for row, (atom, mem) in enumerate(zip(atoms, memberships)):
        for i in range(_N_VARS):
            first_w[row, i] = mem.weights[i]
        for i, pos in sq_pos.items():
            first_w[row, pos] = mem.weights[_N_VARS + i]
        first_b[row] = mem.bias
        notes.append(f"scale={mem.scale:g}, boundary={mem.boundary:g}")

    def op_activation():
        if mode == "squash":
            return Squashing(params)
        return HardCut(0.5, 1.0)

    def first_activation():
        if mode == "squash":
            return Squashing(params)
        if mode == "cut":
            return HardCut(0.5, 1.0)
        return HardCut(tuple(m.boundary for m in memberships), 0.0)

    layers = [
        LayerSpec(
            first_w,
            first_b,
            frozen=True,
            activation=first_activation(),
            label="membership",
            unit_labels=tuple(a.text or "atom" for a in atoms),
            unit_notes=tuple(notes),
        )
    ]
    prev_dim = len(atoms)
    prev_labels = [a.text or "atom" for a in atoms]
    for depth, units in enumerate(lowering.levels, start=1):
        if not units:
            raise CompileError("internal: empty layer produced")
        w = np.zeros((len(units), prev_dim))
        b = np.zeros(len(units))
        op_notes = []
        for row, unit in enumerate(units):
            for idx_in, weight in unit.weights.items():
                w[row, idx_in] = weight
            b[row] = unit.bias
            op_notes.append(
                ", ".join(f"NOT {prev_labels[j]}" for j in unit.negated_inputs)
            )
        layers.append(
            LayerSpec(
                w,
                b,
                frozen=True,
                activation=op_activation(),
                label=f"logic level {depth}",
                unit_labels=tuple(u.label for u in units),
                unit_notes=tuple(op_notes) if any(op_notes) else None,
            )
        )
        prev_dim = len(units)
        prev_labels = [u.label for u in units]
    if layers[-1].out_dim != 1:
        raise CompileError("internal: expression root did not produce a single output")
    return NetworkSpec(features, layers)


# ---------------------------------------------------------------------------
# Reference evaluation (oracle for compile equivalence)


def evaluate_ast(node: Node, pts, mode: str = "cut", g: GeneratorFunction = IDENTITY):
    """Recursively evaluate an expression at raw coordinate points.

    ``mode="cut"`` uses the exact cut-ramp memberships, ``"crisp"``
    indicator memberships.  Operator nodes always go through the
    operator-module functions, which keeps this path independent of the
    compiled network arithmetic.
    """
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    if mode not in ("cut", "crisp"):
        raise CompileError(f"unknown evaluation mode {mode!r}")

    def rec(n: Node) -> np.ndarray:
        if isinstance(n, Atom):
            canon, negated = _canonical_atom(n)
            t = _atom_truth(canon, pts, crisp=(mode == "crisp"))
            return g.negate(t) if negated else t
        if isinstance(n, Not):
            return g.negate(rec(n.child))
        if isinstance(n, UnaryMod):
            return unary_modifier(n.spec, rec(n.child), g)
        if isinstance(n, NaryOp):
            values = [rec(c) for c in n.children]
            if n.kind == OperatorKind.ARITHMETIC_MEAN:
                w = np.full(len(values), 1.0 / len(values))
                return weighted_general_op(g.neutral, w, values, g)
            return nary_logical(n.kind, values, g)
        if isinstance(n, BinaryOp):
            left, right = rec(n.left), rec(n.right)
            if n.kind in (OperatorKind.MIN, OperatorKind.MAX):
                return min_max_via_cut(n.kind, left, right)
            return binary_table_op(n.kind, left, right, g)
        raise CompileError(f"unsupported expression node {type(n).__name__}")

    return rec(node)


# ---------------------------------------------------------------------------
# Explanation


def _fmt(value: float) -> str:
    return f"{value:g}"


def explain_network(spec: NetworkSpec | object) -> str:
    """Human-readable report of layers, weights and encoded inequalities.

    First-layer lines carry the inequality each unit encodes plus its
    normalization scale; operator lines carry folded-negation notes.
    """
    layers = spec.layers
    features = spec.input_features
    lines = ["inputs: " + ", ".join(f.label() for f in features)]
    for li, layer in enumerate(layers):
        weights = np.asarray(layer.weights)
        bias = np.asarray(layer.bias)
        frozen = "frozen" if layer.frozen else "learnable"
        caption = layer.label or ("membership" if li == 0 else f"layer {li}")
        if not layer.frozen and not layer.unit_labels:
            caption = "learnable membership layer" if li == 0 else f"learnable layer {li}"
        lines.append(f"layer {li + 1} - {caption} ({frozen}):")
        labels = list(layer.unit_labels or ("unit",) * layer.out_dim)
        notes = list(layer.unit_notes or ("",) * layer.out_dim)
        for row in range(weights.shape[0]):
            wtxt = ",".join(_fmt(v) for v in weights[row])
            line = f"  {labels[row]}: w=({wtxt}), b={_fmt(bias[row])}"
            if notes[row]:
                line += f" [{notes[row]}]"
            lines.append(line)
    return "\n".join(lines)
