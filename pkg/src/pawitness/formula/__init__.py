"""Terms, sentences, parsing, rendering and evaluation over the standard model."""

from .parser import ParseError, UnknownIdentifierError, parse, parse_term
from .printer import DEFAULT_EXPANSION_CAP, render, render_term
from .semantics import (
    FALSE,
    TRUE,
    Assignment,
    EvaluationError,
    MissingConstantError,
    UnboundVariableError,
    UntaggedSentenceError,
    Verdict,
    eval_bounded,
    eval_schema,
    eval_term,
)
from .syntax import (
    Add,
    And,
    Const,
    Eq,
    Exists,
    ForAll,
    Implies,
    Mul,
    Not,
    Numeral,
    Or,
    Schema,
    SchemaTag,
    Succ,
    TaggedSentence,
    Var,
    Zero,
    constants,
    free_vars,
    ge,
    gt,
    is_closed,
    le,
    lt,
    ne,
    normalize,
    normalize_term,
    numeral,
    structurally_equal,
)
