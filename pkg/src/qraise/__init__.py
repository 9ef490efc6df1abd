"""QBF encodings into abduction, default logic, and STRIPS-style planning,
with brute-force deciders for all three targets and a checking harness."""

from .errors import (
    ContractError,
    EvaluationError,
    ParseError,
    QraiseError,
    ResourceLimitError,
    UnsupportedShapeError,
)
from .formulas import (
    And,
    Const,
    FALSE,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    TRUE,
    Var,
    consistent,
    entails,
    evaluate,
    size,
    substitute,
    variables,
)
from .parsing import (
    parse_formula,
    parse_qbf,
    serialize_formula,
    serialize_qbf,
    serialize_qbf_compact,
)
from .qbf import Qbf, Quantifier, qbf_valid, qbf_valid_by_table

__version__ = "0.1.0"

__all__ = [
    "And",
    "Const",
    "ContractError",
    "EvaluationError",
    "FALSE",
    "Formula",
    "Iff",
    "Implies",
    "Not",
    "Or",
    "ParseError",
    "Qbf",
    "QraiseError",
    "Quantifier",
    "ResourceLimitError",
    "TRUE",
    "UnsupportedShapeError",
    "Var",
    "consistent",
    "entails",
    "evaluate",
    "parse_formula",
    "parse_qbf",
    "qbf_valid",
    "qbf_valid_by_table",
    "serialize_formula",
    "serialize_qbf",
    "serialize_qbf_compact",
    "size",
    "substitute",
    "variables",
]
