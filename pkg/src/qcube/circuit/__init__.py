from .lexer import LexError, Token, tokenize
from .parser import (
    AngleNotQuarterTurn,
    Circuit,
    ClassicalModeViolation,
    Measure,
    MissingPreparation,
    Mix,
    ParseError,
    Prepare,
    Rot,
    WeightsNotNormalized,
    format_circuit,
    parse,
)
from .run import BranchOutcome, eval_exact, eval_json, sample, sample_json, sample_scalar, sample_shot

__all__ = [
    "AngleNotQuarterTurn", "BranchOutcome", "Circuit", "ClassicalModeViolation", "LexError",
    "Measure", "MissingPreparation", "Mix", "ParseError", "Prepare", "Rot", "Token",
    "WeightsNotNormalized", "eval_exact", "eval_json", "format_circuit", "parse", "sample",
    "sample_json", "sample_scalar", "sample_shot", "tokenize",
]
