"""Parsers and printers for formulas, models and state functions."""

from .formulas import parse_fol, parse_modal, print_fol, print_modal
from .lexer import ParseError, SourceSpan
from .models import parse_model, parse_state_function, print_model, print_state_function

__all__ = [
    "ParseError",
    "SourceSpan",
    "parse_fol",
    "parse_modal",
    "parse_model",
    "parse_state_function",
    "print_fol",
    "print_modal",
    "print_model",
    "print_state_function",
]
