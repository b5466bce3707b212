"""Truth values, models, formula syntax trees and distance tables."""

from . import fol, modal
from .errors import (
    AtomMismatchError,
    FuzzyModalError,
    GameSizeError,
    IllegalMoveError,
    ModelError,
    NotNonExpansiveError,
    PseudometricError,
    UnboundVariableError,
    UnknownAtomError,
    UnknownStateError,
)
from .fol import qrank
from .modal import rank
from .model import Model, disjoint_union
from .table import DistanceTable
from .truth import (
    ONE,
    ZERO,
    Truth,
    TruthRangeError,
    abs_diff,
    complement,
    format_decimal,
    format_truth,
    grid,
    grid_denominator,
    parse_truth,
    truth,
    tsub,
)
