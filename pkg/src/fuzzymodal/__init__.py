"""Fuzzy modal logic over finite fuzzy relational models.

Exact rational semantics for modal and first-order formulas, behavioural
distances computed three ways (recurrence, bisimulation games, Kantorovich
lifting), witness synthesis and modal approximation, Gaifman locality and
unravelling.
"""

from .approx import (
    Approximator,
    Signature,
    approximate_function,
    quotient_by_signature,
    signature,
    synth_witness,
)
from .core import (
    DistanceTable,
    FuzzyModalError,
    Model,
    Truth,
    disjoint_union,
    fol,
    modal,
    qrank,
    rank,
    truth,
)
from .games import (
    DUPLICATOR,
    SPOILER,
    BisimGame,
    EFGame,
    GameOutcome,
    Move,
    bisim_wins,
    ef_wins,
    game_trace,
)
from .metrics import (
    GameOracle,
    LiftInput,
    behavioural_distance,
    depth_distance,
    distance_between,
    game_distance_oracle,
    kantorovich_distance,
    kantorovich_lift,
    kantorovich_step,
    lift_input,
    logical_distance_lower,
    pair_distance,
)
from .semantics import denote, eval_fol, eval_modal, standard_translation
from .syntax import ParseError, parse_fol, parse_modal, parse_model, print_fol, print_modal, print_model
from .transforms import (
    gaifman_distance,
    locality_check,
    neighbourhood_restrict,
    partial_unravel,
    unravel,
)

__version__ = "0.1.0"
