"""Games as partial monoid actions, with Behavlet pattern detection.

Reference games are Noughts & Crosses and a single-level Pac-Man.  Hot loops
(the Pac-Man tick and the detection scan) run in a compiled extension when it
is built and fall back to pure Python otherwise; see ``kernels.BACKEND``.
"""
__version__ = "0.1.0"

from .core import (
    EMPTY_WORD,
    UNDEFINED,
    Admissibility,
    GameModel,
    GameState,
    InputSymbol,
    InputWord,
    InvariantViolation,
    NondeterminismError,
    PartialTrace,
    Rule,
    Trace,
    UnknownSymbol,
    check_admissible,
    concat,
    orbit_of,
    run,
    step,
)
from .behavlets import Behavlet, Detection, Quantifier, detect, quantify
from .composition import (
    AlphabetCollision,
    CompositionError,
    PatternMonoid,
    RestrictionSpec,
    compose_free,
    compose_restricted,
    project,
    validate_restrictions,
)
from .abstraction import AbstractionMap, build_abstract_model, check_square, verify_simulation
from .profiler import EmptyBatchError, TraitProfile, profile, profile_groups, simulate
from .traceio import read_trace, write_trace

__all__ = [
    "EMPTY_WORD", "UNDEFINED", "AbstractionMap", "Admissibility", "AlphabetCollision", "Behavlet",
    "CompositionError", "Detection", "EmptyBatchError", "GameModel", "GameState", "InputSymbol", "InputWord",
    "InvariantViolation", "NondeterminismError", "PartialTrace", "PatternMonoid", "Quantifier", "RestrictionSpec",
    "Rule", "Trace", "TraitProfile", "UnknownSymbol", "__version__", "build_abstract_model", "check_admissible",
    "check_square", "compose_free", "compose_restricted", "concat", "detect", "orbit_of", "profile",
    "profile_groups", "project", "quantify", "read_trace", "run", "simulate", "step", "validate_restrictions",
    "verify_simulation", "write_trace",
]
