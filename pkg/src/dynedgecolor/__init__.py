"""Dynamic (1+eps)Delta edge coloring via subsampled, truncated Nibble."""

from .engine import Engine, StaticResult, UpdateReport, static_color
from .errors import (
    DegreeBoundViolated,
    DuplicateEdge,
    InvalidEpsilon,
    MissingEdge,
    OracleMismatch,
    StreamParseError,
)
from .graph import DynGraph, normalize
from .randomness import EdgeRandomness, Params, Rng, derive_params

__all__ = [
    "DegreeBoundViolated",
    "DuplicateEdge",
    "DynGraph",
    "EdgeRandomness",
    "Engine",
    "InvalidEpsilon",
    "MissingEdge",
    "OracleMismatch",
    "Params",
    "Rng",
    "StaticResult",
    "StreamParseError",
    "UpdateReport",
    "derive_params",
    "normalize",
    "static_color",
]
