"""Markovian process algebra toolkit: parse process terms, run the
layered transition rules, build the deduplicated state graph, export it.

Typical use:

    >>> from rosa_lts import parse_program, build_lts, to_text
    >>> env = parse_program("<a,0.3>.0||{a,c}<b,inf>.0")
    >>> print(to_text(build_lts(env)), end="")
    #0 [action] <a,0.3>.0||{a,c}b.0
    #1 [deadlock] <a,0.3>.0||{a,c}0
    #0 -b,inf-> #1
    ...
"""

from .builder import (
    BuildConfig,
    Lts,
    LtsBuilder,
    LtsEdge,
    LtsNode,
    StateLimit,
    build_lts,
    stats,
)
from .canonical import canonical_key, canonicalize
from .errors import (
    DuplicateDefinition,
    LexError,
    ParseError,
    RosaError,
    UnboundVariable,
    UnguardedRecursion,
    ValidationError,
)
from .export import ExportOptions, label_text, to_dot, to_json, to_text
from .parser import Token, parse_process, parse_process_text, parse_program, tokenize
from .process import (
    INF,
    NIL,
    DefinitionEnv,
    ExtChoice,
    Infinite,
    IntChoice,
    Nil,
    Par,
    Prefix,
    ProbChoice,
    Process,
    Rate,
    Seq,
    Var,
    pretty_print,
    structural_equal,
)
from .semantics import (
    Action,
    NdBranch,
    NodeKind,
    Prob,
    TransitionLabel,
    action_successors,
    classify,
    is_det_stable,
    is_prob_stable,
    nd_successors,
    prob_successors,
    sync_rate,
    unfold,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "BuildConfig",
    "DefinitionEnv",
    "DuplicateDefinition",
    "ExportOptions",
    "ExtChoice",
    "INF",
    "Infinite",
    "IntChoice",
    "LexError",
    "Lts",
    "LtsBuilder",
    "LtsEdge",
    "LtsNode",
    "NIL",
    "NdBranch",
    "Nil",
    "NodeKind",
    "Par",
    "ParseError",
    "Prefix",
    "Prob",
    "ProbChoice",
    "Process",
    "Rate",
    "RosaError",
    "Seq",
    "StateLimit",
    "Token",
    "TransitionLabel",
    "UnboundVariable",
    "UnguardedRecursion",
    "ValidationError",
    "Var",
    "action_successors",
    "build_lts",
    "canonical_key",
    "canonicalize",
    "classify",
    "is_det_stable",
    "is_prob_stable",
    "label_text",
    "nd_successors",
    "parse_process",
    "parse_process_text",
    "parse_program",
    "prob_successors",
    "pretty_print",
    "stats",
    "structural_equal",
    "sync_rate",
    "to_dot",
    "to_json",
    "to_text",
    "tokenize",
    "unfold",
]
