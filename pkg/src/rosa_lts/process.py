"""Immutable AST for ROSA processes, plus printing and definition lookup.

The operator that binds loosest sits at the root: sequential composition
is split off first, then parallel, then the three choices, then action
prefixes, with plain actions and process variables as leaves.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import TypeAlias, Union

from .errors import UnboundVariable

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

#: Reserved spelling of the infinite rate; never a valid action or
#: process name.
INF_KEYWORD = "inf"

#: Name a bare (definition-less) program line is bound to.
MAIN_NAME = "main"


@dataclass(frozen=True)
class Infinite:
    """Rate of a passive action: its timing is imposed by the
    synchronization partner."""

    def __repr__(self) -> str:
        return "Infinite"


#: The one infinite rate value. All ``Infinite()`` instances compare equal;
#: this constant is just the conventional spelling.
INF = Infinite()

#: A rate is a strictly positive finite float or the distinguished
#: infinite value. IEEE infinities are rejected so they cannot leak into
#: rate arithmetic.
Rate: TypeAlias = Union[float, Infinite]


def is_valid_name(name: str) -> bool:
    """True for identifiers usable as action or process names."""
    return bool(IDENT_RE.match(name)) and name != INF_KEYWORD


def _check_name(name: str, what: str) -> None:
    if not isinstance(name, str) or not is_valid_name(name):
        raise ValueError(f"invalid {what}: {name!r}")


def _check_rate(rate: Rate) -> Rate:
    if isinstance(rate, Infinite):
        return rate
    if isinstance(rate, (int, float)) and not isinstance(rate, bool):
        value = float(rate)
        if math.isfinite(value) and value > 0.0:
            return value
    raise ValueError(f"rate must be a positive finite number or INF: {rate!r}")


@dataclass(frozen=True)
class Nil:
    """The terminated process ``0``."""

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class Var:
    """A reference to a named process definition."""

    name: str

    def __post_init__(self) -> None:
        _check_name(self.name, "process variable name")

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class Prefix:
    """``<a,r>.P``: perform action ``a`` at rate ``r``, then behave as P.

    An undecorated action ``a`` is the same node with an infinite rate,
    and a trailing action with no continuation gets an explicit Nil.
    """

    action: str
    rate: Rate
    continuation: Process

    def __post_init__(self) -> None:
        _check_name(self.action, "action name")
        object.__setattr__(self, "rate", _check_rate(self.rate))

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class Seq:
    """``P;Q``: behave as P until it terminates, then as Q."""

    left: Process
    right: Process

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class IntChoice:
    """``P - Q``: internal choice, resolved by the system before timing."""

    left: Process
    right: Process

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class ExtChoice:
    """``P + Q``: external choice, resolved by whichever action occurs."""

    left: Process
    right: Process

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class ProbChoice:
    """``P *{r} Q``: behave as P with probability r, as Q with 1-r."""

    prob: float
    left: Process
    right: Process

    def __post_init__(self) -> None:
        p = self.prob
        if isinstance(p, bool) or not isinstance(p, (int, float)):
            raise ValueError(f"probability must be a number: {p!r}")
        value = float(p)
        if not (0.0 <= value <= 1.0):
            raise ValueError(f"probability outside [0,1]: {value!r}")
        object.__setattr__(self, "prob", value)

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class Par:
    """``P ||{A} Q``: parallel composition synchronizing on the actions
    in A; all other actions interleave."""

    sync: frozenset[str]
    left: Process
    right: Process

    def __post_init__(self) -> None:
        names = frozenset(self.sync)
        for name in names:
            _check_name(name, "synchronization action name")
        object.__setattr__(self, "sync", names)

    def __str__(self) -> str:
        return pretty_print(self)


Process: TypeAlias = Union[Nil, Var, Prefix, Seq, IntChoice, ExtChoice, ProbChoice, Par]

#: The terminated process; all ``Nil()`` instances compare equal.
NIL = Nil()


@dataclass(frozen=True)
class DefinitionEnv:
    """Named process definitions plus the name of the process to analyse.

    ``bindings`` keeps insertion order; recursive and mutually recursive
    bindings are legal (guardedness is checked where definitions are
    unfolded, not here).
    """

    bindings: dict[str, Process] = field(default_factory=dict)
    root: str = MAIN_NAME

    def lookup(self, name: str) -> Process:
        """The body bound to ``name``, verbatim (no substitution)."""
        try:
            return self.bindings[name]
        except KeyError:
            raise UnboundVariable(name) from None

    def root_process(self) -> Process:
        return self.lookup(self.root)

    @classmethod
    def for_process(cls, process: Process) -> DefinitionEnv:
        """A one-binding environment analysing ``process`` directly."""
        return cls(bindings={MAIN_NAME: process}, root=MAIN_NAME)


def lookup(env: DefinitionEnv, name: str) -> Process:
    """Free-function spelling of :meth:`DefinitionEnv.lookup`."""
    return env.lookup(name)


def structural_equal(p: Process, q: Process) -> bool:
    """True iff the two trees are identical: same constructors, names,
    exact numeric values, equal synchronization sets.

    Dataclass equality is already structural; this exists as the named
    operation. Note it is order-sensitive: ``a.0 + b.0`` and ``b.0 + a.0``
    differ here and only become equal after canonicalization.
    """
    return p == q


def format_number(value: float) -> str:
    """Shortest decimal string that round-trips to the same float."""
    return repr(float(value))


def format_rate(rate: Rate) -> str:
    return INF_KEYWORD if isinstance(rate, Infinite) else format_number(rate)


# Binding tightness, loosest first. A child whose level is below the
# minimum its context requires gets parenthesized.
_SEQ, _PAR, _CHOICE, _PREFIX, _ATOM = range(5)

_LEVEL = {
    Seq: _SEQ,
    Par: _PAR,
    IntChoice: _CHOICE,
    ExtChoice: _CHOICE,
    ProbChoice: _CHOICE,
    Prefix: _PREFIX,
    Nil: _ATOM,
    Var: _ATOM,
}


def pretty_print(p: Process) -> str:
    """Render ``p`` in tool syntax with the fewest parentheses that
    re-parse to the same tree.

    Sync sets print sorted, numbers in shortest round-trip form, the
    infinite rate as ``inf``; a prefix with an infinite rate prints
    undecorated (``a.P`` rather than ``<a,inf>.P``).
    """
    return _pp(p, _SEQ)


def _pp(p: Process, min_level: int) -> str:
    if _LEVEL[type(p)] < min_level:
        return "(" + _pp(p, _SEQ) + ")"
    if isinstance(p, Nil):
        return "0"
    if isinstance(p, Var):
        return p.name
    if isinstance(p, Prefix):
        if isinstance(p.rate, Infinite):
            head = p.action
        else:
            head = f"<{p.action},{format_number(p.rate)}>"
        return head + "." + _pp(p.continuation, _PREFIX)
    if isinstance(p, Seq):
        # ';' is right-associative: a Seq as left child needs parentheses.
        return _pp(p.left, _PAR) + ";" + _pp(p.right, _SEQ)
    if isinstance(p, Par):
        sync = ",".join(sorted(p.sync))
        return _pp(p.left, _PAR) + "||{" + sync + "}" + _pp(p.right, _CHOICE)
    if isinstance(p, IntChoice):
        return _pp(p.left, _CHOICE) + "-" + _pp(p.right, _PREFIX)
    if isinstance(p, ExtChoice):
        return _pp(p.left, _CHOICE) + "+" + _pp(p.right, _PREFIX)
    if isinstance(p, ProbChoice):
        op = "*{" + format_number(p.prob) + "}"
        return _pp(p.left, _CHOICE) + op + _pp(p.right, _PREFIX)
    raise TypeError(f"not a Process: {p!r}")
