"""Layered transition rules.

A process moves through up to three layers, checked in a fixed order:
unguarded internal choices resolve first (non-deterministic rules), then
unguarded probabilistic choices (all at once, with product
probabilities), and only a process stable under both runs timed actions.
`classify` is the dispatcher; the three `*_successors` functions are the
rule families.

Recursion through process variables must pass an action guard. Every
entry point takes an unfold budget; a shared countdown across one call
turns diverging definitions (``P = P``, or mutually unguarded pairs)
into an UnguardedRecursion error instead of a hang.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import TypeAlias, Union

from .errors import UnguardedRecursion
from .process import (
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
)

#: Default unfold budget; enough for any sane definition file, small
#: enough to diagnose unguarded recursion quickly.
DEFAULT_MAX_UNFOLD = 1024

#: Slack for probability sums accumulated from branch products.
PROB_TOLERANCE = 1e-9


@dataclass(frozen=True)
class NdBranch:
    """Resolution of one internal choice; ``path`` locates it ("L", "R",
    or a dotted congruence path like "L.R")."""

    path: str

    def __post_init__(self) -> None:
        if not self.path:
            raise ValueError("empty branch path")


@dataclass(frozen=True)
class Prob:
    """Probabilistic resolution taken with probability ``p``."""

    p: float

    def __post_init__(self) -> None:
        # Merged parallel branches can overshoot 1 by float error.
        if not (0.0 < self.p <= 1.0 + PROB_TOLERANCE):
            raise ValueError(f"probability out of (0,1]: {self.p!r}")
        object.__setattr__(self, "p", float(self.p))


@dataclass(frozen=True)
class Action:
    """Timed execution of a named action."""

    name: str
    rate: Rate


TransitionLabel: TypeAlias = Union[NdBranch, Prob, Action]


class NodeKind(enum.Enum):
    ND_UNSTABLE = "nd"
    PROB_UNSTABLE = "prob"
    ACTION_ENABLED = "action"
    DEADLOCK = "deadlock"
    SUCCESS = "success"


class _Budget:
    """Shared unfold countdown for one semantic operation."""

    __slots__ = ("remaining",)

    def __init__(self, remaining: int):
        self.remaining = remaining

    def spend(self, name: str) -> None:
        if self.remaining <= 0:
            raise UnguardedRecursion(name)
        self.remaining -= 1


def _unfold(p: Process, env: DefinitionEnv, budget: _Budget) -> Process:
    while isinstance(p, Var):
        budget.spend(p.name)
        p = env.lookup(p.name)
    return p


def unfold(p: Process, env: DefinitionEnv, budget: int = DEFAULT_MAX_UNFOLD) -> Process:
    """Replace a root-position variable by its binding until the root is
    a real constructor; each replacement costs one unit of ``budget``."""
    return _unfold(p, env, _Budget(budget))


def sync_rate(alpha: Rate, beta: Rate) -> Rate:
    """Rate of a joint move: the minimum, with the infinite (passive)
    rate as top element, so a passive side adopts its partner's rate."""
    if isinstance(alpha, Infinite):
        return beta
    if isinstance(beta, Infinite):
        return alpha
    return min(alpha, beta)


# stability predicates ------------------------------------------------
#
# Both walk only unguarded positions: operands of the choices and of
# parallel, the left of ';' (the right is guarded by completion of the
# left), and through variables. Nothing below a prefix counts.


def _ds(p: Process, env: DefinitionEnv, budget: _Budget) -> bool:
    p = _unfold(p, env, budget)
    if isinstance(p, (Nil, Prefix)):
        return True
    if isinstance(p, IntChoice):
        return False
    if isinstance(p, (ExtChoice, ProbChoice, Par)):
        return _ds(p.left, env, budget) and _ds(p.right, env, budget)
    if isinstance(p, Seq):
        return _ds(p.left, env, budget)
    raise TypeError(f"not a Process: {p!r}")


def is_det_stable(
    p: Process, env: DefinitionEnv, max_unfold: int = DEFAULT_MAX_UNFOLD
) -> bool:
    """False iff ``p`` contains an unguarded internal choice."""
    return _ds(p, env, _Budget(max_unfold))


def _ps(p: Process, env: DefinitionEnv, budget: _Budget) -> bool:
    p = _unfold(p, env, budget)
    if isinstance(p, (Nil, Prefix)):
        return True
    if isinstance(p, ProbChoice):
        return False
    if isinstance(p, (ExtChoice, Par)):
        return _ps(p.left, env, budget) and _ps(p.right, env, budget)
    if isinstance(p, Seq):
        return _ps(p.left, env, budget)
    if isinstance(p, IntChoice):
        raise ValueError(
            "probabilistic stability is only defined for deterministically "
            "stable processes"
        )
    raise TypeError(f"not a Process: {p!r}")


def is_prob_stable(
    p: Process, env: DefinitionEnv, max_unfold: int = DEFAULT_MAX_UNFOLD
) -> bool:
    """False iff ``p`` contains an unguarded probabilistic choice.
    Requires ``is_det_stable(p, env)``."""
    return _ps(p, env, _Budget(max_unfold))


# non-deterministic rules ---------------------------------------------


def _nd(p: Process, env: DefinitionEnv, budget: _Budget) -> list[tuple[str, Process]]:
    if isinstance(p, IntChoice):
        return [("L", p.left), ("R", p.right)]
    out: list[tuple[str, Process]] = []
    if isinstance(p, (ExtChoice, ProbChoice, Par)):
        left = _unfold(p.left, env, budget)
        if not _ds(left, env, budget):
            for path, s in _nd(left, env, budget):
                out.append(("L." + path, _rebuild(p, s, p.right)))
        right = _unfold(p.right, env, budget)
        if not _ds(right, env, budget):
            for path, s in _nd(right, env, budget):
                out.append(("R." + path, _rebuild(p, p.left, s)))
        return out
    if isinstance(p, Seq):
        left = _unfold(p.left, env, budget)
        for path, s in _nd(left, env, budget):
            out.append(("L." + path, Seq(s, p.right)))
        return out
    raise ValueError(
        "nd_successors requires a deterministically unstable process, "
        f"got {p}"
    )


def _rebuild(template: Process, left: Process, right: Process) -> Process:
    if isinstance(template, ExtChoice):
        return ExtChoice(left, right)
    if isinstance(template, IntChoice):
        return IntChoice(left, right)
    if isinstance(template, ProbChoice):
        return ProbChoice(template.prob, left, right)
    if isinstance(template, Par):
        return Par(template.sync, left, right)
    raise TypeError(f"not a binary choice or parallel node: {template!r}")


def nd_successors(
    p: Process, env: DefinitionEnv, max_unfold: int = DEFAULT_MAX_UNFOLD
) -> list[tuple[NdBranch, Process]]:
    """Resolve one unguarded internal choice per successor.

    An IntChoice at the root takes its two axiom branches; otherwise
    each unstable operand contributes its successors re-wrapped in the
    surrounding context, label path prefixed with the operand side, and
    stable operands are left untouched.
    """
    budget = _Budget(max_unfold)
    p0 = _unfold(p, env, budget)
    return [(NdBranch(path), s) for path, s in _nd(p0, env, budget)]


# probabilistic rules -------------------------------------------------


def _presolve(
    p: Process, env: DefinitionEnv, budget: _Budget
) -> list[tuple[float, Process]]:
    if _ps(p, env, budget):
        return [(1.0, p)]
    p = _unfold(p, env, budget)
    if isinstance(p, ProbChoice):
        out: list[tuple[float, Process]] = []
        if p.prob > 0.0:
            out.extend(
                (p.prob * w, s) for w, s in _presolve(p.left, env, budget)
            )
        if 1.0 - p.prob > 0.0:
            out.extend(
                ((1.0 - p.prob) * w, s)
                for w, s in _presolve(p.right, env, budget)
            )
        return [(w, s) for w, s in out if w > 0.0]
    if isinstance(p, (ExtChoice, Par)):
        return [
            (wl * wr, _rebuild(p, sl, sr))
            for wl, sl in _presolve(p.left, env, budget)
            for wr, sr in _presolve(p.right, env, budget)
        ]
    if isinstance(p, Seq):
        return [
            (w, Seq(s, p.right)) for w, s in _presolve(p.left, env, budget)
        ]
    raise ValueError(f"unexpected probabilistically unstable node: {p}")


def prob_successors(
    p: Process, env: DefinitionEnv, max_unfold: int = DEFAULT_MAX_UNFOLD
) -> list[tuple[Prob, Process]]:
    """Resolve every unguarded probabilistic choice at once.

    The result is the cartesian product of per-choice resolutions; each
    successor's probability is the product of its chosen branch
    probabilities, zero-probability branches are dropped, and the
    returned probabilities sum to 1 within PROB_TOLERANCE.
    """
    budget = _Budget(max_unfold)
    p0 = _unfold(p, env, budget)
    if _ps(p0, env, budget):
        raise ValueError(
            "prob_successors requires a probabilistically unstable process, "
            f"got {p0}"
        )
    return [(Prob(w), s) for w, s in _presolve(p0, env, budget)]


# action rules --------------------------------------------------------


def _act(
    p: Process, env: DefinitionEnv, budget: _Budget
) -> list[tuple[Action, Process]]:
    p = _unfold(p, env, budget)
    if isinstance(p, Nil):
        return []
    if isinstance(p, Prefix):
        return [(Action(p.action, p.rate), p.continuation)]
    if isinstance(p, ExtChoice):
        return _act(p.left, env, budget) + _act(p.right, env, budget)
    if isinstance(p, Seq):
        return [
            (label, Seq(s, p.right))
            for label, s in _act(p.left, env, budget)
        ]
    if isinstance(p, Par):
        pmoves = _act(p.left, env, budget)
        qmoves = _act(p.right, env, budget)
        out: list[tuple[Action, Process]] = []
        for label, s in pmoves:
            if label.name not in p.sync:
                out.append((label, Par(p.sync, s, p.right)))
        for label, s in qmoves:
            if label.name not in p.sync:
                out.append((label, Par(p.sync, p.left, s)))
        for pl, ps_ in pmoves:
            if pl.name not in p.sync:
                continue
            for ql, qs in qmoves:
                if ql.name == pl.name:
                    joint = Action(pl.name, sync_rate(pl.rate, ql.rate))
                    out.append((joint, Par(p.sync, ps_, qs)))
        return out
    raise ValueError(
        f"action_successors requires a stable process, got {p}"
    )


def action_successors(
    p: Process, env: DefinitionEnv, max_unfold: int = DEFAULT_MAX_UNFOLD
) -> list[tuple[Action, Process]]:
    """All single-step timed transitions of a stable process.

    Prefixes fire; external choice keeps both sides' moves and discards
    the loser; parallel interleaves actions outside the sync set and
    pairs up matching offers inside it (an unmatched offer blocks);
    ``P;Q`` moves by P. Order: prefix/choice moves left to right, and
    for parallel first left interleavings, then right, then joint moves.
    The empty result is a deadlock.
    """
    return _act(p, env, _Budget(max_unfold))


def classify(
    p: Process, env: DefinitionEnv, max_unfold: int = DEFAULT_MAX_UNFOLD
) -> NodeKind:
    """Which layer applies, checked in the fixed dispatch order:
    nd-unstable, else prob-unstable, else terminated, else has timed
    moves, else deadlocked. Expects canonical input (a terminated
    process is literally Nil)."""
    budget = _Budget(max_unfold)
    p0 = _unfold(p, env, budget)
    if not _ds(p0, env, budget):
        return NodeKind.ND_UNSTABLE
    if not _ps(p0, env, budget):
        return NodeKind.PROB_UNSTABLE
    if isinstance(p0, Nil):
        return NodeKind.SUCCESS
    if _act(p0, env, budget):
        return NodeKind.ACTION_ENABLED
    return NodeKind.DEADLOCK
